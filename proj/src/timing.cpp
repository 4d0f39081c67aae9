#include "tspd/timing.hpp"

#include <algorithm>
#include <sstream>

namespace tspd {

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kCovering: return "covering";
    case Violation::Kind::kEligibility: return "eligibility";
    case Violation::Kind::kRouteShape: return "route-shape";
    case Violation::Kind::kCrossing: return "crossing";
    case Violation::Kind::kBackwardSortie: return "backward-sortie";
    case Violation::Kind::kEndurance: return "endurance";
    case Violation::Kind::kLoopPlacement: return "loop-placement";
    case Violation::Kind::kSync: return "sync";
  }
  return "unknown";
}

bool Evaluation::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

Duration leg_elapsed(Duration truck_path_time, std::optional<Duration> flight,
                     bool at_depot_start, const ProblemSetting& setting,
                     const Instance& instance) {
  if (!flight) return truck_path_time;
  const EffectiveParameters params(instance, setting);
  const Duration launch = at_depot_start ? params.launch_charge(0) : params.sigma_launch;
  return launch + std::max(truck_path_time, *flight) + params.sigma_rendezvous;
}

Duration loop_elapsed(const Instance& instance, const ProblemSetting& setting, const Sortie& loop) {
  const EffectiveParameters params(instance, setting);
  return params.sigma_launch + flight_time(instance, loop) + params.sigma_rendezvous;
}

namespace {

// Position of each node on the route, -1 when absent (first occurrence wins).
std::vector<int> route_positions(const std::vector<Node>& route, int node_count) {
  std::vector<int> pos(static_cast<std::size_t>(std::max(node_count, 0)), -1);
  for (std::size_t p = 0; p < route.size(); ++p) {
    const Node v = route[p];
    if (v >= 0 && v < node_count && pos[v] < 0) pos[v] = static_cast<int>(p);
  }
  return pos;
}

struct Anchored {
  Sortie sortie;
  int from = 0;  // route position of launch
  int to = 0;    // route position of rendezvous
};

std::vector<Anchored> anchor(const std::vector<Node>& route, const std::vector<Sortie>& sorties) {
  Node max_node = 0;
  for (Node v : route) max_node = std::max(max_node, v);
  const auto pos = route_positions(route, max_node + 1);
  auto at = [&](Node v) { return (v >= 0 && v <= max_node) ? pos[v] : -1; };

  std::vector<Anchored> out;
  for (const auto& s : sorties) {
    const int a = at(s.launch);
    const int b = at(s.rendezvous);
    if (a < 0 || b < 0) continue;
    if (!s.is_loop() && a >= b) continue;
    out.push_back({s, a, b});
  }
  std::stable_sort(out.begin(), out.end(), [](const Anchored& x, const Anchored& y) {
    if (x.from != y.from) return x.from < y.from;
    return x.to < y.to;
  });
  return out;
}

std::vector<CrossingPair> all_crossings(const std::vector<Anchored>& anchored) {
  std::vector<CrossingPair> out;
  for (std::size_t a = 0; a < anchored.size(); ++a) {
    const auto& outer = anchored[a];
    if (outer.sortie.is_loop()) continue;
    for (std::size_t b = 0; b < anchored.size(); ++b) {
      if (a == b) continue;
      const auto& inner = anchored[b];
      const bool same_launch = inner.from == outer.from && !inner.sortie.is_loop();
      const bool inside = inner.from > outer.from && inner.from < outer.to;
      if (same_launch && b < a) continue;  // reported once, from the earlier one
      if (same_launch || inside) out.emplace_back(outer.sortie, inner.sortie);
    }
  }
  return out;
}

std::string route_text(const std::vector<Node>& route) {
  std::ostringstream out;
  for (std::size_t i = 0; i < route.size(); ++i) out << (i ? " " : "") << route[i];
  return out.str();
}

}  // namespace

std::optional<CrossingPair> detect_crossing(const std::vector<Node>& route,
                                            const std::vector<Sortie>& sorties) {
  const auto crossings = all_crossings(anchor(route, sorties));
  if (crossings.empty()) return std::nullopt;
  return crossings.front();
}

Evaluation evaluate(const Instance& instance, const ProblemSetting& raw_setting,
                    const Solution& solution) {
  using Kind = Violation::Kind;
  const ProblemSetting setting = raw_setting.normalized();
  const EffectiveParameters params(instance, setting);
  const int node_count = instance.node_count();
  const Node last = instance.end_depot();
  const auto& route = solution.route;

  Evaluation result;
  auto fail = [&](Kind kind, std::string detail) {
    result.violations.push_back({kind, std::move(detail)});
  };

  // Route shape.
  if (route.size() < 2 || route.front() != 0 || route.back() != last) {
    fail(Kind::kRouteShape, "route must start at 0 and end at " + std::to_string(last) +
                                ": [" + route_text(route) + "]");
  }
  {
    std::vector<int> seen(static_cast<std::size_t>(node_count), 0);
    for (std::size_t p = 0; p < route.size(); ++p) {
      const Node v = route[p];
      if (v < 0 || v >= node_count) {
        fail(Kind::kRouteShape, "route node " + std::to_string(v) + " out of range");
        continue;
      }
      if (++seen[v] == 2) {
        fail(Kind::kRouteShape, "route visits node " + std::to_string(v) + " more than once");
      }
      const bool interior = p > 0 && p + 1 < route.size();
      if (interior && (v == 0 || v == last)) {
        fail(Kind::kRouteShape, "depot node " + std::to_string(v) + " inside the route");
      }
    }
  }
  const auto pos = route_positions(route, node_count);
  auto on_route = [&](Node v) { return v >= 0 && v < node_count && pos[v] >= 0; };

  // Sortie anchoring, eligibility and loop placement.
  for (const auto& s : solution.sorties) {
    const std::string tag = "sortie " + to_string(s);
    if (!instance.is_customer(s.customer)) {
      fail(Kind::kEligibility, tag + " serves node " + std::to_string(s.customer) +
                                   " which is not a customer");
    } else if (!instance.is_drone_eligible(s.customer)) {
      fail(Kind::kEligibility, tag + " serves customer " + std::to_string(s.customer) +
                                   " outside the drone-eligible set");
    }
    if (s.is_loop()) {
      if (!setting.loops_allowed) fail(Kind::kLoopPlacement, tag + ": loops are not allowed");
      if (s.launch == 0) fail(Kind::kLoopPlacement, tag + ": no loops from the start depot");
      if (!on_route(s.launch)) {
        fail(Kind::kLoopPlacement, tag + ": loop node is not on the truck route");
      }
      continue;
    }
    if (s.launch == last) fail(Kind::kSync, tag + " launches from the end depot");
    if (s.rendezvous == 0) fail(Kind::kSync, tag + " returns to the start depot");
    if (!on_route(s.launch)) fail(Kind::kSync, tag + ": launch node is not on the truck route");
    if (!on_route(s.rendezvous)) {
      fail(Kind::kSync, tag + ": rendezvous node is not on the truck route");
    }
    if (on_route(s.launch) && on_route(s.rendezvous) && pos[s.launch] >= pos[s.rendezvous]) {
      fail(Kind::kBackwardSortie, tag + ": truck reaches the rendezvous before the launch node");
    }
  }

  // Covering.
  {
    std::vector<int> served(static_cast<std::size_t>(node_count), 0);
    for (Node v : route) {
      if (instance.is_customer(v)) ++served[v];
    }
    for (const auto& s : solution.sorties) {
      if (instance.is_customer(s.customer)) ++served[s.customer];
    }
    for (Node c = 1; c <= instance.n(); ++c) {
      if (served[c] == 0) fail(Kind::kCovering, "customer " + std::to_string(c) + " not served");
      if (served[c] > 1) {
        fail(Kind::kCovering, "customer " + std::to_string(c) + " served " +
                                  std::to_string(served[c]) + " times");
      }
    }
  }

  const auto anchored = anchor(route, solution.sorties);
  for (const auto& [outer, inner] : all_crossings(anchored)) {
    fail(Kind::kCrossing, "sorties " + to_string(outer) + " and " + to_string(inner) + " cross");
  }

  // Truck travel between route positions a < b.
  auto path_time = [&](int a, int b) {
    Duration total = 0.0;
    for (int p = a; p < b; ++p) total += instance.truck_time(route[p], route[p + 1]);
    return total;
  };
  auto route_is_usable = [&]() {
    for (Node v : route) {
      if (v < 0 || v >= node_count) return false;
    }
    return !route.empty();
  };

  if (params.endurance && route_is_usable()) {
    const Duration limit = *params.endurance + kTimeTolerance;
    for (const auto& a : anchored) {
      const Duration flight = flight_time(instance, a.sortie);
      Duration airborne = flight + params.sigma_rendezvous;
      if (params.hover && !a.sortie.is_loop()) {
        airborne = std::max(path_time(a.from, a.to), flight) + params.sigma_rendezvous;
      }
      if (airborne > limit) {
        std::ostringstream msg;
        msg.precision(15);
        msg << "sortie " << to_string(a.sortie) << " needs " << airborne
            << " of battery, endurance is " << *params.endurance;
        fail(Kind::kEndurance, msg.str());
      }
    }
  }

  if (!result.violations.empty()) return result;

  // Feasible: fold legs in route order.
  const int length = static_cast<int>(route.size());
  std::vector<std::vector<Sortie>> loops_at(static_cast<std::size_t>(length));
  std::vector<std::optional<Anchored>> launch_at(static_cast<std::size_t>(length));
  for (const auto& s : solution.sorties) {
    if (s.is_loop()) loops_at[pos[s.launch]].push_back(s);
  }
  for (const auto& a : anchored) {
    if (!a.sortie.is_loop()) launch_at[a.from] = a;
  }

  Timeline tl;
  tl.truck_ready.assign(static_cast<std::size_t>(node_count), std::nullopt);
  tl.drone_ready.assign(static_cast<std::size_t>(node_count), std::nullopt);
  tl.waits.assign(static_cast<std::size_t>(node_count), 0.0);

  Duration t = 0.0;
  int p = 0;
  while (true) {
    const Node here = route[p];
    for (const auto& loop : loops_at[p]) {
      tl.drone_ready[loop.customer] = t + params.sigma_launch +
                                      instance.drone_time(loop.launch == last ? 0 : loop.launch,
                                                          loop.customer);
      t += loop_elapsed(instance, setting, loop);
    }
    tl.truck_ready[here] = t;
    tl.drone_ready[here] = t;
    if (p == length - 1) break;

    if (launch_at[p]) {
      const Anchored& a = *launch_at[p];
      const Duration launch = params.launch_charge(here);
      const Duration path = path_time(a.from, a.to);
      const Duration flight = flight_time(instance, a.sortie);
      Duration partial = 0.0;
      for (int q = a.from + 1; q < a.to; ++q) {
        partial += instance.truck_time(route[q - 1], route[q]);
        tl.truck_ready[route[q]] = t + launch + partial;
        tl.drone_ready[route[q]] = tl.truck_ready[route[q]];
      }
      tl.drone_ready[a.sortie.customer] =
          t + launch + instance.drone_time(a.sortie.launch, a.sortie.customer);
      tl.waits[a.sortie.rendezvous] = std::max(0.0, flight - path);
      t += leg_elapsed(path, flight, here == 0, setting, instance);
      p = a.to;
    } else {
      t += instance.truck_time(here, route[p + 1]);
      ++p;
    }
  }
  tl.makespan = t;
  result.timeline = std::move(tl);
  return result;
}

}  // namespace tspd
