#include <algorithm>
#include <limits>

#include "tspd/dp_solver.hpp"

namespace tspd {

namespace {

constexpr Duration kInf = std::numeric_limits<Duration>::infinity();

// Best known way to have truck and drone together at a node, ready to go.
struct Label {
  Duration value = kInf;
  std::vector<Node> route;
  std::vector<Sortie> plan;

  bool reached() const { return value < kInf; }
};

// Strict improvement under the documented tie-breaking order.
bool improves(Duration value, const std::vector<Node>& route, const std::vector<Sortie>& plan,
              const Label& incumbent) {
  if (!incumbent.reached()) return true;
  if (value < incumbent.value - kTimeTolerance) return true;
  if (value > incumbent.value + kTimeTolerance) return false;
  if (plan.size() != incumbent.plan.size()) return plan.size() < incumbent.plan.size();
  if (route != incumbent.route) return route < incumbent.route;
  return plan < incumbent.plan;
}

}  // namespace

ExactResult solve_exact(const Instance& instance, const ProblemSetting& raw_setting) {
  const int n = instance.n();
  if (n > kMaxExactCustomers) {
    throw SizeLimitExceeded("exact solver supports at most " + std::to_string(kMaxExactCustomers) +
                            " customers, instance has " + std::to_string(n));
  }
  const ProblemSetting setting = raw_setting.normalized();
  const EffectiveParameters params(instance, setting);
  const SortieCatalog catalog = build_sortie_catalog(instance, setting);
  const PathTable paths(instance);

  const Node last = instance.end_depot();
  const int nodes = instance.node_count();
  const CustomerSet all = (CustomerSet{1} << n) - 1;
  CustomerSet eligible = 0;
  for (Node c : instance.drone_eligible()) eligible |= customer_bit(c);

  std::vector<Label> labels((std::size_t{all} + 1) * static_cast<std::size_t>(nodes));
  auto label = [&](CustomerSet served, Node v) -> Label& {
    return labels[static_cast<std::size_t>(served) * nodes + static_cast<std::size_t>(v)];
  };
  auto offer = [&](CustomerSet served, Node v, Duration value, std::vector<Node>&& route,
                   std::vector<Sortie>&& plan) {
    Label& target = label(served, v);
    if (improves(value, route, plan, target)) {
      target.value = value;
      target.route = std::move(route);
      target.plan = std::move(plan);
    }
  };

  label(0, 0) = Label{0.0, {0}, {}};

  // Transitions only add customers, except hops into n+1, which is handled
  // last within each served set.
  std::vector<Node> order;
  for (Node v = 0; v <= n; ++v) order.push_back(v);
  order.push_back(last);

  for (CustomerSet served = 0; served <= all; ++served) {
    for (Node v : order) {
      const Label& here = label(served, v);
      if (!here.reached()) continue;
      const CustomerSet open = all & ~served;

      // Loops: the truck waits at v while the drone serves j.
      if (setting.loops_allowed && v != 0) {
        for (Node j = 1; j <= n; ++j) {
          if (!(open & eligible & customer_bit(j))) continue;
          const Sortie loop{v, j, v};
          if (!catalog.contains(loop)) continue;
          auto plan = here.plan;
          plan.push_back(loop);
          offer(served | customer_bit(j), v, here.value + loop_elapsed(instance, setting, loop),
                std::vector<Node>(here.route), std::move(plan));
        }
      }
      if (v == last) continue;

      // Truck-only hops.
      for (Node m = 1; m <= last; ++m) {
        if (m <= n && !(open & customer_bit(m))) continue;
        auto route = here.route;
        route.push_back(m);
        const CustomerSet next = m <= n ? (served | customer_bit(m)) : served;
        offer(next, m, here.value + instance.truck_time(v, m), std::move(route),
              std::vector<Sortie>(here.plan));
      }

      // Combined legs: drone serves j while the truck drives v -> T -> k.
      for (Node j = 1; j <= n; ++j) {
        if (!(open & eligible & customer_bit(j))) continue;
        for (Node k = 1; k <= last; ++k) {
          if (k == j) continue;
          if (k <= n && !(open & customer_bit(k))) continue;
          const Sortie sortie{v, j, k};
          if (!catalog.contains(sortie)) continue;
          const Duration flight = flight_time(instance, sortie);
          CustomerSet rest = open & ~customer_bit(j);
          if (k <= n) rest &= ~customer_bit(k);
          const CustomerSet reached_k = k <= n ? customer_bit(k) : 0;

          // All subsets of `rest` ridden by the truck, including the empty one.
          CustomerSet through = rest;
          while (true) {
            const Duration path = paths.cost(v, through, k);
            bool admissible = path < kInf;
            if (admissible && params.endurance && params.hover) {
              admissible = std::max(path, flight) + params.sigma_rendezvous <=
                           *params.endurance + kTimeTolerance;
            }
            if (admissible) {
              const Duration value =
                  here.value + leg_elapsed(path, flight, v == 0, setting, instance);
              const Label& target = label(served | through | customer_bit(j) | reached_k, k);
              if (!target.reached() || value <= target.value + kTimeTolerance) {
                auto leg = paths.path(v, through, k);
                auto route = here.route;
                route.insert(route.end(), leg.begin() + 1, leg.end());
                auto plan = here.plan;
                plan.push_back(sortie);
                offer(served | through | customer_bit(j) | reached_k, k, value, std::move(route),
                      std::move(plan));
              }
            }
            if (through == 0) break;
            through = (through - 1) & rest;
          }
        }
      }
    }
  }

  const Label& goal = label(all, last);
  if (!goal.reached()) {
    throw NoSolution("no feasible truck/drone solution exists for this instance and setting");
  }
  return ExactResult{goal.value, Solution{goal.route, goal.plan}};
}

}  // namespace tspd
