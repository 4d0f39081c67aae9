#include <algorithm>
#include <cmath>

#include "tspd/milp.hpp"

namespace tspd::milp {

int LinearModel::add_variable(std::string name, VarType type) {
  variables.push_back({std::move(name), type});
  return static_cast<int>(variables.size()) - 1;
}

void LinearModel::add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                                 double rhs) {
  std::vector<Term> merged;
  for (const auto& t : terms) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Term& m) { return m.var == t.var; });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  constraints.push_back({std::move(name), std::move(merged), sense, rhs});
}

std::size_t LinearModel::count(VarType type) const {
  return static_cast<std::size_t>(std::count_if(
      variables.begin(), variables.end(), [type](const Variable& v) { return v.type == type; }));
}

std::size_t LinearModel::count_family(const std::string& prefix) const {
  return static_cast<std::size_t>(
      std::count_if(constraints.begin(), constraints.end(), [&](const Constraint& c) {
        return c.name.size() > prefix.size() && c.name.compare(0, prefix.size(), prefix) == 0 &&
               c.name[prefix.size()] == '_';
      }) +
      std::count_if(constraints.begin(), constraints.end(),
                    [&](const Constraint& c) { return c.name == prefix; }));
}

std::optional<int> LinearModel::find_variable(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

const std::vector<FamilyInfo>& constraint_families() {
  static const std::vector<FamilyInfo> kFamilies = {
      {"obj", "arc times + launch/rendezvous charges + waits (+ loop flights)"},
      {"cover", "drone-eligible customer served once, by truck or drone"},
      {"coverT", "truck-only customer entered once by the truck"},
      {"depart", "truck leaves the start depot once"},
      {"arrive", "truck enters the end depot once"},
      {"flow", "truck flow conservation at customers"},
      {"ttimeA", "truck ready time lower bound along used arcs (big-M)"},
      {"ttimeB", "truck ready time upper bound along used arcs (big-M)"},
      {"dronedep", "a non-loop sortie leaves i only if the truck leaves i"},
      {"dronearr", "a non-loop sortie returns to k only if the truck enters k"},
      {"loops", "up to n loops at k only if the truck enters k"},
      {"dtimeL", "drone ready at customer after launch (big-M)"},
      {"dtimeR", "drone ready at rendezvous after serving (big-M)"},
      {"tt0", "truck starts at time zero"},
      {"td0", "drone starts at time zero"},
      {"sync1", "drone not earlier than truck at exited customers"},
      {"sync2", "drone not later than truck at exited customers"},
      {"sync3", "drone not earlier than truck at entered nodes"},
      {"sync4", "drone not later than truck at entered nodes"},
      {"endur", "hover endurance on each non-loop sortie (big-M)"},
      {"cross", "lazy no-crossing cut on a truck path"},
  };
  return kFamilies;
}

namespace {

std::string var_name(const char* prefix, std::initializer_list<Node> ids) {
  std::string out = prefix;
  for (Node v : ids) out += "_" + std::to_string(v);
  return out;
}

}  // namespace

LinearModel build_model(const Instance& instance, const ProblemSetting& raw_setting) {
  const ProblemSetting setting = raw_setting.normalized();
  const EffectiveParameters params(instance, setting);
  const SortieCatalog catalog = build_sortie_catalog(instance, setting);
  const int n = instance.n();
  const Node last = instance.end_depot();
  const int nodes = instance.node_count();

  LinearModel model;
  model.n = n;
  model.loops_allowed = setting.loops_allowed;

  // Horizon bound.
  double big_m = 0.0;
  for (double v : instance.truck().values()) big_m += v;
  for (double v : instance.drone().values()) big_m += v;
  big_m += nodes * (params.sigma_launch + params.sigma_rendezvous);
  if (!setting.battery_limited) {
    for (const auto& s : catalog) {
      if (s.is_loop()) big_m += flight_time(instance, s);
    }
  }
  model.big_m = big_m;
  const double M = big_m;

  // Arcs (i, k): i in {0} u C, k in C u {n+1}, i != k.
  for (Node i = 0; i <= n; ++i) {
    for (Node k = 1; k <= last; ++k) {
      if (i == k) continue;
      model.arc_var[{i, k}] = model.add_variable(var_name("x", {i, k}), VarType::kBinary);
    }
  }
  for (const auto& s : catalog) {
    model.sortie_var[s] =
        model.add_variable(var_name("y", {s.launch, s.customer, s.rendezvous}), VarType::kBinary);
  }
  model.truck_time_var.assign(static_cast<std::size_t>(nodes), -1);
  model.drone_time_var.assign(static_cast<std::size_t>(nodes), -1);
  model.wait_var.assign(static_cast<std::size_t>(nodes), -1);
  for (Node v = 0; v < nodes; ++v) {
    model.truck_time_var[v] = model.add_variable(var_name("tT", {v}), VarType::kContinuous);
  }
  for (Node v = 0; v < nodes; ++v) {
    model.drone_time_var[v] = model.add_variable(var_name("tD", {v}), VarType::kContinuous);
  }
  for (Node k = 1; k < nodes; ++k) {
    model.wait_var[k] = model.add_variable(var_name("w", {k}), VarType::kContinuous);
  }

  auto x = [&](Node i, Node k) { return model.arc_var.at({i, k}); };
  auto y = [&](const Sortie& s) { return model.sortie_var.at(s); };
  auto tT = [&](Node v) { return model.truck_time_var[v]; };
  auto tD = [&](Node v) { return model.drone_time_var[v]; };
  auto w = [&](Node v) { return model.wait_var[v]; };
  auto delta = [&](Node i) { return (i == 0 && !params.depot_launch_time) ? 0.0 : 1.0; };
  auto exits = [&](Node i) {
    std::vector<Term> t;
    for (Node k = 1; k <= last; ++k) {
      if (k != i) t.push_back({x(i, k), 1.0});
    }
    return t;
  };
  auto entries = [&](Node k) {
    std::vector<Term> t;
    for (Node i = 0; i <= n; ++i) {
      if (i != k) t.push_back({x(i, k), 1.0});
    }
    return t;
  };

  // Objective.
  for (const auto& [arc, var] : model.arc_var) {
    model.objective.push_back({var, instance.truck_time(arc.first, arc.second)});
  }
  for (const auto& s : catalog) {
    double coef = params.sigma_launch * delta(s.launch) + params.sigma_rendezvous;
    if (s.is_loop()) coef += flight_time(instance, s);
    if (coef != 0.0) model.objective.push_back({y(s), coef});
  }
  for (Node k = 1; k <= last; ++k) model.objective.push_back({w(k), 1.0});

  // Covering.
  for (Node j = 1; j <= n; ++j) {
    auto terms = entries(j);
    if (instance.is_drone_eligible(j)) {
      for (const auto& s : catalog) {
        if (s.customer == j) terms.push_back({y(s), 1.0});
      }
      model.add_constraint(var_name("cover", {j}), std::move(terms), Sense::kEqual, 1.0);
    } else {
      model.add_constraint(var_name("coverT", {j}), std::move(terms), Sense::kEqual, 1.0);
    }
  }

  // Truck routing.
  model.add_constraint("depart", exits(0), Sense::kEqual, 1.0);
  model.add_constraint("arrive", entries(last), Sense::kEqual, 1.0);
  for (Node j = 1; j <= n; ++j) {
    auto terms = entries(j);
    for (const auto& t : exits(j)) terms.push_back({t.var, -1.0});
    model.add_constraint(var_name("flow", {j}), std::move(terms), Sense::kEqual, 0.0);
  }

  // Truck timing along arcs; loops only contribute through the objective.
  for (const auto& [arc, var] : model.arc_var) {
    const auto [i, k] = arc;
    std::vector<Term> base{{tT(k), 1.0}, {tT(i), -1.0}, {w(k), -1.0}};
    for (const auto& s : catalog) {
      if (s.is_loop()) continue;
      if (s.launch == i) base.push_back({y(s), -params.sigma_launch * delta(i)});
      if (s.rendezvous == k) base.push_back({y(s), -params.sigma_rendezvous});
    }
    const double tau = instance.truck_time(i, k);
    auto lower = base;
    lower.push_back({var, -M});
    model.add_constraint(var_name("ttimeA", {i, k}), std::move(lower), Sense::kGreaterEqual,
                         tau - M);
    auto upper = base;
    upper.push_back({var, M});
    model.add_constraint(var_name("ttimeB", {i, k}), std::move(upper), Sense::kLessEqual, tau + M);
  }

  // Drone routing.
  for (Node i = 0; i <= n; ++i) {
    std::vector<Term> terms;
    for (const auto& s : catalog) {
      if (!s.is_loop() && s.launch == i) terms.push_back({y(s), 1.0});
    }
    if (terms.empty()) continue;
    for (const auto& t : exits(i)) terms.push_back({t.var, -1.0});
    model.add_constraint(var_name("dronedep", {i}), std::move(terms), Sense::kLessEqual, 0.0);
  }
  for (Node k = 1; k <= last; ++k) {
    std::vector<Term> terms;
    for (const auto& s : catalog) {
      if (!s.is_loop() && s.rendezvous == k) terms.push_back({y(s), 1.0});
    }
    if (terms.empty()) continue;
    for (const auto& t : entries(k)) terms.push_back({t.var, -1.0});
    model.add_constraint(var_name("dronearr", {k}), std::move(terms), Sense::kLessEqual, 0.0);
  }
  if (setting.loops_allowed) {
    for (Node k = 1; k <= last; ++k) {
      std::vector<Term> terms;
      for (const auto& s : catalog) {
        if (s.is_loop() && s.launch == k) terms.push_back({y(s), 1.0});
      }
      if (terms.empty()) continue;
      for (const auto& t : entries(k)) terms.push_back({t.var, -static_cast<double>(n)});
      model.add_constraint(var_name("loops", {k}), std::move(terms), Sense::kLessEqual, 0.0);
    }
  }

  // Drone timing. Rows whose sortie sum is empty are vacuous and skipped.
  for (Node i = 0; i <= n; ++i) {
    for (Node j : instance.drone_eligible()) {
      if (i == j) continue;
      std::vector<Term> terms{{tD(j), 1.0}, {tT(i), -1.0}};
      bool any = false;
      for (const auto& s : catalog) {
        if (!s.is_loop() && s.launch == i && s.customer == j) {
          terms.push_back({y(s), -M});
          any = true;
        }
      }
      if (!any) continue;
      model.add_constraint(var_name("dtimeL", {i, j}), std::move(terms), Sense::kGreaterEqual,
                           instance.drone_time(i, j) + params.sigma_launch * delta(i) - M);
    }
  }
  for (Node j : instance.drone_eligible()) {
    for (Node k = 1; k <= last; ++k) {
      if (k == j) continue;
      std::vector<Term> terms{{tD(k), 1.0}, {tD(j), -1.0}};
      bool any = false;
      for (const auto& s : catalog) {
        if (!s.is_loop() && s.customer == j && s.rendezvous == k) {
          terms.push_back({y(s), -M});
          any = true;
        }
      }
      if (!any) continue;
      model.add_constraint(var_name("dtimeR", {j, k}), std::move(terms), Sense::kGreaterEqual,
                           instance.drone_time(j, k) + params.sigma_rendezvous - M);
    }
  }

  // Synchronization.
  model.add_constraint("tt0", {{tT(0), 1.0}}, Sense::kEqual, 0.0);
  model.add_constraint("td0", {{tD(0), 1.0}}, Sense::kEqual, 0.0);
  for (Node i = 1; i <= n; ++i) {
    std::vector<Term> lo{{tD(i), 1.0}, {tT(i), -1.0}};
    std::vector<Term> hi = lo;
    for (const auto& t : exits(i)) {
      lo.push_back({t.var, -M});
      hi.push_back({t.var, M});
    }
    model.add_constraint(var_name("sync1", {i}), std::move(lo), Sense::kGreaterEqual, -M);
    model.add_constraint(var_name("sync2", {i}), std::move(hi), Sense::kLessEqual, M);
  }
  for (Node k = 1; k <= last; ++k) {
    std::vector<Term> lo{{tD(k), 1.0}, {tT(k), -1.0}};
    std::vector<Term> hi = lo;
    for (const auto& t : entries(k)) {
      lo.push_back({t.var, -M});
      hi.push_back({t.var, M});
    }
    model.add_constraint(var_name("sync3", {k}), std::move(lo), Sense::kGreaterEqual, -M);
    model.add_constraint(var_name("sync4", {k}), std::move(hi), Sense::kLessEqual, M);
  }

  // Endurance while hovering; with landing the catalog filter is enough.
  if (params.endurance && params.hover) {
    for (const auto& s : catalog) {
      if (s.is_loop()) continue;
      model.add_constraint(var_name("endur", {s.launch, s.customer, s.rendezvous}),
                           {{tD(s.rendezvous), 1.0}, {tD(s.launch), -1.0}, {y(s), M}},
                           Sense::kLessEqual,
                           *params.endurance + M + params.sigma_launch * delta(s.launch));
    }
  }
  return model;
}

double objective_value(const LinearModel& model, std::span<const double> values) {
  double total = model.objective_constant;
  for (const auto& t : model.objective) total += t.coef * values[t.var];
  return total;
}

std::vector<std::string> violated_rows(const LinearModel& model, std::span<const double> values,
                                       double tolerance) {
  std::vector<std::string> out;
  for (const auto& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    const bool ok = c.sense == Sense::kLessEqual    ? lhs <= c.rhs + tolerance
                    : c.sense == Sense::kGreaterEqual ? lhs >= c.rhs - tolerance
                                                      : std::abs(lhs - c.rhs) <= tolerance;
    if (!ok) out.push_back(c.name);
  }
  return out;
}

std::vector<double> assignment_from_solution(const LinearModel& model, const Instance& instance,
                                             const ProblemSetting& raw_setting,
                                             const Solution& solution) {
  const ProblemSetting setting = raw_setting.normalized();
  const EffectiveParameters params(instance, setting);
  std::vector<double> values(model.variables.size(), 0.0);
  const auto& route = solution.route;
  const int nodes = instance.node_count();

  for (std::size_t p = 0; p + 1 < route.size(); ++p) {
    values[model.arc_var.at({route[p], route[p + 1]})] = 1.0;
  }
  for (const auto& s : solution.sorties) values[model.sortie_var.at(s)] = 1.0;

  std::vector<int> pos(static_cast<std::size_t>(nodes), -1);
  for (std::size_t p = 0; p < route.size(); ++p) pos[route[p]] = static_cast<int>(p);
  std::vector<std::optional<Sortie>> launch_at(route.size());
  for (const auto& s : solution.sorties) {
    if (!s.is_loop()) launch_at[pos[s.launch]] = s;
  }

  // Ready times exclude loop waiting, which only enters the objective.
  std::vector<double> truck(static_cast<std::size_t>(nodes), 0.0);
  std::vector<double> drone(static_cast<std::size_t>(nodes), 0.0);
  std::vector<double> wait(static_cast<std::size_t>(nodes), 0.0);
  std::vector<bool> placed(static_cast<std::size_t>(nodes), false);
  placed[0] = true;
  int p = 0;
  const int length = static_cast<int>(route.size());
  while (p < length - 1) {
    const Node here = route[p];
    if (launch_at[p]) {
      const Sortie s = *launch_at[p];
      const double launch = params.launch_charge(here);
      const int to = pos[s.rendezvous];
      double path = 0.0;
      for (int q = p; q < to; ++q) path += instance.truck_time(route[q], route[q + 1]);
      const double flight = flight_time(instance, s);
      double t = truck[here] + launch;
      for (int q = p + 1; q < to; ++q) {
        t += instance.truck_time(route[q - 1], route[q]);
        truck[route[q]] = t;
        placed[route[q]] = true;
      }
      wait[s.rendezvous] = std::max(0.0, flight - path);
      truck[s.rendezvous] = truck[here] + launch + path + params.sigma_rendezvous + wait[s.rendezvous];
      placed[s.rendezvous] = true;
      drone[s.customer] = truck[here] + launch + instance.drone_time(s.launch, s.customer);
      placed[s.customer] = true;
      for (int q = p; q <= to; ++q) drone[route[q]] = truck[route[q]];
      p = to;
    } else {
      truck[route[p + 1]] = truck[here] + instance.truck_time(here, route[p + 1]);
      drone[route[p + 1]] = truck[route[p + 1]];
      placed[route[p + 1]] = true;
      ++p;
    }
  }
  for (const auto& s : solution.sorties) {
    if (s.is_loop()) {
      drone[s.customer] = truck[s.launch];
      placed[s.customer] = true;
    }
  }
  for (Node v = 0; v < nodes; ++v) {
    if (pos[v] < 0) truck[v] = drone[v];  // off-route nodes: any consistent value
    values[model.truck_time_var[v]] = truck[v];
    values[model.drone_time_var[v]] = drone[v];
    if (model.wait_var[v] >= 0) values[model.wait_var[v]] = wait[v];
  }
  return values;
}

Solution solution_from_assignment(const LinearModel& model, std::span<const double> values) {
  const Node last = model.n + 1;
  auto active = [&](int var) { return values[var] > 0.5; };

  Solution out;
  out.route.push_back(0);
  std::vector<bool> seen(static_cast<std::size_t>(last) + 1, false);
  seen[0] = true;
  Node at = 0;
  while (at != last) {
    Node next = -1;
    for (Node k = 1; k <= last; ++k) {
      auto it = model.arc_var.find({at, k});
      if (it != model.arc_var.end() && active(it->second)) {
        next = k;
        break;
      }
    }
    if (next < 0 || seen[next]) {
      throw SolverError("candidate truck route does not reach the end depot");
    }
    seen[next] = true;
    out.route.push_back(next);
    at = next;
  }

  std::vector<int> pos(static_cast<std::size_t>(last) + 1, -1);
  for (std::size_t p = 0; p < out.route.size(); ++p) pos[out.route[p]] = static_cast<int>(p);
  for (const auto& [s, var] : model.sortie_var) {
    if (active(var)) out.sorties.push_back(s);
  }
  std::stable_sort(out.sorties.begin(), out.sorties.end(), [&](const Sortie& a, const Sortie& b) {
    if (pos[a.launch] != pos[b.launch]) return pos[a.launch] < pos[b.launch];
    return a.is_loop() && !b.is_loop();
  });
  return out;
}

}  // namespace tspd::milp
