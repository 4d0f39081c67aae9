#include <algorithm>
#include <limits>

#include "tspd/dp_solver.hpp"

namespace tspd {

namespace {

struct Placement {
  int from = 0;  // route positions; from == to marks a loop
  int to = 0;
};

class Enumerator {
 public:
  Enumerator(const Instance& instance, const ProblemSetting& setting)
      : instance_(instance), setting_(setting.normalized()) {}

  Duration run() {
    const int n = instance_.n();
    for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << n); ++subset) {
      std::vector<Node> truck_customers;
      drone_customers_.clear();
      bool ok = true;
      for (Node c = 1; c <= n; ++c) {
        if (subset & (std::uint32_t{1} << (c - 1))) {
          truck_customers.push_back(c);
        } else if (instance_.is_drone_eligible(c)) {
          drone_customers_.push_back(c);
        } else {
          ok = false;
        }
      }
      if (!ok) continue;
      do {
        route_.assign({0});
        route_.insert(route_.end(), truck_customers.begin(), truck_customers.end());
        route_.push_back(instance_.end_depot());
        placements_.clear();
        assign(0);
      } while (std::next_permutation(truck_customers.begin(), truck_customers.end()));
    }
    return best_;
  }

 private:
  bool compatible(const Placement& p) const {
    for (const auto& q : placements_) {
      const bool p_loop = p.from == p.to;
      const bool q_loop = q.from == q.to;
      if (p_loop && q_loop) continue;
      if (p_loop) {
        if (q.from < p.from && p.from < q.to) return false;
      } else if (q_loop) {
        if (p.from < q.from && q.from < p.to) return false;
      } else if (!(p.to <= q.from || q.to <= p.from)) {
        return false;
      }
    }
    return true;
  }

  void assign(std::size_t idx) {
    const int stops = static_cast<int>(route_.size());
    if (idx == drone_customers_.size()) {
      score();
      return;
    }
    for (int from = 0; from < stops; ++from) {
      for (int to = from; to < stops; ++to) {
        if (from == to && (!setting_.loops_allowed || from == 0)) continue;
        const Placement p{from, to};
        if (!compatible(p)) continue;
        placements_.push_back(p);
        assign(idx + 1);
        placements_.pop_back();
      }
    }
  }

  void score() {
    std::vector<std::pair<Placement, Sortie>> order;
    for (std::size_t i = 0; i < placements_.size(); ++i) {
      const auto& p = placements_[i];
      order.push_back({p, Sortie{route_[p.from], drone_customers_[i], route_[p.to]}});
    }
    // Chronological: by stop; at a stop, loops run before the next launch.
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first.from != b.first.from) return a.first.from < b.first.from;
      const bool a_loop = a.first.from == a.first.to;
      const bool b_loop = b.first.from == b.first.to;
      if (a_loop != b_loop) return a_loop;
      return a.second < b.second;
    });
    Solution candidate{route_, {}};
    for (const auto& [p, s] : order) candidate.sorties.push_back(s);
    const Evaluation ev = evaluate(instance_, setting_, candidate);
    if (ev.feasible()) best_ = std::min(best_, ev.makespan());
  }

  const Instance& instance_;
  ProblemSetting setting_;
  std::vector<Node> route_;
  std::vector<Node> drone_customers_;
  std::vector<Placement> placements_;
  Duration best_ = std::numeric_limits<Duration>::infinity();
};

}  // namespace

Duration brute_force(const Instance& instance, const ProblemSetting& setting) {
  if (instance.n() > kMaxBruteForceCustomers) {
    throw SizeLimitExceeded("brute force supports at most " +
                            std::to_string(kMaxBruteForceCustomers) + " customers, instance has " +
                            std::to_string(instance.n()));
  }
  const Duration best = Enumerator(instance, setting).run();
  if (best == std::numeric_limits<Duration>::infinity()) {
    throw NoSolution("no feasible solution found by enumeration");
  }
  return best;
}

}  // namespace tspd
