#include <algorithm>
#include <limits>

#include "tspd/dp_solver.hpp"

namespace tspd {

namespace {
constexpr Duration kInf = std::numeric_limits<Duration>::infinity();
}

PathTable::PathTable(const Instance& instance) : n_(instance.n()) {
  if (n_ > kMaxCustomers) {
    throw SizeLimitExceeded("path table supports at most " + std::to_string(kMaxCustomers) +
                            " customers, instance has " + std::to_string(n_));
  }
  const std::size_t sets = std::size_t{1} << n_;
  const std::size_t size = static_cast<std::size_t>(n_ + 1) * sets * static_cast<std::size_t>(n_ + 2);
  cost_.assign(size, kInf);
  pred_.assign(size, -1);

  const Node last = n_ + 1;
  for (CustomerSet through = 0; through < sets; ++through) {
    for (Node from = 0; from <= n_; ++from) {
      if (from > 0 && (through & customer_bit(from))) continue;
      for (Node to = 1; to <= last; ++to) {
        if (to == from) continue;
        if (to <= n_ && (through & customer_bit(to))) continue;
        const std::size_t at = index(from, through, to);
        if (through == 0) {
          cost_[at] = instance.truck_time(from, to);
          continue;
        }
        Duration best = kInf;
        std::int8_t best_pred = -1;
        for (Node m = 1; m <= n_; ++m) {
          if (!(through & customer_bit(m))) continue;
          const Duration c = cost_[index(from, through & ~customer_bit(m), m)] +
                             instance.truck_time(m, to);
          bool take = c < best - kTimeTolerance;
          if (!take && c <= best + kTimeTolerance && best_pred >= 0) {
            // Equal cost: keep the lexicographically smaller path.
            take = path(from, through & ~customer_bit(m), m) <
                   path(from, through & ~customer_bit(best_pred), best_pred);
          }
          if (take) {
            best = c;
            best_pred = static_cast<std::int8_t>(m);
          }
        }
        cost_[at] = best;
        pred_[at] = best_pred;
      }
    }
  }
}

std::size_t PathTable::index(Node from, CustomerSet through, Node to) const {
  return (static_cast<std::size_t>(from) * (std::size_t{1} << n_) + through) *
             static_cast<std::size_t>(n_ + 2) +
         static_cast<std::size_t>(to);
}

Duration PathTable::cost(Node from, CustomerSet through, Node to) const {
  if (from < 0 || from > n_ || to < 1 || to > n_ + 1 || through >= (CustomerSet{1} << n_)) {
    return kInf;
  }
  return cost_[index(from, through, to)];
}

std::vector<Node> PathTable::path(Node from, CustomerSet through, Node to) const {
  std::vector<Node> reversed{to};
  Node at = to;
  while (through != 0) {
    const std::int8_t m = pred_[index(from, through, at)];
    if (m < 0) return {};
    reversed.push_back(m);
    through &= ~customer_bit(m);
    at = m;
  }
  reversed.push_back(from);
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

Duration truck_only_optimum(const Instance& instance) {
  const PathTable table(instance);
  const CustomerSet all = (CustomerSet{1} << instance.n()) - 1;
  return table.cost(0, all, instance.end_depot());
}

}  // namespace tspd
