#pragma once

#include <cstdint>
#include <vector>

#include "tspd/core.hpp"
#include "tspd/timing.hpp"

namespace tspd {

/// Bit c-1 set means customer c is in the set.
using CustomerSet = std::uint32_t;

inline constexpr CustomerSet customer_bit(Node c) { return CustomerSet{1} << (c - 1); }

/// Shortest elementary truck paths from i through exactly the customers in T
/// to k (Held-Karp tables), for every i in 0..n, T subset of C, k outside T.
class PathTable {
 public:
  static constexpr int kMaxCustomers = 20;

  explicit PathTable(const Instance& instance);

  int n() const { return n_; }

  /// Infinity when (from, through, to) is not a valid combination.
  Duration cost(Node from, CustomerSet through, Node to) const;

  /// Node sequence from..to visiting `through`, endpoints included.
  std::vector<Node> path(Node from, CustomerSet through, Node to) const;

 private:
  std::size_t index(Node from, CustomerSet through, Node to) const;

  int n_ = 0;
  std::vector<Duration> cost_;
  std::vector<std::int8_t> pred_;  // last customer before `to`, -1 for a direct hop
};

struct ExactResult {
  Duration optimum = 0.0;
  Solution solution;
};

/// Exact optimum by dynamic programming over (served customers, truck node).
/// Equal-value optima are broken by fewer sorties, then the lexicographically
/// smaller route, then the lexicographically smaller sortie list.
ExactResult solve_exact(const Instance& instance, const ProblemSetting& setting);

inline constexpr int kMaxExactCustomers = 16;

/// Exhaustive enumeration of routes and sortie assignments, each checked
/// with evaluate(). Independent of the dynamic program; for n <= 7.
Duration brute_force(const Instance& instance, const ProblemSetting& setting);

inline constexpr int kMaxBruteForceCustomers = 7;

/// Best truck-only Hamiltonian path 0 -> n+1; always feasible.
Duration truck_only_optimum(const Instance& instance);

}  // namespace tspd
