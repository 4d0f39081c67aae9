#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "fixtures.hpp"
#include "tspd/dp_solver.hpp"

namespace tspd {
namespace {

using testing::generated;
using testing::random_instance;
using testing::toy_t2;

// Direct enumeration over permutations, independent of the table recurrence.
Duration path_by_permutation(const Instance& inst, Node from, CustomerSet through, Node to) {
  std::vector<Node> order;
  for (Node c = 1; c <= inst.n(); ++c) {
    if (through & customer_bit(c)) order.push_back(c);
  }
  Duration best = std::numeric_limits<Duration>::infinity();
  do {
    Duration t = 0.0;
    Node at = from;
    for (Node c : order) {
      t += inst.truck_time(at, c);
      at = c;
    }
    best = std::min(best, t + inst.truck_time(at, to));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

TEST(PathTable, ToyValues) {
  const auto t2 = toy_t2();
  const PathTable table(t2);
  EXPECT_DOUBLE_EQ(table.cost(0, 0, 1), 4.0);
  EXPECT_DOUBLE_EQ(table.cost(0, customer_bit(1), 3), 8.0);
  // 0-1-2-3 costs 4+4+4, 0-2-1-3 costs 6+4+4.
  EXPECT_DOUBLE_EQ(table.cost(0, customer_bit(1) | customer_bit(2), 3), 12.0);
  EXPECT_EQ(table.path(0, customer_bit(1) | customer_bit(2), 3), (std::vector<Node>{0, 1, 2, 3}));
}

TEST(PathTable, InvalidCombinationsAreInfinite) {
  const PathTable table(toy_t2());
  EXPECT_TRUE(std::isinf(table.cost(0, customer_bit(1), 1)));
  EXPECT_TRUE(std::isinf(table.cost(1, customer_bit(1), 3)));
}

TEST(PathTable, MatchesPermutationEnumeration) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = random_instance(seed, 6);
    const PathTable table(inst);
    const int n = inst.n();
    for (CustomerSet through = 0; through < (CustomerSet{1} << n); ++through) {
      for (Node from = 0; from <= n; ++from) {
        if (from > 0 && (through & customer_bit(from))) continue;
        for (Node to = 1; to <= n + 1; ++to) {
          if (to == from || (to <= n && (through & customer_bit(to)))) continue;
          const Duration expected = path_by_permutation(inst, from, through, to);
          ASSERT_NEAR(table.cost(from, through, to), expected, 1e-9);
          const auto path = table.path(from, through, to);
          Duration walked = 0.0;
          for (std::size_t h = 0; h + 1 < path.size(); ++h) walked += inst.truck_time(path[h], path[h + 1]);
          ASSERT_NEAR(walked, expected, 1e-9);
          ASSERT_EQ(path.size(), static_cast<std::size_t>(std::popcount(through)) + 2);
        }
      }
    }
  }
}

TEST(SolveExact, ToyOptima) {
  const auto t2 = toy_t2();
  const auto one = solve_exact(t2, setting_from_id(1));
  EXPECT_DOUBLE_EQ(one.optimum, 9.0);
  EXPECT_EQ(one.solution, (Solution{{0, 1, 3}, {{0, 2, 3}}}));
  EXPECT_DOUBLE_EQ(solve_exact(t2, setting_from_id(3)).optimum, 10.0);
  EXPECT_DOUBLE_EQ(solve_exact(t2, setting_from_id(5)).optimum, 8.0);
  EXPECT_DOUBLE_EQ(solve_exact(t2, setting_from_id(9)).optimum, 8.0);
}

TEST(SolveExact, EmptyCatalogFallsBackToTruck) {
  const auto t2 = toy_t2(3.0);
  for (int id = 1; id <= 8; ++id) {
    const auto r = solve_exact(t2, setting_from_id(id));
    EXPECT_DOUBLE_EQ(r.optimum, 12.0);
    EXPECT_TRUE(r.solution.sorties.empty());
  }
  EXPECT_DOUBLE_EQ(truck_only_optimum(t2), 12.0);
}

TEST(SolveExact, SizeGuard) {
  const auto big = generated(1, kMaxExactCustomers + 1);
  EXPECT_THROW(solve_exact(big, setting_from_id(1)), SizeLimitExceeded);
  EXPECT_THROW(brute_force(generated(1, kMaxBruteForceCustomers + 1), setting_from_id(1)),
               SizeLimitExceeded);
}

TEST(SolveExact, SingleCustomer) {
  TimeMatrix truck(3, {0, 5, 0, 5, 0, 5, 0, 5, 0});
  TimeMatrix drone(3, {0, 2, 0, 2, 0, 2, 0, 2, 0});
  const Instance one(truck, drone, {1}, 20.0, 1.0, 1.0);
  for (int id = 1; id <= 9; ++id) {
    const auto setting = setting_from_id(id);
    const auto exact = solve_exact(one, setting);
    // Only "0 1 2" or "0 2 (0,1,2)", possibly with a loop at the end depot.
    const Duration truck_path = 10.0;
    Duration best = truck_path;
    best = std::min(best, leg_elapsed(0.0, 4.0, true, setting, one));
    if (setting.loops_allowed) best = std::min(best, loop_elapsed(one, setting, {2, 1, 2}));
    EXPECT_NEAR(exact.optimum, best, 1e-12) << id;
    EXPECT_NEAR(brute_force(one, setting), best, 1e-12) << id;
  }
}

TEST(SolveExact, IneligibleCustomersStayOnTheRoute) {
  const auto inst = random_instance(17, 5);
  for (int id = 1; id <= 9; ++id) {
    const auto r = solve_exact(inst, setting_from_id(id));
    for (const auto& s : r.solution.sorties) EXPECT_TRUE(inst.is_drone_eligible(s.customer));
  }
}

TEST(BruteForce, ToyValues) {
  EXPECT_DOUBLE_EQ(brute_force(toy_t2(), setting_from_id(9)), 8.0);
  EXPECT_DOUBLE_EQ(brute_force(toy_t2(), setting_from_id(1)), 9.0);
  EXPECT_DOUBLE_EQ(brute_force(toy_t2(3.0), setting_from_id(1)), 12.0);
}

class OracleEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(OracleEquivalence, RandomInstances) {
  const auto setting = setting_from_id(GetParam());
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    for (auto endurance : {std::optional<Duration>(8.0), std::optional<Duration>(14.0)}) {
      const auto inst = random_instance(seed, n, endurance);
      const auto exact = solve_exact(inst, setting);
      ASSERT_NEAR(exact.optimum, brute_force(inst, setting), 1e-9) << "seed " << seed;
      const auto ev = evaluate(inst, setting, exact.solution);
      ASSERT_TRUE(ev.feasible());
      ASSERT_NEAR(ev.makespan(), exact.optimum, 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllSettings, OracleEquivalence, ::testing::Range(1, 10));

TEST(SolveExact, Monotonicity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generated(seed, 5);
    std::array<Duration, 10> o20{}, o40{};
    for (int id = 1; id <= 9; ++id) {
      o20[id] = solve_exact(inst, setting_from_id(id)).optimum;
      o40[id] = solve_exact(inst.with_parameters(40.0, 1.0, 1.0), setting_from_id(id)).optimum;
      EXPECT_LE(o40[id], o20[id] + 1e-9);
      EXPECT_LE(o20[id], truck_only_optimum(inst) + 1e-9);
    }
    const std::pair<int, int> pairs[] = {{1, 2}, {3, 4}, {5, 6}, {1, 3}, {2, 4},
                                         {7, 8}, {7, 1}, {8, 4}, {9, 5}};
    for (auto [lo, hi] : pairs) EXPECT_LE(o20[lo], o20[hi] + 1e-9) << lo << " vs " << hi;
  }
}

TEST(SolveExact, Deterministic) {
  const auto inst = generated(42, 7);
  for (int id = 1; id <= 9; ++id) {
    const auto a = solve_exact(inst, setting_from_id(id));
    const auto b = solve_exact(inst, setting_from_id(id));
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.optimum, b.optimum);
  }
}

}  // namespace
}  // namespace tspd
