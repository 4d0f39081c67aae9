#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tspd/dp_solver.hpp"
#include "tspd/timing.hpp"

namespace tspd {
namespace {

using testing::random_instance;
using testing::toy_t2;
using Kind = Violation::Kind;

TEST(LegElapsed, DepotLaunchWithoutDepotTime) {
  EXPECT_DOUBLE_EQ(leg_elapsed(8, 6.0, true, setting_from_id(1), toy_t2()), 9.0);
}

TEST(LegElapsed, DepotLaunchWithDepotTime) {
  EXPECT_DOUBLE_EQ(leg_elapsed(8, 6.0, true, setting_from_id(3), toy_t2()), 10.0);
}

TEST(LegElapsed, SortieFreeLegIsTravel) {
  for (int id = 1; id <= 9; ++id) {
    EXPECT_DOUBLE_EQ(leg_elapsed(5, std::nullopt, false, setting_from_id(id), toy_t2()), 5.0);
  }
}

TEST(LegElapsed, TimesOffDropSigmas) {
  EXPECT_DOUBLE_EQ(leg_elapsed(4, 7.0, false, setting_from_id(5), toy_t2()), 7.0);
  EXPECT_DOUBLE_EQ(leg_elapsed(4, 7.0, false, setting_from_id(1), toy_t2()), 9.0);
}

TEST(LoopElapsed, EndDepotAlwaysPaysLaunch) {
  const auto t2 = toy_t2();
  EXPECT_DOUBLE_EQ(loop_elapsed(t2, setting_from_id(7), {3, 2, 3}), 1 + 6 + 1);
  EXPECT_DOUBLE_EQ(loop_elapsed(t2, setting_from_id(9), {3, 2, 3}), 6.0);
}

TEST(Evaluate, ToyOptimum) {
  const auto ev = evaluate(toy_t2(), setting_from_id(1), {{0, 1, 3}, {{0, 2, 3}}});
  ASSERT_TRUE(ev.feasible());
  EXPECT_DOUBLE_EQ(ev.makespan(), 9.0);
  const auto& tl = *ev.timeline;
  EXPECT_DOUBLE_EQ(*tl.truck_ready[0], 0.0);
  EXPECT_DOUBLE_EQ(*tl.drone_ready[0], 0.0);
  EXPECT_DOUBLE_EQ(*tl.truck_ready[3], 9.0);
  EXPECT_DOUBLE_EQ(*tl.drone_ready[3], 9.0);
}

TEST(Evaluate, PureTruckPath) {
  const auto ev = evaluate(toy_t2(), setting_from_id(1), {{0, 1, 2, 3}, {}});
  ASSERT_TRUE(ev.feasible());
  EXPECT_DOUBLE_EQ(ev.makespan(), 12.0);
}

TEST(Evaluate, HoverEnduranceViolation) {
  const auto t2 = toy_t2(7.0);
  const Solution sol{{0, 1, 3}, {{0, 2, 3}}};
  const auto hover = evaluate(t2, setting_from_id(2), sol);
  EXPECT_FALSE(hover.feasible());
  EXPECT_TRUE(hover.has(Kind::kEndurance));
  const auto landing = evaluate(t2, setting_from_id(1), sol);
  ASSERT_TRUE(landing.feasible());
  EXPECT_DOUBLE_EQ(landing.makespan(), 9.0);
}

TEST(Evaluate, CoveringViolations) {
  const auto t2 = toy_t2();
  EXPECT_TRUE(evaluate(t2, setting_from_id(1), {{0, 1, 3}, {}}).has(Kind::kCovering));
  EXPECT_TRUE(evaluate(t2, setting_from_id(1), {{0, 1, 2, 3}, {{0, 2, 3}}}).has(Kind::kCovering));
}

TEST(Evaluate, EligibilityViolation) {
  const auto base = toy_t2();
  const Instance only_one(base.truck(), base.drone(), {1}, 20.0, 1.0, 1.0);
  const auto ev = evaluate(only_one, setting_from_id(1), {{0, 1, 3}, {{0, 2, 3}}});
  EXPECT_TRUE(ev.has(Kind::kEligibility));
}

TEST(Evaluate, RouteShapeViolations) {
  const auto t2 = toy_t2();
  EXPECT_TRUE(evaluate(t2, setting_from_id(1), {{0, 1, 2}, {}}).has(Kind::kRouteShape));
  EXPECT_TRUE(evaluate(t2, setting_from_id(1), {{0, 1, 1, 2, 3}, {}}).has(Kind::kRouteShape));
  EXPECT_TRUE(evaluate(t2, setting_from_id(1), {{0, 1, 7, 3}, {}}).has(Kind::kRouteShape));
}

TEST(Evaluate, BackwardSortie) {
  const auto inst = random_instance(1, 3, std::nullopt);
  const Instance all(inst.truck(), inst.drone(), {1, 2, 3}, std::nullopt, 1, 1);
  const auto ev = evaluate(all, setting_from_id(1), {{0, 1, 3, 4}, {{3, 2, 1}}});
  EXPECT_TRUE(ev.has(Kind::kBackwardSortie));
}

TEST(Evaluate, LoopsNeedPermissionAndNeverStartAtDepot) {
  const auto t2 = toy_t2();
  EXPECT_TRUE(evaluate(t2, setting_from_id(1), {{0, 1, 3}, {{1, 2, 1}}}).has(Kind::kLoopPlacement));
  EXPECT_TRUE(evaluate(t2, setting_from_id(9), {{0, 1, 3}, {{0, 2, 0}}}).has(Kind::kLoopPlacement));
  const auto ok = evaluate(t2, setting_from_id(9), {{0, 1, 3}, {{1, 2, 1}}});
  ASSERT_TRUE(ok.feasible());
  EXPECT_DOUBLE_EQ(ok.makespan(), 4 + 4 + 4);
}

TEST(Evaluate, LoopsAtTheSameNodeCommute) {
  const auto inst = random_instance(11, 4, std::nullopt);
  const Instance all(inst.truck(), inst.drone(), {1, 2, 3, 4}, std::nullopt, 1, 1);
  const auto setting = setting_from_id(8);
  const auto a = evaluate(all, setting, {{0, 1, 2, 5}, {{2, 3, 2}, {2, 4, 2}}});
  const auto b = evaluate(all, setting, {{0, 1, 2, 5}, {{2, 4, 2}, {2, 3, 2}}});
  ASSERT_TRUE(a.feasible());
  ASSERT_TRUE(b.feasible());
  EXPECT_NEAR(a.makespan(), b.makespan(), 1e-12);
}

TEST(Evaluate, ReportsEveryViolation) {
  const auto base = toy_t2(3.0);
  const Instance only_one(base.truck(), base.drone(), {1}, 3.0, 1.0, 1.0);
  const auto ev = evaluate(only_one, setting_from_id(2), {{0, 1, 3}, {{0, 2, 3}, {0, 2, 3}}});
  EXPECT_FALSE(ev.feasible());
  EXPECT_TRUE(ev.has(Kind::kEligibility));
  EXPECT_TRUE(ev.has(Kind::kCovering));
  EXPECT_TRUE(ev.has(Kind::kEndurance));
  EXPECT_TRUE(ev.has(Kind::kCrossing));
}

TEST(Crossing, InterleavedPair) {
  const auto hit = detect_crossing({0, 1, 2, 3, 6}, {{0, 4, 2}, {1, 5, 3}});
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->first, (Sortie{0, 4, 2}));
  EXPECT_EQ(hit->second, (Sortie{1, 5, 3}));
}

TEST(Crossing, SequentialLegs) {
  EXPECT_FALSE(detect_crossing({0, 1, 2, 3, 6}, {{0, 4, 1}, {2, 5, 6}}).has_value());
}

TEST(Crossing, NestedPair) {
  EXPECT_TRUE(detect_crossing({0, 1, 2, 6}, {{0, 4, 6}, {1, 5, 2}}).has_value());
}

TEST(Crossing, SharedLaunchAndLoops) {
  EXPECT_TRUE(detect_crossing({0, 1, 2, 6}, {{1, 4, 2}, {1, 5, 6}}).has_value());
  // Loops at the endpoints of a leg are fine; strictly inside they are not.
  EXPECT_FALSE(detect_crossing({0, 1, 2, 6}, {{0, 4, 2}, {2, 5, 2}, {6, 3, 6}}).has_value());
  EXPECT_TRUE(detect_crossing({0, 1, 2, 6}, {{0, 4, 2}, {1, 5, 1}}).has_value());
  // Rendezvous at a stop that launches the next sortie.
  EXPECT_FALSE(detect_crossing({0, 1, 2, 6}, {{0, 4, 1}, {1, 5, 6}}).has_value());
}

class EvaluateProperties : public ::testing::TestWithParam<int> {};

TEST_P(EvaluateProperties, OptimaSatisfyStructuralBounds) {
  const int id = GetParam();
  const auto setting = setting_from_id(id);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto inst = random_instance(seed, 3 + static_cast<int>(seed % 3));
    const auto result = solve_exact(inst, setting);
    const auto ev = evaluate(inst, setting, result.solution);
    ASSERT_TRUE(ev.feasible());
    const auto& route = result.solution.route;
    double travel = 0.0;
    for (std::size_t h = 0; h + 1 < route.size(); ++h) travel += inst.truck_time(route[h], route[h + 1]);
    EXPECT_GE(ev.makespan() + 1e-9, travel);

    // Homogeneity.
    const auto scaled = inst.scaled(2.5);
    const auto ev2 = evaluate(scaled, setting, result.solution);
    ASSERT_TRUE(ev2.feasible());
    EXPECT_NEAR(ev2.makespan(), 2.5 * ev.makespan(), 1e-9);

    // Hover feasibility implies landing feasibility.
    if (setting.battery_limited && !setting.landing_allowed) {
      ProblemSetting landing = setting;
      landing.landing_allowed = true;
      EXPECT_TRUE(evaluate(inst, landing, result.solution).feasible());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllSettings, EvaluateProperties, ::testing::Range(1, 10));

TEST(Evaluate, SortieFreeSolutionsNeedHamiltonianRoutes) {
  const auto inst = random_instance(5, 4);
  for (int id = 1; id <= 9; ++id) {
    EXPECT_TRUE(evaluate(inst, setting_from_id(id), {{0, 2, 1, 4, 3, 5}, {}}).feasible());
    EXPECT_FALSE(evaluate(inst, setting_from_id(id), {{0, 2, 1, 4, 5}, {}}).feasible());
  }
}

}  // namespace
}  // namespace tspd
