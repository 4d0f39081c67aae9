#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "tspd/core.hpp"
#include "tspd/io_bench.hpp"

namespace tspd::testing {

// Two customers; the optimum under setting 1 is "0 1 3 (0,2,3)" at 9.
inline Instance toy_t2(std::optional<Duration> endurance = 20.0, Duration sigma = 1.0) {
  TimeMatrix truck(4, {0, 4, 6, 0,  //
                       4, 0, 4, 4,  //
                       6, 4, 0, 4,  //
                       0, 4, 4, 0});
  TimeMatrix drone(4, {0, 2, 3, 0,  //
                       2, 0, 2, 2,  //
                       3, 2, 0, 3,  //
                       0, 2, 3, 0});
  return Instance(truck, drone, {1, 2}, endurance, sigma, sigma);
}

inline std::string t2_dir() { return std::string(TSPD_TEST_DATA) + "/T2"; }

// Asymmetric random matrices with a random drone-eligible subset, so the
// tests do not only exercise the metric generator.
inline Instance random_instance(std::uint64_t seed, int n, std::optional<Duration> endurance = 20.0,
                                Duration sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> truck_time(1.0, 15.0), drone_time(0.5, 9.0);
  std::bernoulli_distribution eligible(0.75);
  const int side = n + 2;
  TimeMatrix truck(side), drone(side);
  for (Node i = 0; i < side; ++i) {
    for (Node j = 0; j < side; ++j) {
      if (i == j) continue;
      truck(i, j) = truck_time(rng);
      drone(i, j) = drone_time(rng);
    }
  }
  std::vector<Node> cprime;
  for (Node c = 1; c <= n; ++c) {
    if (eligible(rng)) cprime.push_back(c);
  }
  return Instance(truck, drone, cprime, endurance, sigma, sigma);
}

inline Instance generated(std::uint64_t seed, int n, std::optional<Duration> endurance = 20.0) {
  bench::RunParameters params;
  params.endurance = endurance;
  return bench::generate_b2_instance(seed, n, 50.0, params);
}

}  // namespace tspd::testing
