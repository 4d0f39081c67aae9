#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tspd {

using Node = int;
using Duration = double;

// Absolute tolerance for duration comparisons (inputs carry 13 decimals).
inline constexpr Duration kTimeTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSetting : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

/// Dense square matrix of travel durations, indexed by node id.
class TimeMatrix {
 public:
  TimeMatrix() = default;
  explicit TimeMatrix(int side, Duration fill = 0.0);
  TimeMatrix(int side, std::vector<Duration> row_major);

  int side() const { return side_; }
  Duration operator()(Node i, Node j) const { return data_[index(i, j)]; }
  Duration& operator()(Node i, Node j) { return data_[index(i, j)]; }
  std::span<const Duration> row(Node i) const {
    return {data_.data() + static_cast<std::size_t>(i) * side_, static_cast<std::size_t>(side_)};
  }
  std::span<const Duration> values() const { return data_; }

  TimeMatrix scaled(Duration factor) const;

  bool operator==(const TimeMatrix&) const = default;

 private:
  std::size_t index(Node i, Node j) const {
    return static_cast<std::size_t>(i) * side_ + static_cast<std::size_t>(j);
  }

  int side_ = 0;
  std::vector<Duration> data_;
};

/// A single-truck/single-drone delivery instance over nodes 0..n+1.
///
/// Nodes 0 and n+1 are the same physical depot (start and end copies);
/// 1..n are customers. Row n+1 and column 0 of both matrices are never
/// consulted. The endurance is empty when the battery is unlimited.
class Instance {
 public:
  Instance(TimeMatrix truck, TimeMatrix drone, std::vector<Node> drone_eligible,
           std::optional<Duration> endurance, Duration sigma_launch, Duration sigma_rendezvous);

  int n() const { return n_; }
  Node start_depot() const { return 0; }
  Node end_depot() const { return n_ + 1; }
  int node_count() const { return n_ + 2; }

  const TimeMatrix& truck() const { return truck_; }
  const TimeMatrix& drone() const { return drone_; }
  Duration truck_time(Node i, Node j) const { return truck_(i, j); }
  Duration drone_time(Node i, Node j) const { return drone_(i, j); }

  bool is_customer(Node v) const { return v >= 1 && v <= n_; }
  bool is_drone_eligible(Node v) const { return is_customer(v) && eligible_mask_[v]; }
  const std::vector<Node>& drone_eligible() const { return eligible_; }

  const std::optional<Duration>& endurance() const { return endurance_; }
  Duration sigma_launch() const { return sigma_launch_; }
  Duration sigma_rendezvous() const { return sigma_rendezvous_; }

  /// Same matrices and drone-eligible set with different run parameters.
  Instance with_parameters(std::optional<Duration> endurance, Duration sigma_launch,
                           Duration sigma_rendezvous) const;

  /// Every duration (matrices, sigmas, endurance) multiplied by `factor` > 0.
  Instance scaled(Duration factor) const;

 private:
  int n_ = 0;
  TimeMatrix truck_;
  TimeMatrix drone_;
  std::vector<Node> eligible_;
  std::vector<bool> eligible_mask_;
  std::optional<Duration> endurance_;
  Duration sigma_launch_ = 0.0;
  Duration sigma_rendezvous_ = 0.0;
};

/// Optional problem components; the mandatory ones are always on.
struct ProblemSetting {
  bool loops_allowed = false;
  bool launch_rendezvous_times = true;
  bool depot_launch_time = false;
  bool battery_limited = true;
  bool landing_allowed = true;

  /// Preset 1..9 of the benchmark table, already normalized.
  static ProblemSetting from_id(int id);

  /// Irrelevant flags forced to their canonical value.
  ProblemSetting normalized() const;

  bool operator==(const ProblemSetting&) const = default;
};

inline ProblemSetting setting_from_id(int id) { return ProblemSetting::from_id(id); }

std::string describe(const ProblemSetting& setting);

/// Run-time constants after applying the setting's flags to the instance.
struct EffectiveParameters {
  Duration sigma_launch = 0.0;
  Duration sigma_rendezvous = 0.0;
  bool depot_launch_time = false;
  std::optional<Duration> endurance;  // empty: battery unlimited
  bool hover = false;                 // waiting for the truck drains the battery

  EffectiveParameters(const Instance& instance, const ProblemSetting& setting);

  /// Launch preparation charged when the drone leaves `launch_node`.
  Duration launch_charge(Node launch_node) const {
    return (launch_node == 0 && !depot_launch_time) ? 0.0 : sigma_launch;
  }
};

/// Drone mission <launch, customer, rendezvous>; a loop has launch == rendezvous.
struct Sortie {
  Node launch = 0;
  Node customer = 0;
  Node rendezvous = 0;

  bool is_loop() const { return launch == rendezvous; }

  auto operator<=>(const Sortie&) const = default;
};

std::string to_string(const Sortie& s);

/// Drone flight time of a sortie. A loop at the end depot leaves from the
/// start-depot row, since row n+1 of the matrices is unused.
Duration flight_time(const Instance& instance, const Sortie& s);

/// The set F of admissible sorties, in lexicographic order.
class SortieCatalog {
 public:
  SortieCatalog(int node_count, std::vector<Sortie> sorties);

  std::size_t size() const { return sorties_.size(); }
  bool empty() const { return sorties_.empty(); }
  bool contains(const Sortie& s) const;
  bool contains(Node i, Node j, Node k) const { return contains(Sortie{i, j, k}); }

  const std::vector<Sortie>& sorties() const { return sorties_; }
  auto begin() const { return sorties_.begin(); }
  auto end() const { return sorties_.end(); }

 private:
  std::size_t key(Node i, Node j, Node k) const;

  int node_count_ = 0;
  std::vector<Sortie> sorties_;
  std::vector<bool> present_;
};

SortieCatalog build_sortie_catalog(const Instance& instance, const ProblemSetting& setting);

}  // namespace tspd
