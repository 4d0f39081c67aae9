#include "tspd/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tspd {

TimeMatrix::TimeMatrix(int side, Duration fill)
    : side_(side), data_(static_cast<std::size_t>(side) * side, fill) {
  if (side < 0) throw InvalidInstance("matrix side must be non-negative");
}

TimeMatrix::TimeMatrix(int side, std::vector<Duration> row_major)
    : side_(side), data_(std::move(row_major)) {
  if (side < 0 || data_.size() != static_cast<std::size_t>(side) * side) {
    throw InvalidInstance("matrix data does not match side " + std::to_string(side));
  }
}

TimeMatrix TimeMatrix::scaled(Duration factor) const {
  TimeMatrix out = *this;
  for (auto& v : out.data_) v *= factor;
  return out;
}

namespace {

void check_matrix(const TimeMatrix& m, const char* label) {
  for (Node i = 0; i < m.side(); ++i) {
    for (Node j = 0; j < m.side(); ++j) {
      const Duration v = m(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << label << " entry (" << i << "," << j << ") is not a non-negative duration: " << v;
        throw InvalidInstance(msg.str());
      }
    }
  }
}

}  // namespace

Instance::Instance(TimeMatrix truck, TimeMatrix drone, std::vector<Node> drone_eligible,
                   std::optional<Duration> endurance, Duration sigma_launch,
                   Duration sigma_rendezvous)
    : truck_(std::move(truck)),
      drone_(std::move(drone)),
      eligible_(std::move(drone_eligible)),
      endurance_(endurance),
      sigma_launch_(sigma_launch),
      sigma_rendezvous_(sigma_rendezvous) {
  if (truck_.side() != drone_.side()) {
    throw InvalidInstance("truck matrix is " + std::to_string(truck_.side()) +
                          " wide but drone matrix is " + std::to_string(drone_.side()));
  }
  if (truck_.side() < 3) throw InvalidInstance("an instance needs at least one customer");
  n_ = truck_.side() - 2;
  check_matrix(truck_, "truck");
  check_matrix(drone_, "drone");

  std::sort(eligible_.begin(), eligible_.end());
  eligible_.erase(std::unique(eligible_.begin(), eligible_.end()), eligible_.end());
  eligible_mask_.assign(static_cast<std::size_t>(n_) + 2, false);
  for (Node v : eligible_) {
    if (v < 1 || v > n_) {
      throw InvalidInstance("drone-eligible customer " + std::to_string(v) + " outside 1.." +
                            std::to_string(n_));
    }
    eligible_mask_[v] = true;
  }

  if (endurance_ && !(std::isfinite(*endurance_) && *endurance_ > 0.0)) {
    throw InvalidInstance("endurance must be positive");
  }
  if (!(sigma_launch_ >= 0.0) || !(sigma_rendezvous_ >= 0.0) || !std::isfinite(sigma_launch_) ||
      !std::isfinite(sigma_rendezvous_)) {
    throw InvalidInstance("launch and rendezvous times must be non-negative");
  }
}

Instance Instance::with_parameters(std::optional<Duration> endurance, Duration sigma_launch,
                                   Duration sigma_rendezvous) const {
  return Instance(truck_, drone_, eligible_, endurance, sigma_launch, sigma_rendezvous);
}

Instance Instance::scaled(Duration factor) const {
  std::optional<Duration> e;
  if (endurance_) e = *endurance_ * factor;
  return Instance(truck_.scaled(factor), drone_.scaled(factor), eligible_, e,
                  sigma_launch_ * factor, sigma_rendezvous_ * factor);
}

ProblemSetting ProblemSetting::from_id(int id) {
  // Columns of the benchmark settings table:
  // loops, launch/rendezvous times, depot launch time, battery, landing.
  static constexpr bool kTable[9][5] = {
      {false, true, false, true, true},   // 1
      {false, true, false, true, false},  // 2
      {false, true, true, true, true},    // 3
      {false, true, true, true, false},   // 4
      {true, false, false, true, true},   // 5
      {true, false, false, true, false},  // 6
      {true, true, false, true, true},    // 7
      {true, true, true, true, false},    // 8
      {true, false, false, false, true},  // 9
  };
  if (id < 1 || id > 9) {
    throw InvalidSetting("problem setting id must be in 1..9, got " + std::to_string(id));
  }
  const auto& row = kTable[id - 1];
  ProblemSetting s{row[0], row[1], row[2], row[3], row[4]};
  return s.normalized();
}

ProblemSetting ProblemSetting::normalized() const {
  ProblemSetting s = *this;
  if (!s.launch_rendezvous_times) s.depot_launch_time = false;
  if (!s.battery_limited) s.landing_allowed = true;
  return s;
}

std::string describe(const ProblemSetting& setting) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  out << "loops=" << yn(setting.loops_allowed)
      << " launch_rendezvous_times=" << yn(setting.launch_rendezvous_times)
      << " depot_launch_time=" << yn(setting.depot_launch_time)
      << " battery=" << yn(setting.battery_limited)
      << " landing=" << yn(setting.landing_allowed);
  return out.str();
}

EffectiveParameters::EffectiveParameters(const Instance& instance, const ProblemSetting& raw) {
  const ProblemSetting setting = raw.normalized();
  if (setting.launch_rendezvous_times) {
    sigma_launch = instance.sigma_launch();
    sigma_rendezvous = instance.sigma_rendezvous();
    depot_launch_time = setting.depot_launch_time;
  }
  if (setting.battery_limited) {
    endurance = instance.endurance();
    hover = !setting.landing_allowed;
  }
}

std::string to_string(const Sortie& s) {
  return "(" + std::to_string(s.launch) + "," + std::to_string(s.customer) + "," +
         std::to_string(s.rendezvous) + ")";
}

Duration flight_time(const Instance& instance, const Sortie& s) {
  const Node out_from = s.launch == instance.end_depot() ? instance.start_depot() : s.launch;
  return instance.drone_time(out_from, s.customer) + instance.drone_time(s.customer, s.rendezvous);
}

SortieCatalog::SortieCatalog(int node_count, std::vector<Sortie> sorties)
    : node_count_(node_count), sorties_(std::move(sorties)) {
  std::sort(sorties_.begin(), sorties_.end());
  sorties_.erase(std::unique(sorties_.begin(), sorties_.end()), sorties_.end());
  present_.assign(static_cast<std::size_t>(node_count_) * node_count_ * node_count_, false);
  for (const auto& s : sorties_) present_[key(s.launch, s.customer, s.rendezvous)] = true;
}

std::size_t SortieCatalog::key(Node i, Node j, Node k) const {
  const auto m = static_cast<std::size_t>(node_count_);
  return (static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
         static_cast<std::size_t>(k);
}

bool SortieCatalog::contains(const Sortie& s) const {
  auto in_range = [&](Node v) { return v >= 0 && v < node_count_; };
  if (!in_range(s.launch) || !in_range(s.customer) || !in_range(s.rendezvous)) return false;
  return present_[key(s.launch, s.customer, s.rendezvous)];
}

SortieCatalog build_sortie_catalog(const Instance& instance, const ProblemSetting& raw) {
  const ProblemSetting setting = raw.normalized();
  const EffectiveParameters params(instance, setting);
  const Node last = instance.end_depot();

  std::vector<Sortie> out;
  for (Node j : instance.drone_eligible()) {
    for (Node i = 0; i <= instance.n(); ++i) {
      if (i == j) continue;
      for (Node k = 1; k <= last; ++k) {
        if (k == j) continue;
        if (i == k) continue;
        out.push_back({i, j, k});
      }
    }
    if (setting.loops_allowed) {
      for (Node v = 1; v <= last; ++v) {
        if (v != j) out.push_back({v, j, v});
      }
    }
  }

  if (params.endurance) {
    const Duration limit = *params.endurance + kTimeTolerance;
    std::erase_if(out, [&](const Sortie& s) {
      return flight_time(instance, s) + params.sigma_rendezvous > limit;
    });
  }
  return SortieCatalog(instance.node_count(), std::move(out));
}

}  // namespace tspd
