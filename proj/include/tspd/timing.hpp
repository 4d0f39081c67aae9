#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tspd/core.hpp"

namespace tspd {

/// Truck route from 0 to n+1 plus drone sorties in chronological launch order.
struct Solution {
  std::vector<Node> route;
  std::vector<Sortie> sorties;

  bool operator==(const Solution&) const = default;
};

/// Ready times per node id; entries for nodes a vehicle never visits are empty.
struct Timeline {
  std::vector<std::optional<Duration>> truck_ready;
  std::vector<std::optional<Duration>> drone_ready;
  std::vector<Duration> waits;  // truck waiting for the drone at each node
  Duration makespan = 0.0;
};

struct Violation {
  enum class Kind {
    kCovering,
    kEligibility,
    kRouteShape,
    kCrossing,
    kBackwardSortie,
    kEndurance,
    kLoopPlacement,
    kSync,
  };

  Kind kind;
  std::string detail;
};

const char* to_string(Violation::Kind kind);

/// Either a timeline (feasible) or the full list of violations.
struct Evaluation {
  std::optional<Timeline> timeline;
  std::vector<Violation> violations;

  bool feasible() const { return timeline.has_value(); }
  Duration makespan() const { return timeline.value().makespan; }
  bool has(Violation::Kind kind) const;
};

/// Time from the truck leaving a launch node to truck and drone being ready
/// together at the rendezvous. A sortie-free leg is pure truck travel.
Duration leg_elapsed(Duration truck_path_time, std::optional<Duration> flight,
                     bool at_depot_start, const ProblemSetting& setting,
                     const Instance& instance);

/// Stationary truck time spent on a loop <v, j, v>.
Duration loop_elapsed(const Instance& instance, const ProblemSetting& setting, const Sortie& loop);

using CrossingPair = std::pair<Sortie, Sortie>;

/// First pair (by launch position) of sorties that a single drone cannot
/// fly: a sortie launching strictly inside another's launch..rendezvous
/// stretch, or two non-loop sorties launching from the same stop. Loops at
/// the endpoints of a stretch are fine. Sorties not anchored on the route
/// are ignored.
std::optional<CrossingPair> detect_crossing(const std::vector<Node>& route,
                                            const std::vector<Sortie>& sorties);

Evaluation evaluate(const Instance& instance, const ProblemSetting& setting,
                    const Solution& solution);

}  // namespace tspd
