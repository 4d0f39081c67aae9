#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tspd/core.hpp"
#include "tspd/timing.hpp"

namespace tspd::milp {

enum class VarType { kBinary, kContinuous };

struct Variable {
  std::string name;
  VarType type = VarType::kContinuous;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

/// Arc-based big-M formulation of one instance under one setting.
///
/// Variables: x_i_k per truck arc, y_i_j_k per catalog sortie, and
/// continuous tT_i, tD_i (ready times) and w_k (truck waits). Crossing
/// constraints are not part of the static model; they are appended as cuts.
struct LinearModel {
  int n = 0;
  bool loops_allowed = false;
  double big_m = 0.0;

  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;
  double objective_constant = 0.0;

  std::map<std::pair<Node, Node>, int> arc_var;
  std::map<Sortie, int> sortie_var;
  std::vector<int> truck_time_var;  // by node
  std::vector<int> drone_time_var;  // by node
  std::vector<int> wait_var;        // by node, -1 for node 0

  int add_variable(std::string name, VarType type);
  /// Merges repeated variables and drops zero coefficients.
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);

  std::size_t count(VarType type) const;
  std::size_t count_family(const std::string& prefix) const;
  std::optional<int> find_variable(const std::string& name) const;
};

/// Semantic inventory of the constraint families the builder emits.
struct FamilyInfo {
  std::string family;
  std::string meaning;
};
const std::vector<FamilyInfo>& constraint_families();

LinearModel build_model(const Instance& instance, const ProblemSetting& setting);

/// Deterministic CPLEX-LP text (objective, rows, bounds, binaries).
std::string emit_lp(const LinearModel& model);

/// Value of the objective under an assignment indexed by variable id.
double objective_value(const LinearModel& model, std::span<const double> values);

/// Names of rows violated by more than `tolerance`.
std::vector<std::string> violated_rows(const LinearModel& model, std::span<const double> values,
                                       double tolerance = 1e-7);

/// Model variables set to realize a feasible solution.
std::vector<double> assignment_from_solution(const LinearModel& model, const Instance& instance,
                                             const ProblemSetting& setting,
                                             const Solution& solution);

/// Truck route and chronologically ordered sorties read off integral x and y.
Solution solution_from_assignment(const LinearModel& model, std::span<const double> values);

/// A violated no-crossing inequality on the truck path from i to l.
struct CrossingCut {
  std::vector<Node> path;                 // i .. l along the candidate route
  std::vector<Sortie> launched_at_end;    // every catalog sortie leaving l
  std::vector<Sortie> open_at_start;      // catalog sorties leaving i that return off the path
  Constraint row;
};

/// Integral candidate -> cut, or nothing when no two active sorties cross.
std::optional<CrossingCut> separate_crossing(const LinearModel& model,
                                             std::span<const double> values,
                                             bool loops_allowed);

/// Parses "name value" lines written by the external solver wrapper.
std::vector<double> read_solution_values(const LinearModel& model, const std::string& text);

struct CutLoopOptions {
  int max_iterations = 10000;
  bool keep_files = false;
  std::optional<std::filesystem::path> work_dir;
};

struct CutLoopResult {
  Duration optimum = 0.0;
  Solution solution;
  int iterations = 0;
  int cuts = 0;
  double solver_objective = 0.0;
};

/// Emit, solve externally, separate crossings, repeat. `solver_command`
/// is a shell template with {lp_path} and {sol_path} placeholders.
CutLoopResult solve_with_cuts(const Instance& instance, const ProblemSetting& setting,
                              const std::string& solver_command,
                              const CutLoopOptions& options = {});

}  // namespace tspd::milp
