#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tspd/milp.hpp"

namespace tspd::milp {

namespace {

constexpr double kIntegrality = 1e-6;

void require_integral(const LinearModel& model, std::span<const double> values) {
  auto check = [&](int var) {
    const double v = values[var];
    if (std::abs(v - std::round(v)) > kIntegrality) {
      throw SolverError("candidate is not integral: " + model.variables[var].name + " = " +
                        std::to_string(v));
    }
  };
  for (const auto& [arc, var] : model.arc_var) check(var);
  for (const auto& [s, var] : model.sortie_var) check(var);
}

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  for (std::size_t at = text.find(from); at != std::string::npos; at = text.find(from, at + to.size())) {
    text.replace(at, from.size(), to);
  }
  return text;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::filesystem::path make_work_dir(const CutLoopOptions& options) {
  static std::atomic<int> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const auto base = options.work_dir.value_or(std::filesystem::temp_directory_path());
  auto dir = base / ("tspd-milp-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) +
                     "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

std::optional<CrossingCut> separate_crossing(const LinearModel& model,
                                             std::span<const double> values,
                                             bool loops_allowed) {
  if (values.size() != model.variables.size()) {
    throw SolverError("candidate has " + std::to_string(values.size()) + " values, model has " +
                      std::to_string(model.variables.size()) + " variables");
  }
  require_integral(model, values);
  const Solution candidate = solution_from_assignment(model, values);
  const auto crossing = detect_crossing(candidate.route, candidate.sorties);
  if (!crossing) return std::nullopt;

  const Node start = crossing->first.launch;
  const Node end = crossing->second.launch;
  CrossingCut cut;
  bool inside = false;
  for (Node v : candidate.route) {
    if (v == start) inside = true;
    if (inside) cut.path.push_back(v);
    if (inside && v == end) break;
  }
  auto on_path = [&](Node v) {
    return std::find(cut.path.begin(), cut.path.end(), v) != cut.path.end();
  };

  const double factor = loops_allowed ? static_cast<double>(model.n) : 1.0;
  std::vector<Term> terms;
  for (const auto& [s, var] : model.sortie_var) {
    if (s.launch == end) {
      cut.launched_at_end.push_back(s);
      terms.push_back({var, 1.0});
    }
  }
  for (std::size_t h = 0; h + 1 < cut.path.size(); ++h) {
    terms.push_back({model.arc_var.at({cut.path[h], cut.path[h + 1]}), factor});
  }
  if (start != end) {
    for (const auto& [s, var] : model.sortie_var) {
      if (s.launch == start && !on_path(s.rendezvous)) {
        cut.open_at_start.push_back(s);
        terms.push_back({var, factor});
      }
    }
  }
  cut.row = Constraint{"cross", std::move(terms), Sense::kLessEqual,
                       factor * static_cast<double>(cut.path.size())};
  return cut;
}

std::vector<double> read_solution_values(const LinearModel& model, const std::string& text) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    index[model.variables[i].name] = static_cast<int>(i);
  }
  std::vector<double> values(model.variables.size(), 0.0);
  std::istringstream in(text);
  std::string line;
  int assigned = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string name, raw;
    if (!(fields >> name >> raw)) continue;
    auto it = index.find(name);
    if (it == index.end()) continue;
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0') {
      throw SolverError("unparsable solver value for " + name + ": '" + raw + "'");
    }
    values[it->second] = v;
    ++assigned;
  }
  if (assigned == 0) throw SolverError("solver output assigns no model variable");
  return values;
}

CutLoopResult solve_with_cuts(const Instance& instance, const ProblemSetting& raw_setting,
                              const std::string& solver_command, const CutLoopOptions& options) {
  const ProblemSetting setting = raw_setting.normalized();
  LinearModel model = build_model(instance, setting);
  const auto dir = make_work_dir(options);
  const auto lp_path = dir / "model.lp";
  const auto sol_path = dir / "model.sol";

  CutLoopResult result;
  try {
    for (int iter = 1;; ++iter) {
      if (iter > options.max_iterations) {
        throw SolverError("cut loop exceeded " + std::to_string(options.max_iterations) +
                          " iterations");
      }
      result.iterations = iter;
      {
        std::ofstream lp(lp_path);
        lp << emit_lp(model);
        if (!lp) throw IoError("cannot write " + lp_path.string());
      }
      std::filesystem::remove(sol_path);
      std::string command = replace_all(solver_command, "{lp_path}", shell_quote(lp_path.string()));
      command = replace_all(command, "{sol_path}", shell_quote(sol_path.string()));
      const int status = std::system(command.c_str());
      if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        throw SolverError("solver command failed (status " + std::to_string(status) +
                          "): " + command);
      }
      std::ifstream sol(sol_path);
      if (!sol) throw SolverError("solver produced no solution file at " + sol_path.string());
      std::stringstream text;
      text << sol.rdbuf();
      const auto values = read_solution_values(model, text.str());

      auto cut = separate_crossing(model, values, setting.loops_allowed);
      if (cut) {
        ++result.cuts;
        model.add_constraint("cross_" + std::to_string(result.cuts), cut->row.terms, cut->row.sense,
                             cut->row.rhs);
        continue;
      }

      result.solver_objective = objective_value(model, values);
      result.solution = solution_from_assignment(model, values);
      const Evaluation ev = evaluate(instance, setting, result.solution);
      if (!ev.feasible()) {
        std::string why;
        for (const auto& v : ev.violations) why += std::string("; ") + to_string(v.kind) + ": " + v.detail;
        throw SolverError("solver incumbent fails validation" + why);
      }
      result.optimum = ev.makespan();
      break;
    }
  } catch (...) {
    if (!options.keep_files) std::filesystem::remove_all(dir);
    throw;
  }
  if (!options.keep_files) std::filesystem::remove_all(dir);
  return result;
}

}  // namespace tspd::milp
