// Command-line front end: solve, validate, export-lp, solve-milp, bench, gen.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tspd/dp_solver.hpp"
#include "tspd/io_bench.hpp"
#include "tspd/milp.hpp"

namespace {

using tspd::bench::format_duration;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string instance;
  std::string settings = "all";
  std::string endurance = "20";
  double sigma = 1.0;
  std::string solution;
  std::string out;
  std::string solver_command;
  int max_iterations = 10000;
  bool keep_files = false;
  std::string dir;
  std::string reference;
  int jobs = 1;
  int sample = 0;
  std::uint64_t seed = 0;
  int n = 9;
  double side = 50.0;
  int verbosity = 0;
};

std::vector<int> parse_settings(const std::string& text) {
  if (text == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int id = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      tspd::ProblemSetting::from_id(id);
      out.push_back(id);
    } catch (const tspd::InvalidSetting&) {
      throw;
    } catch (const std::exception&) {
      throw tspd::InvalidSetting("bad setting id '" + item + "'");
    }
  }
  if (out.empty()) throw tspd::InvalidSetting("no setting given");
  return out;
}

tspd::bench::RunParameters run_parameters(const RunConfig& cfg) {
  tspd::bench::RunParameters params;
  if (cfg.endurance == "unlimited") {
    params.endurance.reset();
  } else {
    char* end = nullptr;
    const double e = std::strtod(cfg.endurance.c_str(), &end);
    if (end == cfg.endurance.c_str() || *end != '\0' || !(e > 0.0)) {
      throw tspd::InvalidInstance("endurance must be a positive number or 'unlimited'");
    }
    params.endurance = e;
  }
  if (!(cfg.sigma >= 0.0)) throw tspd::InvalidInstance("sigma must be non-negative");
  params.sigma_launch = cfg.sigma;
  params.sigma_rendezvous = cfg.sigma;
  return params;
}

int single_setting(const RunConfig& cfg) {
  const auto ids = parse_settings(cfg.settings);
  if (ids.size() != 1) throw tspd::InvalidSetting("this command takes exactly one --setting");
  return ids.front();
}

int cmd_solve(const RunConfig& cfg) {
  const auto instance = tspd::bench::read_instance(cfg.instance, run_parameters(cfg));
  const auto ids = parse_settings(cfg.settings);
  for (int id : ids) {
    const auto result = tspd::solve_exact(instance, tspd::ProblemSetting::from_id(id));
    if (ids.size() > 1) std::cout << "Pset" << id << "  ";
    std::cout << format_duration(result.optimum) << "  "
              << tspd::bench::format_solution_string(result.solution) << "\n";
  }
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
  const auto instance = tspd::bench::read_instance(cfg.instance, run_parameters(cfg));
  const auto setting = tspd::ProblemSetting::from_id(single_setting(cfg));
  const auto solution = tspd::bench::parse_solution_string(cfg.solution);
  const auto ev = tspd::evaluate(instance, setting, solution);
  if (ev.feasible()) {
    std::cout << "feasible  " << format_duration(ev.makespan()) << "\n";
    if (cfg.verbosity > 0) {
      const auto& tl = *ev.timeline;
      for (std::size_t v = 0; v < tl.truck_ready.size(); ++v) {
        std::cout << "  node " << v << " truck "
                  << (tl.truck_ready[v] ? format_duration(*tl.truck_ready[v]) : "-") << " drone "
                  << (tl.drone_ready[v] ? format_duration(*tl.drone_ready[v]) : "-") << " wait "
                  << format_duration(tl.waits[v]) << "\n";
      }
    }
    return kExitOk;
  }
  std::cout << "infeasible\n";
  for (const auto& v : ev.violations) {
    std::cout << "  " << tspd::to_string(v.kind) << ": " << v.detail << "\n";
  }
  return kExitInfeasible;
}

int cmd_export_lp(const RunConfig& cfg) {
  const auto instance = tspd::bench::read_instance(cfg.instance, run_parameters(cfg));
  const auto model = tspd::milp::build_model(instance, tspd::ProblemSetting::from_id(single_setting(cfg)));
  const std::string text = tspd::milp::emit_lp(model);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    out << text;
    if (!out) throw tspd::IoError("cannot write " + cfg.out);
  }
  return kExitOk;
}

int cmd_solve_milp(const RunConfig& cfg) {
  const auto instance = tspd::bench::read_instance(cfg.instance, run_parameters(cfg));
  tspd::milp::CutLoopOptions options;
  options.max_iterations = cfg.max_iterations;
  options.keep_files = cfg.keep_files;
  const auto ids = parse_settings(cfg.settings);
  for (int id : ids) {
    const auto result = tspd::milp::solve_with_cuts(instance, tspd::ProblemSetting::from_id(id),
                                                    cfg.solver_command, options);
    if (ids.size() > 1) std::cout << "Pset" << id << "  ";
    std::cout << format_duration(result.optimum) << "  "
              << tspd::bench::format_solution_string(result.solution);
    if (cfg.verbosity > 0) std::cout << "  (" << result.iterations << " solves, " << result.cuts << " cuts)";
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg) {
  tspd::bench::BenchmarkOptions options;
  options.directory = cfg.dir;
  options.settings = parse_settings(cfg.settings);
  options.params = run_parameters(cfg);
  if (!cfg.reference.empty()) options.reference = cfg.reference;
  options.jobs = cfg.jobs;
  if (cfg.sample > 0) options.sample = cfg.sample;

  const auto report = tspd::bench::run_benchmark(options);
  if (!cfg.out.empty()) tspd::bench::write_report(report, cfg.out);

  std::cout << "rows " << report.rows.size() << "  solved " << report.solved() << "  errors "
            << report.errors() << "\n";
  if (options.reference) {
    std::cout << "compared " << report.compared() << "  matched " << report.matched()
              << "  reference strings re-evaluated " << report.references_valid() << "/"
              << report.references_checked() << "\n";
  }
  for (const auto* row : report.no_sortie_rows()) {
    std::cout << "no-sortie optimum: " << row->instance << " Pset" << row->setting << "\n";
  }
  if (cfg.verbosity > 0) std::cout << tspd::bench::format_comparison_csv(report);

  const bool ok = report.errors() == 0 && report.matched() == report.compared() &&
                  report.references_valid() == report.references_checked();
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_gen(const RunConfig& cfg) {
  const auto instance = tspd::bench::generate_b2_instance(cfg.seed, cfg.n, cfg.side);
  tspd::bench::write_instance(cfg.out, instance);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact truck-and-drone delivery toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_flag("-v,--verbose", cfg.verbosity, "More output");

  auto add_run_options = [&](CLI::App* sub, bool multi_setting) {
    sub->add_option("--setting,--settings", cfg.settings,
                    multi_setting ? "Setting ids 1..9, comma-separated, or 'all'" : "Setting id 1..9")
        ->capture_default_str();
    sub->add_option("--endurance", cfg.endurance, "Drone endurance or 'unlimited'")->capture_default_str();
    sub->add_option("--sigma", cfg.sigma, "Launch and rendezvous time")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Exact optimum by dynamic programming");
  solve->add_option("--instance", cfg.instance, "Instance folder")->required();
  add_run_options(solve, true);

  auto* validate = app.add_subcommand("validate", "Check a solution string and report its makespan");
  validate->add_option("--instance", cfg.instance, "Instance folder")->required();
  validate->add_option("--solution", cfg.solution, "Solution string, e.g. \"0 1 3 (0,2,3)\"")->required();
  add_run_options(validate, false);

  auto* export_lp = app.add_subcommand("export-lp", "Write the MILP in LP format");
  export_lp->add_option("--instance", cfg.instance, "Instance folder")->required();
  export_lp->add_option("--out", cfg.out, "Output file ('-' for stdout)");
  add_run_options(export_lp, false);

  auto* solve_milp = app.add_subcommand("solve-milp", "Lazy-cut loop around an external MIP solver");
  solve_milp->add_option("--instance", cfg.instance, "Instance folder")->required();
  solve_milp->add_option("--solver-command", cfg.solver_command,
                         "Shell template with {lp_path} and {sol_path}")
      ->required();
  solve_milp->add_option("--max-iterations", cfg.max_iterations)->capture_default_str();
  solve_milp->add_flag("--keep-files", cfg.keep_files, "Keep LP and solution files");
  add_run_options(solve_milp, true);

  auto* bench = app.add_subcommand("bench", "Solve every instance folder and compare with references");
  bench->add_option("--dir", cfg.dir, "Benchmark folder")->required();
  bench->add_option("--reference", cfg.reference, "DMN-Bx-ee-solutions.csv");
  bench->add_option("--out", cfg.out, "Report folder");
  bench->add_option("--jobs", cfg.jobs, "Parallel workers")->capture_default_str();
  bench->add_option("--sample", cfg.sample, "Only the first N instances");
  add_run_options(bench, true);

  auto* gen = app.add_subcommand("gen", "Generate a random instance in the DMN-B2 style");
  gen->add_option("--seed", cfg.seed, "Random seed")->required();
  gen->add_option("--n", cfg.n, "Number of customers")->capture_default_str();
  gen->add_option("--side", cfg.side, "Square side")->capture_default_str();
  gen->add_option("--out", cfg.out, "Output folder")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*validate) return cmd_validate(cfg);
    if (*export_lp) return cmd_export_lp(cfg);
    if (*solve_milp) return cmd_solve_milp(cfg);
    if (*bench) return cmd_bench(cfg);
    if (*gen) return cmd_gen(cfg);
  } catch (const tspd::NoSolution& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
