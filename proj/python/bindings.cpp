#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tspd/dp_solver.hpp"
#include "tspd/io_bench.hpp"
#include "tspd/milp.hpp"

namespace py = pybind11;
using namespace tspd;

namespace {

TimeMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  const int side = static_cast<int>(rows.size());
  std::vector<Duration> data;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != side) throw InvalidInstance("matrix must be square");
    data.insert(data.end(), r.begin(), r.end());
  }
  return TimeMatrix(side, std::move(data));
}

std::vector<std::vector<double>> rows_from_matrix(const TimeMatrix& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.side()));
  for (Node i = 0; i < m.side(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

ProblemSetting as_setting(const py::object& setting) {
  if (py::isinstance<py::int_>(setting)) return setting_from_id(setting.cast<int>());
  return setting.cast<ProblemSetting>();
}

}  // namespace

PYBIND11_MODULE(_tspd, m) {
  m.doc() = "Exact truck-and-drone delivery: settings, evaluation, DP solver, MILP export";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidSetting>(m, "InvalidSetting", base.ptr());
  py::register_exception<InvalidInstance>(m, "InvalidInstance", base.ptr());
  py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", base.ptr());
  py::register_exception<NoSolution>(m, "NoSolution", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const std::vector<std::vector<double>>& truck,
                       const std::vector<std::vector<double>>& drone,
                       std::optional<std::vector<Node>> drone_eligible, std::optional<Duration> endurance,
                       Duration sigma_launch, Duration sigma_rendezvous) {
             TimeMatrix t = matrix_from_rows(truck);
             std::vector<Node> eligible;
             if (drone_eligible) {
               eligible = *drone_eligible;
             } else {
               for (Node c = 1; c <= t.side() - 2; ++c) eligible.push_back(c);
             }
             return Instance(std::move(t), matrix_from_rows(drone), std::move(eligible), endurance,
                             sigma_launch, sigma_rendezvous);
           }),
           py::arg("truck"), py::arg("drone"), py::arg("drone_eligible") = py::none(),
           py::arg("endurance") = 20.0, py::arg("sigma_launch") = 1.0, py::arg("sigma_rendezvous") = 1.0)
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("truck", [](const Instance& i) { return rows_from_matrix(i.truck()); })
      .def_property_readonly("drone", [](const Instance& i) { return rows_from_matrix(i.drone()); })
      .def_property_readonly("drone_eligible", &Instance::drone_eligible)
      .def_property_readonly("endurance", &Instance::endurance)
      .def_property_readonly("sigma_launch", &Instance::sigma_launch)
      .def_property_readonly("sigma_rendezvous", &Instance::sigma_rendezvous)
      .def("with_parameters", &Instance::with_parameters, py::arg("endurance"),
           py::arg("sigma_launch"), py::arg("sigma_rendezvous"));

  py::class_<ProblemSetting>(m, "ProblemSetting")
      .def(py::init([](bool loops, bool times, bool depot, bool battery, bool landing) {
             return ProblemSetting{loops, times, depot, battery, landing}.normalized();
           }),
           py::arg("loops_allowed") = false, py::arg("launch_rendezvous_times") = true,
           py::arg("depot_launch_time") = false, py::arg("battery_limited") = true,
           py::arg("landing_allowed") = true)
      .def_static("from_id", &ProblemSetting::from_id)
      .def_readonly("loops_allowed", &ProblemSetting::loops_allowed)
      .def_readonly("launch_rendezvous_times", &ProblemSetting::launch_rendezvous_times)
      .def_readonly("depot_launch_time", &ProblemSetting::depot_launch_time)
      .def_readonly("battery_limited", &ProblemSetting::battery_limited)
      .def_readonly("landing_allowed", &ProblemSetting::landing_allowed)
      .def("__eq__", [](const ProblemSetting& a, const ProblemSetting& b) { return a == b; })
      .def("__repr__", [](const ProblemSetting& s) { return "ProblemSetting(" + describe(s) + ")"; });

  py::class_<Solution>(m, "Solution")
      .def(py::init([](std::vector<Node> route, const std::vector<std::tuple<Node, Node, Node>>& sorties) {
             Solution s{std::move(route), {}};
             for (auto [i, j, k] : sorties) s.sorties.push_back({i, j, k});
             return s;
           }),
           py::arg("route"), py::arg("sorties") = std::vector<std::tuple<Node, Node, Node>>{})
      .def_readonly("route", &Solution::route)
      .def_property_readonly("sorties",
                             [](const Solution& s) {
                               std::vector<std::tuple<Node, Node, Node>> out;
                               for (const auto& x : s.sorties) out.emplace_back(x.launch, x.customer, x.rendezvous);
                               return out;
                             })
      .def("__eq__", [](const Solution& a, const Solution& b) { return a == b; })
      .def("__str__", &bench::format_solution_string)
      .def("__repr__", [](const Solution& s) { return "Solution('" + bench::format_solution_string(s) + "')"; });

  m.def("setting_from_id", &setting_from_id, py::arg("id"));

  m.def(
      "solve",
      [](const Instance& inst, const py::object& setting) {
        const auto r = solve_exact(inst, as_setting(setting));
        return py::make_tuple(r.optimum, r.solution);
      },
      py::arg("instance"), py::arg("setting"), "Exact optimum and solution by dynamic programming.");

  m.def(
      "brute_force", [](const Instance& inst, const py::object& setting) { return brute_force(inst, as_setting(setting)); },
      py::arg("instance"), py::arg("setting"));

  m.def("truck_only_optimum", &truck_only_optimum, py::arg("instance"));

  m.def(
      "evaluate",
      [](const Instance& inst, const py::object& setting, const Solution& sol) {
        const auto ev = evaluate(inst, as_setting(setting), sol);
        py::dict out;
        out["feasible"] = ev.feasible();
        out["makespan"] = ev.feasible() ? py::cast(ev.makespan()) : py::none();
        py::list violations;
        for (const auto& v : ev.violations) violations.append(py::make_tuple(to_string(v.kind), v.detail));
        out["violations"] = violations;
        return out;
      },
      py::arg("instance"), py::arg("setting"), py::arg("solution"),
      "Feasibility check; returns feasible, makespan and a list of (kind, detail).");

  m.def(
      "export_lp",
      [](const Instance& inst, const py::object& setting) { return milp::emit_lp(milp::build_model(inst, as_setting(setting))); },
      py::arg("instance"), py::arg("setting"));

  m.def(
      "solve_milp",
      [](const Instance& inst, const py::object& setting, const std::string& command, int max_iterations) {
        milp::CutLoopOptions options;
        options.max_iterations = max_iterations;
        const auto r = milp::solve_with_cuts(inst, as_setting(setting), command, options);
        return py::make_tuple(r.optimum, r.solution, r.iterations, r.cuts);
      },
      py::arg("instance"), py::arg("setting"), py::arg("solver_command"), py::arg("max_iterations") = 10000,
      "Lazy-cut loop; solver_command is a shell template with {lp_path} and {sol_path}.");

  m.def("parse_solution", &bench::parse_solution_string, py::arg("text"));
  m.def("format_solution", &bench::format_solution_string, py::arg("solution"));
  m.def("format_duration", &bench::format_duration, py::arg("value"));

  m.def(
      "read_instance",
      [](const std::filesystem::path& dir, std::optional<Duration> endurance, Duration sigma) {
        return bench::read_instance(dir, bench::RunParameters{endurance, sigma, sigma});
      },
      py::arg("directory"), py::arg("endurance") = 20.0, py::arg("sigma") = 1.0);
  m.def("write_instance", &bench::write_instance, py::arg("directory"), py::arg("instance"));
  m.def(
      "generate_instance",
      [](std::uint64_t seed, int n, double side, std::optional<Duration> endurance, Duration sigma) {
        return bench::generate_b2_instance(seed, n, side, bench::RunParameters{endurance, sigma, sigma});
      },
      py::arg("seed"), py::arg("n") = 9, py::arg("side") = 50.0, py::arg("endurance") = 20.0,
      py::arg("sigma") = 1.0);

  m.def(
      "run_benchmark",
      [](const std::filesystem::path& directory, std::vector<int> settings, std::optional<Duration> endurance,
         Duration sigma, std::optional<std::filesystem::path> reference, int jobs) {
        bench::BenchmarkOptions options;
        options.directory = directory;
        options.settings = std::move(settings);
        options.params = bench::RunParameters{endurance, sigma, sigma};
        options.reference = std::move(reference);
        options.jobs = jobs;
        bench::BenchmarkReport report;
        {
          py::gil_scoped_release release;
          report = bench::run_benchmark(options);
        }
        py::list rows;
        for (const auto& r : report.rows) {
          py::dict d;
          d["instance"] = r.instance;
          d["setting"] = r.setting;
          d["optimum"] = r.ours;
          d["solution"] = r.our_solution;
          d["validated"] = r.ours_validated;
          d["reference"] = r.reference;
          d["gap"] = r.gap;
          d["match"] = r.match;
          d["reference_reevaluates"] = r.reference_reevaluates;
          d["error"] = r.error;
          rows.append(d);
        }
        return rows;
      },
      py::arg("directory"), py::arg("settings") = std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9},
      py::arg("endurance") = 20.0, py::arg("sigma") = 1.0, py::arg("reference") = py::none(),
      py::arg("jobs") = 1);
}
