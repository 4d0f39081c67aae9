#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <map>
#include <thread>

#include "csv.hpp"
#include "tspd/dp_solver.hpp"
#include "tspd/io_bench.hpp"

namespace tspd::bench {

namespace fs = std::filesystem;

std::size_t BenchmarkReport::solved() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.ours.has_value(); }));
}

std::size_t BenchmarkReport::compared() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.gap.has_value(); }));
}

std::size_t BenchmarkReport::matched() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.match; }));
}

std::size_t BenchmarkReport::references_checked() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const auto& r) { return r.reference_reevaluates.has_value(); }));
}

std::size_t BenchmarkReport::references_valid() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) {
    return r.reference_reevaluates.value_or(false);
  }));
}

std::size_t BenchmarkReport::errors() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); }));
}

std::vector<const BenchmarkRow*> BenchmarkReport::no_sortie_rows() const {
  std::vector<const BenchmarkRow*> out;
  for (const auto& r : rows) {
    const bool flag = r.reference ? r.reference_no_sortie : r.our_no_sortie;
    if (flag) out.push_back(&r);
  }
  return out;
}

namespace {

// "P2" < "P10": digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      const auto ta = na.substr(std::min(na.find_first_not_of('0'), na.size()));
      const auto tb = nb.substr(std::min(nb.find_first_not_of('0'), nb.size()));
      if (ta.size() != tb.size()) return ta.size() < tb.size();
      if (ta != tb) return ta < tb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

std::vector<BenchmarkRow> run_instance(const fs::path& dir, const BenchmarkOptions& options,
                                       const SolutionRecord* reference) {
  const std::string name = dir.filename().string();
  std::vector<BenchmarkRow> rows;
  std::optional<Instance> instance;
  std::string load_error;
  try {
    instance = read_instance(dir, options.params);
  } catch (const std::exception& e) {
    load_error = e.what();
  }

  for (int id : options.settings) {
    BenchmarkRow row;
    row.instance = name;
    row.setting = id;
    if (!instance) {
      row.error = load_error;
      rows.push_back(std::move(row));
      continue;
    }
    const ProblemSetting setting = ProblemSetting::from_id(id);
    try {
      const ExactResult exact = solve_exact(*instance, setting);
      row.ours = exact.optimum;
      row.our_solution = format_solution_string(exact.solution);
      row.our_no_sortie = exact.solution.sorties.empty();
      const Evaluation ev = evaluate(*instance, setting, exact.solution);
      row.ours_validated = ev.feasible() && std::abs(ev.makespan() - exact.optimum) <= kTimeTolerance;
    } catch (const std::exception& e) {
      row.error = e.what();
    }

    if (reference && reference->optimum[id - 1]) {
      const Duration ref = *reference->optimum[id - 1];
      row.reference = ref;
      if (row.ours) {
        row.gap = std::abs(*row.ours - ref);
        row.match = *row.gap <= kMatchTolerance;
      }
      try {
        const Solution ref_sol = parse_solution_string(reference->solution[id - 1]);
        row.reference_no_sortie = ref_sol.sorties.empty();
        const Evaluation ev = evaluate(*instance, setting, ref_sol);
        row.reference_reevaluates = ev.feasible() && std::abs(ev.makespan() - ref) <= kTimeTolerance;
      } catch (const std::exception&) {
        row.reference_reevaluates = false;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<fs::path> list_instance_dirs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  if (fs::exists(dir / "tauT.csv")) return {dir};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "tauT.csv")) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return natural_less(a.filename().string(), b.filename().string());
  });
  return out;
}

BenchmarkReport run_benchmark(const BenchmarkOptions& options) {
  for (int id : options.settings) ProblemSetting::from_id(id);  // validates ids

  auto dirs = list_instance_dirs(options.directory);
  if (options.sample && static_cast<std::size_t>(*options.sample) < dirs.size()) {
    dirs.resize(static_cast<std::size_t>(*options.sample));
  }

  std::map<std::string, SolutionRecord> references;
  if (options.reference) {
    for (auto& rec : read_reference_solutions(*options.reference)) {
      references[rec.instance] = std::move(rec);
    }
  }

  std::vector<std::vector<BenchmarkRow>> per_instance(dirs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < dirs.size(); i = next++) {
      auto it = references.find(dirs[i].filename().string());
      per_instance[i] = run_instance(dirs[i], options, it == references.end() ? nullptr : &it->second);
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(dirs.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  BenchmarkReport report;
  for (auto& rows : per_instance) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  return report;
}

std::string format_comparison_csv(const BenchmarkReport& report) {
  auto opt = [](const std::optional<Duration>& v) { return v ? format_duration(*v) : std::string(); };
  std::string out =
      "instance,setting,our_opt,ref_opt,gap,match,validated,ref_reevaluates,our_no_sortie,"
      "ref_no_sortie,our_sol,error\n";
  for (const auto& r : report.rows) {
    out += csv::quote(r.instance) + "," + std::to_string(r.setting) + "," + opt(r.ours) + "," +
           opt(r.reference) + "," + opt(r.gap) + "," + (r.gap ? (r.match ? "1" : "0") : "") + "," +
           (r.ours ? (r.ours_validated ? "1" : "0") : "") + "," +
           (r.reference_reevaluates ? (*r.reference_reevaluates ? "1" : "0") : "") + "," +
           (r.ours ? (r.our_no_sortie ? "1" : "0") : "") + "," +
           (r.reference ? (r.reference_no_sortie ? "1" : "0") : "") + "," +
           csv::quote(r.our_solution) + "," + csv::quote(r.error) + "\n";
  }
  return out;
}

void write_report(const BenchmarkReport& report, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<SolutionRecord> records;
  std::map<std::string, std::size_t> at;
  for (const auto& r : report.rows) {
    auto [it, fresh] = at.emplace(r.instance, records.size());
    if (fresh) records.push_back(SolutionRecord{r.instance, {}, {}});
    auto& rec = records[it->second];
    rec.optimum[r.setting - 1] = r.ours;
    rec.solution[r.setting - 1] = r.our_solution;
  }
  csv::write_file(out_dir / "solutions.csv", format_reference_solutions(records));
  csv::write_file(out_dir / "comparison.csv", format_comparison_csv(report));
}

}  // namespace tspd::bench
