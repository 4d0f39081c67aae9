#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fixtures.hpp"
#include "tspd/io_bench.hpp"

namespace tspd::bench {
namespace {

namespace fs = std::filesystem;
using testing::t2_dir;
using testing::toy_t2;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("tspd_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write(const fs::path& file, const std::string& text) {
  fs::create_directories(file.parent_path());
  std::ofstream(file) << text;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string square(int side, double value) {
  std::string out;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) out += (j ? "," : "") + std::string(i == j ? "0" : std::to_string(value));
    out += "\n";
  }
  return out;
}

TEST(ReadInstance, ToyFolder) {
  const auto inst = read_instance(t2_dir());
  EXPECT_EQ(inst.n(), 2);
  EXPECT_EQ(inst.truck(), toy_t2().truck());
  EXPECT_EQ(inst.drone(), toy_t2().drone());
  EXPECT_EQ(inst.drone_eligible(), (std::vector<Node>{1, 2}));
  EXPECT_EQ(inst.endurance(), std::optional<Duration>(20.0));
  EXPECT_EQ(inst.sigma_launch(), 1.0);
}

TEST(ReadInstance, B1AndB2Shapes) {
  TempDir tmp;
  write(tmp.path() / "b1" / "tauT.csv", square(12, 3.5));
  write(tmp.path() / "b1" / "tauD.csv", square(12, 1.25));
  write(tmp.path() / "b1" / "Cprime.csv", "1,2,4,7,9,10\n");
  const auto b1 = read_instance(tmp.path() / "b1");
  EXPECT_EQ(b1.n(), 10);
  EXPECT_EQ(b1.drone_eligible(), (std::vector<Node>{1, 2, 4, 7, 9, 10}));

  write(tmp.path() / "b2" / "tauT.csv", square(11, 2.0));
  write(tmp.path() / "b2" / "tauD.csv", square(11, 1.0));
  const auto b2 = read_instance(tmp.path() / "b2");
  EXPECT_EQ(b2.n(), 9);
  EXPECT_EQ(b2.drone_eligible().size(), 9u);
}

TEST(ReadInstance, Errors) {
  TempDir tmp;
  write(tmp.path() / "mismatch" / "tauT.csv", square(12, 1.0));
  write(tmp.path() / "mismatch" / "tauD.csv", square(11, 1.0));
  EXPECT_THROW(read_instance(tmp.path() / "mismatch"), InvalidInstance);

  write(tmp.path() / "ragged" / "tauT.csv", "0,1,2\n1,0\n2,1,0\n");
  write(tmp.path() / "ragged" / "tauD.csv", square(3, 1.0));
  EXPECT_THROW(read_instance(tmp.path() / "ragged"), InvalidInstance);

  write(tmp.path() / "negative" / "tauT.csv", "0,1,2\n1,0,-2\n2,1,0\n");
  write(tmp.path() / "negative" / "tauD.csv", square(3, 1.0));
  EXPECT_THROW(read_instance(tmp.path() / "negative"), InvalidInstance);

  write(tmp.path() / "cprime" / "tauT.csv", square(4, 1.0));
  write(tmp.path() / "cprime" / "tauD.csv", square(4, 1.0));
  write(tmp.path() / "cprime" / "Cprime.csv", "1,3\n");
  EXPECT_THROW(read_instance(tmp.path() / "cprime"), InvalidInstance);

  write(tmp.path() / "text" / "tauT.csv", "0,1,x\n1,0,1\n1,1,0\n");
  write(tmp.path() / "text" / "tauD.csv", square(3, 1.0));
  EXPECT_THROW(read_instance(tmp.path() / "text"), ParseError);

  EXPECT_THROW(read_instance(tmp.path() / "absent"), IoError);
}

TEST(ReadInstance, TrailingCommaTolerated) {
  TempDir tmp;
  write(tmp.path() / "tauT.csv", "0,1,2,\n1,0,1,\n2,1,0,\n");
  write(tmp.path() / "tauD.csv", square(3, 1.0));
  EXPECT_EQ(read_instance(tmp.path()).n(), 1);
}

TEST(WriteInstance, ThirteenDecimals) {
  TempDir tmp;
  write_instance(tmp.path(), toy_t2());
  const auto text = slurp(tmp.path() / "tauT.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "0.0000000000000,4.0000000000000,6.0000000000000,0.0000000000000");
  EXPECT_FALSE(fs::exists(tmp.path() / "Cprime.csv"));
  EXPECT_EQ(format_duration(12.34), "12.3400000000000");
}

TEST(WriteInstance, RoundTripIsIdentity) {
  TempDir tmp;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto original = generate_b2_instance(seed, 9);
    write_instance(tmp.path() / "a", original);
    const auto back = read_instance(tmp.path() / "a");
    write_instance(tmp.path() / "b", back);
    EXPECT_EQ(slurp(tmp.path() / "a" / "tauT.csv"), slurp(tmp.path() / "b" / "tauT.csv"));
    EXPECT_EQ(slurp(tmp.path() / "a" / "tauD.csv"), slurp(tmp.path() / "b" / "tauD.csv"));
    for (Node i = 0; i < original.node_count(); ++i) {
      for (Node j = 0; j < original.node_count(); ++j) {
        EXPECT_NEAR(back.truck_time(i, j), original.truck_time(i, j), 5e-14);
      }
    }
  }
  const Instance partial(toy_t2().truck(), toy_t2().drone(), {2}, 20.0, 1.0, 1.0);
  write_instance(tmp.path() / "c", partial);
  EXPECT_EQ(read_instance(tmp.path() / "c").drone_eligible(), (std::vector<Node>{2}));
}

TEST(SolutionString, ParsesToyOptimum) {
  const auto sol = parse_solution_string("0 1 3 (0,2,3)");
  EXPECT_EQ(sol.route, (std::vector<Node>{0, 1, 3}));
  EXPECT_EQ(sol.sorties, (std::vector<Sortie>{{0, 2, 3}}));
}

TEST(SolutionString, RouteOnly) {
  const auto sol = parse_solution_string("0 1 2 3");
  EXPECT_EQ(sol.route, (std::vector<Node>{0, 1, 2, 3}));
  EXPECT_TRUE(sol.sorties.empty());
}

TEST(SolutionString, FlexibleWhitespaceAndDelimiters) {
  const auto sol = parse_solution_string("  0\t1   3 ( 0 2 3 )(3, 1 ,3) ");
  EXPECT_EQ(sol.sorties, (std::vector<Sortie>{{0, 2, 3}, {3, 1, 3}}));
  EXPECT_EQ(format_solution_string(sol), "0 1 3 (0,2,3) (3,1,3)");
  EXPECT_EQ(format_solution_string(parse_solution_string(format_solution_string(sol))),
            format_solution_string(sol));
}

TEST(SolutionString, Errors) {
  EXPECT_THROW(parse_solution_string("(0,2,3) 0 1 3"), ParseError);
  EXPECT_THROW(parse_solution_string("1 0 3"), ParseError);
  EXPECT_THROW(parse_solution_string("0 1 x 3"), ParseError);
  EXPECT_THROW(parse_solution_string("0 1 3 (0,2)"), ParseError);
  EXPECT_THROW(parse_solution_string("0 1 3 (0,2,3"), ParseError);
  EXPECT_THROW(parse_solution_string(""), ParseError);
  EXPECT_THROW(parse_solution_string("0 -1 3"), ParseError);
}

std::string reference_csv(const std::vector<std::string>& rows) {
  std::string out;
  const auto header = reference_header();
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? ", " : "") + header[i];
  out += "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

TEST(ReferenceSolutions, HeaderHasNineteenColumns) {
  const auto header = reference_header();
  ASSERT_EQ(header.size(), 19u);
  EXPECT_EQ(header.front(), "Instance");
  EXPECT_EQ(header[1], "Pset1-opt");
  EXPECT_EQ(header.back(), "Pset9-sol");
}

TEST(ReferenceSolutions, ParsesRows) {
  std::string row = "T2";
  for (int k = 1; k <= 9; ++k) row += ",9.0000000000000,0 1 3 (0 2 3)";
  std::string quoted = "T3";
  for (int k = 1; k <= 9; ++k) quoted += ",12.5000000000000,\"0 1 2 3 (1,2,3)\"";
  const auto records = parse_reference_solutions(reference_csv({row, quoted}));
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].instance, "T2");
  EXPECT_EQ(records[1].optimum[8], std::optional<Duration>(12.5));
  EXPECT_EQ(records[1].solution[0], "0 1 2 3 (1,2,3)");
}

TEST(ReferenceSolutions, ColumnCountErrors) {
  std::string short_header = "Instance";
  for (int k = 1; k <= 8; ++k) short_header += ",Pset" + std::to_string(k) + "-opt,Pset" + std::to_string(k) + "-sol";
  short_header += ",Pset9-opt\n";
  EXPECT_THROW(parse_reference_solutions(short_header), ParseError);
  EXPECT_THROW(parse_reference_solutions(reference_csv({"T2,1,2"})), ParseError);
  EXPECT_THROW(parse_reference_solutions(""), ParseError);
}

TEST(ReferenceSolutions, WriterRoundTrips) {
  SolutionRecord rec{"P1", {}, {}};
  for (int k = 0; k < 9; ++k) {
    rec.optimum[k] = 40.1234567890123 + k;
    rec.solution[k] = "0 2 1 10 (0,3,2) (1,4,10)";
  }
  const auto text = format_reference_solutions({rec});
  const auto back = parse_reference_solutions(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].solution, rec.solution);
  for (int k = 0; k < 9; ++k) EXPECT_EQ(format_duration(*back[0].optimum[k]), format_duration(*rec.optimum[k]));
  EXPECT_EQ(format_reference_solutions(back), text);
}

TEST(Generator, DistancesFollowTheConstruction) {
  const auto inst = generate_b2_instance(7, 9);
  EXPECT_EQ(inst.n(), 9);
  const int last = inst.end_depot();
  for (Node i = 0; i < inst.node_count(); ++i) {
    EXPECT_EQ(inst.truck_time(i, i), 0.0);
    // Depot copies share a location.
    EXPECT_EQ(inst.truck_time(0, i), inst.truck_time(last, i));
    EXPECT_EQ(inst.drone_time(i, 0), inst.drone_time(i, last));
    for (Node j = 0; j < inst.node_count(); ++j) {
      const double t = inst.truck_time(i, j), d = inst.drone_time(i, j);
      // Manhattan vs half-Euclidean: 2d <= t <= 2d*sqrt(2).
      EXPECT_LE(2 * d, t + 1e-12);
      EXPECT_LE(t, 2 * d * std::sqrt(2.0) + 1e-12);
      EXPECT_EQ(t, inst.truck_time(j, i));
    }
  }
  EXPECT_EQ(inst.truck_time(0, last), 0.0);
  EXPECT_EQ(inst.drone_time(0, last), 0.0);
}

TEST(Generator, DeterministicPerSeed) {
  TempDir tmp;
  write_instance(tmp.path() / "a", generate_b2_instance(11, 9));
  write_instance(tmp.path() / "b", generate_b2_instance(11, 9));
  write_instance(tmp.path() / "c", generate_b2_instance(12, 9));
  EXPECT_EQ(slurp(tmp.path() / "a" / "tauT.csv"), slurp(tmp.path() / "b" / "tauT.csv"));
  EXPECT_NE(slurp(tmp.path() / "a" / "tauT.csv"), slurp(tmp.path() / "c" / "tauT.csv"));
  EXPECT_THROW(generate_b2_instance(1, 0), InvalidInstance);
}

TEST(Benchmark, ToyFolderWithoutReference) {
  BenchmarkOptions options;
  options.directory = t2_dir();
  options.settings = {1};
  const auto report = run_benchmark(options);
  ASSERT_EQ(report.rows.size(), 1u);
  const auto& row = report.rows.front();
  EXPECT_EQ(row.instance, "T2");
  EXPECT_EQ(row.ours, std::optional<Duration>(9.0));
  EXPECT_TRUE(row.ours_validated);
  EXPECT_FALSE(row.gap.has_value());
  EXPECT_EQ(report.compared(), 0u);
  const auto csv = format_comparison_csv(report);
  EXPECT_NE(csv.find("T2,1,9.0000000000000,,,"), std::string::npos) << csv;
}

TEST(Benchmark, EmptyDirectory) {
  TempDir tmp;
  BenchmarkOptions options;
  options.directory = tmp.path();
  const auto report = run_benchmark(options);
  EXPECT_TRUE(report.rows.empty());
  EXPECT_EQ(report.solved(), 0u);
  EXPECT_EQ(report.errors(), 0u);
}

TEST(Benchmark, ReferenceComparisonAndReport) {
  TempDir tmp;
  for (int p = 1; p <= 3; ++p) {
    write_instance(tmp.path() / "set" / ("P" + std::to_string(p * 5)), generate_b2_instance(p, 5));
  }
  write(tmp.path() / "set" / "P15" / "tauD.csv", "garbage\n");  // recorded, not fatal

  BenchmarkOptions first;
  first.directory = tmp.path() / "set";
  first.jobs = 2;
  const auto ours = run_benchmark(first);
  ASSERT_EQ(ours.rows.size(), 27u);
  EXPECT_EQ(ours.rows.front().instance, "P5");
  EXPECT_EQ(ours.rows.back().instance, "P15");
  EXPECT_EQ(ours.errors(), 9u);
  write_report(ours, tmp.path() / "out");

  // Our own solutions file is a valid reference: every row matches and re-evaluates.
  BenchmarkOptions second = first;
  second.reference = tmp.path() / "out" / "solutions.csv";
  const auto report = run_benchmark(second);
  EXPECT_EQ(report.compared(), 18u);
  EXPECT_EQ(report.matched(), 18u);
  EXPECT_EQ(report.references_checked(), 18u);
  EXPECT_EQ(report.references_valid(), 18u);
  EXPECT_TRUE(fs::exists(tmp.path() / "out" / "comparison.csv"));
  const auto header = slurp(second.reference.value());
  EXPECT_EQ(header.substr(0, header.find('\n')),
            "Instance,Pset1-opt,Pset1-sol,Pset2-opt,Pset2-sol,Pset3-opt,Pset3-sol,Pset4-opt,Pset4-sol,"
            "Pset5-opt,Pset5-sol,Pset6-opt,Pset6-sol,Pset7-opt,Pset7-sol,Pset8-opt,Pset8-sol,"
            "Pset9-opt,Pset9-sol");
}

TEST(Benchmark, NaturalOrderAndSample) {
  TempDir tmp;
  for (const char* name : {"P10", "P2", "P1"}) write_instance(tmp.path() / name, toy_t2());
  const auto dirs = list_instance_dirs(tmp.path());
  ASSERT_EQ(dirs.size(), 3u);
  EXPECT_EQ(dirs[0].filename(), "P1");
  EXPECT_EQ(dirs[1].filename(), "P2");
  EXPECT_EQ(dirs[2].filename(), "P10");
  BenchmarkOptions options;
  options.directory = tmp.path();
  options.sample = 2;
  options.settings = {1, 9};
  EXPECT_EQ(run_benchmark(options).rows.size(), 4u);
}

}  // namespace
}  // namespace tspd::bench
