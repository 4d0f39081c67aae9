#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "csv.hpp"
#include "tspd/io_bench.hpp"

namespace tspd::bench {

namespace fs = std::filesystem;

std::string format_duration(Duration value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.13f", value);
  return buf;
}

namespace {

double parse_number(const std::string& raw, const fs::path& file, std::size_t row, std::size_t col) {
  const std::string s = csv::trim(raw);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(file.string() + ": row " + std::to_string(row + 1) + " column " +
                     std::to_string(col + 1) + " is not a number: '" + s + "'");
  }
  return v;
}

TimeMatrix read_matrix(const fs::path& file) {
  const auto records = csv::parse(csv::read_file(file));
  const std::size_t side = records.size();
  if (side == 0) throw InvalidInstance(file.string() + " is empty");
  std::vector<Duration> data;
  data.reserve(side * side);
  for (std::size_t r = 0; r < side; ++r) {
    auto row = records[r];
    while (!row.empty() && csv::trim(row.back()).empty()) row.pop_back();  // trailing comma
    if (row.size() != side) {
      throw InvalidInstance(file.string() + " is not square: row " + std::to_string(r + 1) +
                            " has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(side));
    }
    for (std::size_t c = 0; c < side; ++c) {
      const double v = parse_number(row[c], file, r, c);
      if (v < 0.0) {
        throw InvalidInstance(file.string() + ": negative entry at row " + std::to_string(r + 1) +
                              " column " + std::to_string(c + 1));
      }
      data.push_back(v);
    }
  }
  return TimeMatrix(static_cast<int>(side), std::move(data));
}

std::vector<Node> read_eligible(const fs::path& file, int n) {
  std::string text = csv::read_file(file);
  for (char& c : text) {
    if (c == ',' || c == ';' || c == '\r' || c == '\n' || c == '\t') c = ' ';
  }
  std::vector<Node> out;
  std::size_t at = 0;
  while (at < text.size()) {
    const auto start = text.find_first_not_of(' ', at);
    if (start == std::string::npos) break;
    const auto stop = text.find(' ', start);
    const std::string token = text.substr(start, stop == std::string::npos ? std::string::npos : stop - start);
    at = stop == std::string::npos ? text.size() : stop;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || v != std::floor(v)) {
      throw ParseError(file.string() + ": bad customer index '" + token + "'");
    }
    const Node c = static_cast<Node>(v);
    if (c < 1 || c > n) {
      throw InvalidInstance(file.string() + ": customer index " + token + " outside 1.." +
                            std::to_string(n));
    }
    out.push_back(c);
  }
  return out;
}

std::string matrix_text(const TimeMatrix& m) {
  std::string out;
  for (Node i = 0; i < m.side(); ++i) {
    for (Node j = 0; j < m.side(); ++j) {
      if (j) out += ',';
      out += format_duration(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

Instance read_instance(const fs::path& dir, const RunParameters& params) {
  const auto truck_file = dir / "tauT.csv";
  const auto drone_file = dir / "tauD.csv";
  if (!fs::exists(truck_file)) throw IoError("missing " + truck_file.string());
  if (!fs::exists(drone_file)) throw IoError("missing " + drone_file.string());
  TimeMatrix truck = read_matrix(truck_file);
  TimeMatrix drone = read_matrix(drone_file);
  if (truck.side() != drone.side()) {
    throw InvalidInstance("shape mismatch: tauT.csv is " + std::to_string(truck.side()) + "x" +
                          std::to_string(truck.side()) + ", tauD.csv is " +
                          std::to_string(drone.side()) + "x" + std::to_string(drone.side()));
  }
  const int n = truck.side() - 2;
  if (n < 1) throw InvalidInstance("matrices must be at least 3x3");

  std::vector<Node> eligible;
  const auto cprime = dir / "Cprime.csv";
  if (fs::exists(cprime)) {
    eligible = read_eligible(cprime, n);
  } else {
    for (Node c = 1; c <= n; ++c) eligible.push_back(c);
  }
  return Instance(std::move(truck), std::move(drone), std::move(eligible), params.endurance,
                  params.sigma_launch, params.sigma_rendezvous);
}

void write_instance(const fs::path& dir, const Instance& instance) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  csv::write_file(dir / "tauT.csv", matrix_text(instance.truck()));
  csv::write_file(dir / "tauD.csv", matrix_text(instance.drone()));
  const auto cprime = dir / "Cprime.csv";
  if (static_cast<int>(instance.drone_eligible().size()) == instance.n()) {
    fs::remove(cprime, ec);
    return;
  }
  std::string row;
  for (Node c : instance.drone_eligible()) {
    if (!row.empty()) row += ',';
    row += std::to_string(c);
  }
  csv::write_file(cprime, row + "\n");
}

Instance generate_b2_instance(std::uint64_t seed, int n, double square_side,
                              const RunParameters& params) {
  if (n < 1) throw InvalidInstance("generator needs n >= 1");
  std::mt19937_64 rng(seed);
  // Explicit conversion keeps the stream identical across standard libraries.
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * square_side; };
  std::vector<double> xs, ys;
  for (int p = 0; p <= n; ++p) {
    xs.push_back(uniform());
    ys.push_back(uniform());
  }
  const int side = n + 2;
  auto point = [&](Node v) { return v == n + 1 ? 0 : v; };
  TimeMatrix truck(side), drone(side);
  for (Node i = 0; i < side; ++i) {
    for (Node j = 0; j < side; ++j) {
      const double dx = xs[point(i)] - xs[point(j)];
      const double dy = ys[point(i)] - ys[point(j)];
      truck(i, j) = std::abs(dx) + std::abs(dy);
      drone(i, j) = std::sqrt(dx * dx + dy * dy) / 2.0;
    }
  }
  std::vector<Node> eligible;
  for (Node c = 1; c <= n; ++c) eligible.push_back(c);
  return Instance(std::move(truck), std::move(drone), std::move(eligible), params.endurance,
                  params.sigma_launch, params.sigma_rendezvous);
}

}  // namespace tspd::bench
