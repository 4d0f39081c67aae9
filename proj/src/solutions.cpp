#include <cctype>
#include <cstdlib>

#include "csv.hpp"
#include "tspd/io_bench.hpp"

namespace tspd::bench {

namespace {

Node parse_index(std::string_view token, std::string_view context) {
  if (token.empty()) throw ParseError("empty index in solution string '" + std::string(context) + "'");
  Node v = 0;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed token '" + std::string(token) + "' in solution string '" +
                       std::string(context) + "'");
    }
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw ParseError("node index too large in '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

Solution parse_solution_string(std::string_view text) {
  Solution out;
  std::size_t at = 0;
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };

  while (at < text.size()) {
    if (is_space(text[at])) {
      ++at;
      continue;
    }
    if (text[at] == '(') {
      const auto close = text.find(')', at);
      if (close == std::string_view::npos) {
        throw ParseError("unclosed sortie in solution string '" + std::string(text) + "'");
      }
      std::string inner(text.substr(at + 1, close - at - 1));
      for (char& c : inner) {
        if (c == ',') c = ' ';
      }
      std::vector<Node> ids;
      std::size_t p = 0;
      while (p < inner.size()) {
        if (is_space(inner[p])) {
          ++p;
          continue;
        }
        std::size_t q = p;
        while (q < inner.size() && !is_space(inner[q])) ++q;
        ids.push_back(parse_index(std::string_view(inner).substr(p, q - p), text));
        p = q;
      }
      if (ids.size() != 3) {
        throw ParseError("sortie must have three indices in '" + std::string(text) + "'");
      }
      out.sorties.push_back({ids[0], ids[1], ids[2]});
      at = close + 1;
      continue;
    }
    std::size_t end = at;
    while (end < text.size() && !is_space(text[end]) && text[end] != '(') ++end;
    const Node v = parse_index(text.substr(at, end - at), text);
    if (!out.sorties.empty()) {
      throw ParseError("route index " + std::to_string(v) + " after a sortie in '" +
                       std::string(text) + "'");
    }
    out.route.push_back(v);
    at = end;
  }
  if (out.route.empty() || out.route.front() != 0) {
    throw ParseError("route must start at node 0 in '" + std::string(text) + "'");
  }
  return out;
}

std::string format_solution_string(const Solution& solution) {
  std::string out;
  for (std::size_t i = 0; i < solution.route.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(solution.route[i]);
  }
  for (const auto& s : solution.sorties) out += " " + to_string(s);
  return out;
}

std::vector<std::string> reference_header() {
  std::vector<std::string> out{"Instance"};
  for (int k = 1; k <= kSettingCount; ++k) {
    out.push_back("Pset" + std::to_string(k) + "-opt");
    out.push_back("Pset" + std::to_string(k) + "-sol");
  }
  return out;
}

std::vector<SolutionRecord> parse_reference_solutions(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty()) throw ParseError("reference solution file is empty");
  const auto expected = reference_header();
  const auto& header = records.front();
  bool ok = header.size() == expected.size();
  for (std::size_t i = 0; ok && i < header.size(); ++i) {
    std::string name = csv::trim(header[i]);
    if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name = name.substr(3);  // UTF-8 BOM
    ok = name == expected[i];
  }
  if (!ok) {
    throw ParseError("reference header mismatch: expected " + std::to_string(expected.size()) +
                     " columns 'Instance, Pset1-opt, Pset1-sol, ..., Pset9-sol', got " +
                     std::to_string(header.size()));
  }

  std::vector<SolutionRecord> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    if (row.size() != expected.size()) {
      throw ParseError("reference row " + std::to_string(r + 1) + " has " +
                       std::to_string(row.size()) + " columns, expected " +
                       std::to_string(expected.size()));
    }
    SolutionRecord rec;
    rec.instance = csv::trim(row[0]);
    for (int k = 0; k < kSettingCount; ++k) {
      const std::string opt = csv::trim(row[1 + 2 * k]);
      if (!opt.empty()) {
        char* end = nullptr;
        const double v = std::strtod(opt.c_str(), &end);
        if (end != opt.c_str() + opt.size()) {
          throw ParseError("reference row " + std::to_string(r + 1) + ": bad optimum '" + opt + "'");
        }
        rec.optimum[k] = v;
      }
      rec.solution[k] = csv::trim(row[2 + 2 * k]);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SolutionRecord> read_reference_solutions(const std::filesystem::path& csv_path) {
  return parse_reference_solutions(csv::read_file(csv_path));
}

std::string format_reference_solutions(const std::vector<SolutionRecord>& records) {
  std::string out;
  const auto header = reference_header();
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& rec : records) {
    out += csv::quote(rec.instance);
    for (int k = 0; k < kSettingCount; ++k) {
      out += ',';
      if (rec.optimum[k]) out += format_duration(*rec.optimum[k]);
      out += ',';
      out += csv::quote(rec.solution[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace tspd::bench
