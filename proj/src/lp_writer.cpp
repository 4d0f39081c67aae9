#include <cstdio>
#include <sstream>

#include "tspd/milp.hpp"

namespace tspd::milp {

namespace {

// 17 significant digits round-trip every double.
std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_terms(std::ostringstream& out, const LinearModel& model, const std::vector<Term>& terms) {
  constexpr int kTermsPerLine = 8;
  int on_line = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const double mag = t.coef < 0 ? -t.coef : t.coef;
    if (i == 0) {
      if (t.coef < 0) out << "- ";
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1.0) out << number(mag) << ' ';
    out << model.variables[t.var].name;
    if (++on_line == kTermsPerLine && i + 1 < terms.size()) {
      out << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

std::string emit_lp(const LinearModel& model) {
  std::ostringstream out;
  out << "\\ truck-drone delivery model, n = " << model.n
      << (model.loops_allowed ? ", loops allowed" : "") << ", M = " << number(model.big_m) << "\n";

  out << "Minimize\n obj: ";
  if (model.objective.empty()) {
    out << number(model.objective_constant);
  } else {
    write_terms(out, model, model.objective);
    if (model.objective_constant != 0.0) {
      out << (model.objective_constant < 0 ? " - " : " + ")
          << number(model.objective_constant < 0 ? -model.objective_constant
                                                 : model.objective_constant);
    }
  }
  out << "\n";

  out << "Subject To\n";
  for (const auto& c : model.constraints) {
    out << ' ' << c.name << ": ";
    if (c.terms.empty()) {
      out << "0 " << model.variables.front().name;
    } else {
      write_terms(out, model, c.terms);
    }
    switch (c.sense) {
      case Sense::kLessEqual: out << " <= "; break;
      case Sense::kGreaterEqual: out << " >= "; break;
      case Sense::kEqual: out << " = "; break;
    }
    out << number(c.rhs) << "\n";
  }

  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.type == VarType::kContinuous) out << ' ' << v.name << " >= 0\n";
  }

  out << "Binaries\n";
  int on_line = 0;
  for (const auto& v : model.variables) {
    if (v.type != VarType::kBinary) continue;
    out << ' ' << v.name;
    if (++on_line == 10) {
      out << "\n";
      on_line = 0;
    }
  }
  if (on_line != 0) out << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace tspd::milp
