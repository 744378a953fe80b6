#include "rosterlab/mip/lp_writer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace rosterlab::mip {

namespace {

constexpr int kTermsPerLine = 8;

std::string number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_terms(std::ostringstream& out, const std::vector<Term>& terms,
                 const std::vector<std::string>& names) {
  int on_line = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double c = terms[i].coef;
    if (on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    out << (c < 0 ? " - " : (i == 0 ? " " : " + "));
    const double mag = std::abs(c);
    if (mag != 1.0) out << number(mag) << ' ';
    out << names[terms[i].var.index];
    ++on_line;
  }
}

}  // namespace

std::string lp_safe_name(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char ch : name) {
    if (ch == '[' || ch == ',') {
      out.push_back('_');
    } else if (ch != ']') {
      out.push_back(ch);
    }
  }
  return out;
}

std::string export_lp(const MipModel& model) {
  model.validate();
  std::vector<std::string> names;
  names.reserve(model.num_variables());
  for (const auto& v : model.variables()) names.push_back(lp_safe_name(v.name));

  std::ostringstream out;
  out << "\\ rosterlab model: " << model.num_variables() << " variables, "
      << model.num_constraints() << " constraints\n";
  out << "Minimize\n obj:";
  std::vector<Term> objective;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.objective()[j] != 0.0) objective.push_back({VarId{j}, model.objective()[j]});
  }
  if (objective.empty() && model.num_variables() > 0) {
    out << " 0 " << names[0];
  }
  write_terms(out, objective, names);
  if (model.objective_offset() != 0.0) {
    out << (model.objective_offset() < 0 ? " - " : " + ") << number(std::abs(model.objective_offset()));
  }
  out << "\nSubject To\n";
  for (const auto& c : model.constraints()) {
    out << ' ' << lp_safe_name(c.name) << ':';
    if (c.terms.empty()) {
      out << " 0 " << names[0];
    }
    write_terms(out, c.terms, names);
    switch (c.sense) {
      case Sense::kLessEqual: out << " <= "; break;
      case Sense::kGreaterEqual: out << " >= "; break;
      case Sense::kEqual: out << " = "; break;
    }
    out << number(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variables()[j];
    if (v.kind == VarKind::kBinary) continue;
    out << ' ' << number(v.lower) << " <= " << names[j];
    if (!std::isinf(v.upper)) out << " <= " << number(v.upper);
    out << '\n';
  }
  bool header = false;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[j].kind != VarKind::kInteger) continue;
    if (!header) out << "General\n";
    header = true;
    out << ' ' << names[j] << '\n';
  }
  header = false;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[j].kind != VarKind::kBinary) continue;
    if (!header) out << "Binary\n";
    header = true;
    out << ' ' << names[j] << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace rosterlab::mip
