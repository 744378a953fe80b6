#include "rosterlab/mip/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rosterlab::mip {

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  constant_ += other.constant_;
  return *this;
}

VarId MipModel::add_variable(std::string name, VarKind kind, double upper) {
  const int index = num_variables();
  if (kind == VarKind::kBinary) {
    upper = 1.0;
  }
  auto [it, inserted] = by_name_.emplace(name, index);
  if (!inserted && !duplicate_name_) {
    duplicate_name_ = true;
    duplicate_ = name;
  }
  variables_.push_back({std::move(name), kind, 0.0, upper});
  objective_.push_back(0.0);
  return VarId{index};
}

void MipModel::add_constraint(std::string name, const LinExpr& expr, Sense sense, double rhs) {
  Constraint c{std::move(name), {}, sense, rhs - expr.constant()};
  // Merge repeated variables while keeping first-appearance order.
  std::unordered_map<int, std::size_t> slot;
  for (const auto& t : expr.terms()) {
    auto [it, inserted] = slot.emplace(t.var.index, c.terms.size());
    if (inserted) {
      c.terms.push_back(t);
    } else {
      c.terms[it->second].coef += t.coef;
    }
  }
  std::erase_if(c.terms, [](const Term& t) { return t.coef == 0.0; });
  constraints_.push_back(std::move(c));
}

void MipModel::set_objective(const LinExpr& expr) {
  std::fill(objective_.begin(), objective_.end(), 0.0);
  objective_offset_ = expr.constant();
  for (const auto& t : expr.terms()) {
    add_objective_term(t.var, t.coef);
  }
}

void MipModel::add_objective_term(VarId v, double coef) {
  if (!v.valid() || v.index >= num_variables()) {
    throw ModelError("objective references an undeclared variable");
  }
  objective_[v.index] += coef;
}

VarId MipModel::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? VarId{} : VarId{it->second};
}

int MipModel::num_integer_variables() const {
  return static_cast<int>(std::count_if(variables_.begin(), variables_.end(), [](const Variable& v) {
    return v.kind != VarKind::kContinuous;
  }));
}

void MipModel::validate() const {
  if (duplicate_name_) {
    throw ModelError("duplicate variable name '" + duplicate_ + "'");
  }
  std::unordered_set<std::string> names;
  for (const auto& c : constraints_) {
    if (!names.insert(c.name).second) {
      throw ModelError("duplicate constraint name '" + c.name + "'");
    }
    if (!std::isfinite(c.rhs)) {
      throw ModelError("constraint '" + c.name + "' has a non-finite right-hand side");
    }
    for (const auto& t : c.terms) {
      if (!t.var.valid() || t.var.index >= num_variables()) {
        throw ModelError("constraint '" + c.name + "' references an undeclared variable");
      }
      if (!std::isfinite(t.coef)) {
        throw ModelError("constraint '" + c.name + "' has a non-finite coefficient");
      }
    }
  }
  for (double c : objective_) {
    if (!std::isfinite(c)) {
      throw ModelError("objective has a non-finite coefficient");
    }
  }
}

}  // namespace rosterlab::mip
