#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rosterlab::mip {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kBinary, kInteger, kContinuous };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };

/// Thrown for malformed models and unusable backends, before any solve.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VarId {
  int index = -1;
  bool valid() const { return index >= 0; }
  bool operator==(const VarId&) const = default;
};

struct Term {
  VarId var;
  double coef = 0.0;
};

class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(VarId v) { add(v, 1.0); }  // NOLINT(google-explicit-constructor)

  LinExpr& add(VarId v, double coef) {
    terms_.push_back({v, coef});
    return *this;
  }
  LinExpr& add_constant(double c) {
    constant_ += c;
    return *this;
  }
  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator+=(VarId v) { return add(v, 1.0); }

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // merged, one entry per variable
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

/// Minimization model with non-negative variables. Constraints and variables
/// keep declaration order, which the LP writer and backends preserve.
class MipModel {
 public:
  VarId add_binary(std::string name) { return add_variable(std::move(name), VarKind::kBinary); }
  VarId add_integer(std::string name) { return add_variable(std::move(name), VarKind::kInteger); }
  VarId add_continuous(std::string name) {
    return add_variable(std::move(name), VarKind::kContinuous);
  }
  VarId add_variable(std::string name, VarKind kind, double upper = kInfinity);

  /// Adds `expr sense rhs`; the expression's constant moves to the right-hand
  /// side and repeated variables are merged.
  void add_constraint(std::string name, const LinExpr& expr, Sense sense, double rhs);

  void set_objective(const LinExpr& expr);
  void add_objective_term(VarId v, double coef);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const Variable& variable(VarId v) const { return variables_.at(v.index); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  /// Dense objective coefficients, one per variable.
  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }

  VarId find(const std::string& name) const;
  int num_integer_variables() const;

  /// Throws ModelError if a term references an undeclared variable, a name
  /// repeats, or a coefficient is not finite.
  void validate() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
  std::unordered_map<std::string, int> by_name_;
  bool duplicate_name_ = false;
  std::string duplicate_;
};

}  // namespace rosterlab::mip
