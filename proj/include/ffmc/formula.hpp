#pragma once

#include <string>
#include <vector>

#include "ffmc/poly.hpp"

namespace ffmc {

enum class Rel { Eq, Neq };
enum class Truth { False, True, Undef };

inline Truth operator!(Truth t) {
  return t == Truth::Undef ? t : (t == Truth::True ? Truth::False : Truth::True);
}

/// Atom `poly = 0` or its negation `poly != 0`.
struct Constraint {
  Polynomial poly;
  Rel rel = Rel::Eq;

  Constraint negate() const { return {poly, rel == Rel::Eq ? Rel::Neq : Rel::Eq}; }
  /// Index of the highest variable, 0 for constants.
  int level() const { return poly.is_zero() ? 0 : poly.lv(); }
  bool is_constant() const { return poly.is_constant(); }
  /// Truth of a variable-free constraint.
  bool constant_truth() const;
  /// Truth of the constraint for a given value of its polynomial.
  bool holds(Elem value) const { return (rel == Rel::Eq) == value.is_zero(); }

  bool operator==(const Constraint& o) const { return rel == o.rel && poly == o.poly; }
  std::string to_string(std::span<const std::string> names = {}) const;
};

struct Clause {
  std::vector<Constraint> literals;

  int level() const;
  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
  bool operator==(const Clause&) const = default;
  std::string to_string(std::span<const std::string> names = {}) const;
};

struct Formula {
  FieldPtr field;
  int nvars = 0;
  /// Optional display names for x_1..x_n.
  std::vector<std::string> names;
  std::vector<Clause> clauses;

  bool operator==(const Formula& o) const;
};

Truth eval_constraint(const Constraint& f, const Assignment& nu);
Truth eval_clause(const Clause& c, const Assignment& nu);

/// Values beta of x_k with f true under point + {x_k -> beta}; point covers x_1..x_{k-1}.
std::vector<Elem> satisfying_values(const Constraint& f, std::span<const Elem> point, int k);

/// Constant literals resolved (true deletes the clause, false is dropped), duplicate
/// literals merged, tautological clauses (f and not f) removed. An emptied clause is kept.
Formula simplify(const Formula& F);

/// True iff every clause has a literal that holds under the total assignment.
bool check_model(const Formula& F, std::span<const Elem> model);

/// Formula in the text format read by parse_formula.
std::string render(const Formula& F);

}  // namespace ffmc
