#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffmc/field.hpp"

namespace ffmc {

/// Power product x_{i1}^{e1} ... with positive exponents, stored by ascending variable.
/// Variables are 1-based; the empty product is the term 1.
class Monomial {
 public:
  using Factor = std::pair<int, int>;  // (variable, exponent)

  Monomial() = default;
  static Monomial var(int x, int exponent = 1);
  /// Factors need not be sorted; zero exponents are dropped, repeats merged.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int degree(int x) const;
  int total_degree() const;
  /// Highest variable present, 0 for the term 1.
  int top_var() const { return f_.empty() ? 0 : f_.back().first; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// other / *this; requires divides(other).
  Monomial divide_into(const Monomial& other) const;
  /// The monomial with variable x removed.
  Monomial without(int x) const;

  bool operator==(const Monomial&) const = default;
  std::size_t hash() const;

 private:
  std::vector<Factor> f_;
};

/// Lexicographic order with x_1 < x_2 < ... : the highest variable is most significant.
std::strong_ordering compare_lex(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Elem coeff;
};

/// Partial assignment of x_1..x_n (index 0 holds x_1); unassigned entries are empty.
using Assignment = std::vector<std::optional<Elem>>;

/// Sparse polynomial over a finite field. Terms are kept in descending lex order
/// with nonzero coefficients, so equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(FieldPtr field) : field_(std::move(field)) {}

  static Polynomial constant(FieldPtr field, Elem c);
  static Polynomial constant(FieldPtr field, std::int64_t c);
  static Polynomial variable(FieldPtr field, int x, int exponent = 1);
  static Polynomial monomial(FieldPtr field, Elem c, Monomial m);
  /// Sorts and combines like terms.
  static Polynomial from_terms(FieldPtr field, std::vector<Term> terms);

  const FieldPtr& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_.front().mono.is_one(); }
  /// Requires is_constant().
  Elem constant_value() const;

  /// Leading variable (cls); 0 for nonzero constants. Throws ZeroPolynomial on 0.
  int lv() const;
  int cls() const { return lv(); }
  /// Degree in x; -1 for the zero polynomial, 0 when x is absent.
  int degree(int x) const;
  int total_degree() const;
  std::vector<int> vars() const;
  bool has_var(int x) const;

  /// Coefficient of x^d, as a polynomial without x.
  Polynomial coeff(int x, int d) const;
  /// Coefficients indexed by power of x, length degree(x) + 1 (empty for 0).
  std::vector<Polynomial> coefficients(int x) const;
  Polynomial lc(int x) const;
  Polynomial red(int x) const;
  /// Coefficient of the lex-leading term.
  Elem leading_coeff() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scale(Elem c) const;
  Polynomial mul_monomial(Elem c, const Monomial& m) const;
  Polynomial pow(unsigned e) const;
  /// Scaled so the leading coefficient is 1; zero stays zero.
  Polynomial monic() const;

  /// `point[i]` is the value of x_{i+1}; throws IncompleteAssignment if a variable is uncovered.
  Elem evaluate(std::span<const Elem> point) const;
  Elem evaluate(const Assignment& nu) const;
  Polynomial partial_eval(const Assignment& nu) const;
  /// Substitutes point for x_1..x_{|point|} and returns the dense coefficients in x
  /// (low degree first, trailing zeros trimmed). Every variable other than x must be covered.
  std::vector<Elem> univariate_image(std::span<const Elem> point, int x) const;

  /// Exponents d >= 1 mapped to ((d - 1) mod (q - 1)) + 1.
  Polynomial reduce_exponents() const;

  bool operator==(const Polynomial& o) const;
  std::size_t hash() const;

  /// Descending lex order, `*` between variables, coefficient prefix (`2x1^3 + x1`).
  /// Variables without a supplied name render as x<i>.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void normalize();

  FieldPtr field_;
  std::vector<Term> terms_;
};

/// l^d g = o f + r with l = lc(f, x), d = max(deg(g, x) - deg(f, x) + 1, 0).
struct PseudoDivision {
  Polynomial quotient;
  Polynomial remainder;
};
PseudoDivision pseudo_divide(const Polynomial& g, const Polynomial& f, int x);
Polynomial prem(const Polynomial& g, const Polynomial& f, int x);
Polynomial pquo(const Polynomial& g, const Polynomial& f, int x);

/// a / b when b divides a exactly in the multivariate ring; throws Internal otherwise.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Subresultant regular subchain [h_2, ..., h_r] of f and g in x, highest degree first.
/// h_2 is lc(g)^(m-n-1) g when deg f = m > n = deg g, and g when m = n; the rest are the
/// nonzero subresultants S_j with deg(S_j, x) = j for j = n-1 down to 0.
std::vector<Polynomial> srs(const Polynomial& f, const Polynomial& g, int x);

/// The same chain mapped into F_q[X_{x-1}]/(y^q - y)[x]: members agree with srs() as
/// functions of the variables below x and as polynomials in x. Computed without divisions,
/// which keeps intermediate sizes bounded by the exponent reduction.
std::vector<Polynomial> srs_reduced(const Polynomial& f, const Polynomial& g, int x);

/// Monic gcd of two univariate polynomials in the same variable (or constants).
Polynomial gcd_univariate(const Polynomial& f, const Polynomial& g);

/// Zeros of a univariate polynomial, by evaluation at every element.
std::vector<Elem> univariate_roots(const Polynomial& f);

// Dense univariate helpers over F_q, coefficients low degree first.
namespace dense {
void trim(std::vector<Elem>& a);
Elem eval(const Field& F, const std::vector<Elem>& a, Elem x);
std::vector<Elem> rem(const Field& F, std::vector<Elem> a, const std::vector<Elem>& b);
std::vector<Elem> gcd(const Field& F, std::vector<Elem> a, std::vector<Elem> b);
}  // namespace dense

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

}  // namespace ffmc
