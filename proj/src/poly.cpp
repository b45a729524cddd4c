#include "ffmc/poly.hpp"

#include <algorithm>
#include <sstream>

namespace ffmc {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(int x, int exponent) {
  Monomial m;
  if (exponent > 0) m.f_.emplace_back(x, exponent);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [x, e] : factors) {
    if (e <= 0) continue;
    if (!m.f_.empty() && m.f_.back().first == x)
      m.f_.back().second += e;
    else
      m.f_.emplace_back(x, e);
  }
  return m;
}

int Monomial::degree(int x) const {
  for (const auto& [v, e] : f_)
    if (v == x) return e;
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& fe : f_) d += fe.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.f_.reserve(f_.size() + other.f_.size());
  std::size_t i = 0, j = 0;
  while (i < f_.size() || j < other.f_.size()) {
    if (j == other.f_.size() || (i < f_.size() && f_[i].first < other.f_[j].first)) {
      out.f_.push_back(f_[i++]);
    } else if (i == f_.size() || other.f_[j].first < f_[i].first) {
      out.f_.push_back(other.f_[j++]);
    } else {
      out.f_.emplace_back(f_[i].first, f_[i].second + other.f_[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  std::size_t j = 0;
  for (const auto& [x, e] : f_) {
    while (j < other.f_.size() && other.f_[j].first < x) ++j;
    if (j == other.f_.size() || other.f_[j].first != x || other.f_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::divide_into(const Monomial& other) const {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [x, e] : other.f_) {
    int rest = e;
    if (i < f_.size() && f_[i].first == x) rest -= f_[i++].second;
    if (rest > 0) out.f_.emplace_back(x, rest);
  }
  return out;
}

Monomial Monomial::without(int x) const {
  Monomial out;
  for (const auto& fe : f_)
    if (fe.first != x) out.f_.push_back(fe);
  return out;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [x, e] : f_) {
    h ^= static_cast<std::size_t>(x) * 0x100000001b3ULL + static_cast<std::size_t>(e) + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering compare_lex(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.size(), j = fb.size();
  while (i > 0 && j > 0) {
    const auto& [xa, ea] = fa[i - 1];
    const auto& [xb, eb] = fb[j - 1];
    if (xa != xb) return xa <=> xb;
    if (ea != eb) return ea <=> eb;
    --i;
    --j;
  }
  if (i > 0) return std::strong_ordering::greater;
  if (j > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// -------------------------------------------------------------- Polynomial

namespace {

const FieldPtr& pick_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (b) require_same_field(a, b);
  return a;
}

bool term_greater(const Term& a, const Term& b) { return compare_lex(a.mono, b.mono) > 0; }

}  // namespace

Polynomial Polynomial::constant(FieldPtr field, Elem c) {
  Polynomial p(std::move(field));
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::constant(FieldPtr field, std::int64_t c) {
  const Elem e = field->from_integer(c);
  return constant(std::move(field), e);
}

Polynomial Polynomial::variable(FieldPtr field, int x, int exponent) {
  Polynomial p(std::move(field));
  p.terms_.push_back({Monomial::var(x, exponent), p.field_->one()});
  return p;
}

Polynomial Polynomial::monomial(FieldPtr field, Elem c, Monomial m) {
  Polynomial p(std::move(field));
  if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(FieldPtr field, std::vector<Term> terms) {
  Polynomial p(std::move(field));
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff = field_->add(out.back().coeff, t.coeff);
    else
      out.push_back(std::move(t));
    if (out.back().coeff.is_zero()) out.pop_back();
  }
  terms_ = std::move(out);
}

Elem Polynomial::constant_value() const {
  if (terms_.empty()) return Elem{0};
  if (!terms_.front().mono.is_one()) throw Error(ErrorKind::Internal, "polynomial is not constant");
  return terms_.front().coeff;
}

int Polynomial::lv() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "lv of the zero polynomial");
  return terms_.front().mono.top_var();
}

int Polynomial::degree(int x) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(x));
  return d;
}

int Polynomial::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

std::vector<int> Polynomial::vars() const {
  std::vector<int> out;
  for (const auto& t : terms_)
    for (const auto& fe : t.mono.factors()) out.push_back(fe.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Polynomial::has_var(int x) const {
  for (const auto& t : terms_)
    if (t.mono.degree(x) > 0) return true;
  return false;
}

Polynomial Polynomial::coeff(int x, int d) const {
  Polynomial out(field_);
  for (const auto& t : terms_)
    if (t.mono.degree(x) == d) out.terms_.push_back({t.mono.without(x), t.coeff});
  // Dropping x preserves the order only when nothing above x is present.
  if (!out.terms_.empty() && x < lv()) std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
  return out;
}

std::vector<Polynomial> Polynomial::coefficients(int x) const {
  const int deg = degree(x);
  if (deg < 0) return {};
  std::vector<Polynomial> out(static_cast<std::size_t>(deg) + 1, Polynomial(field_));
  for (const auto& t : terms_) out[static_cast<std::size_t>(t.mono.degree(x))].terms_.push_back({t.mono.without(x), t.coeff});
  for (auto& c : out) std::sort(c.terms_.begin(), c.terms_.end(), term_greater);
  return out;
}

Polynomial Polynomial::lc(int x) const { return coeff(x, std::max(degree(x), 0)); }

Polynomial Polynomial::red(int x) const {
  const int deg = degree(x);
  Polynomial out(field_);
  if (deg <= 0) return out;
  for (const auto& t : terms_)
    if (t.mono.degree(x) != deg) out.terms_.push_back(t);
  return out;
}

Elem Polynomial::leading_coeff() const { return terms_.empty() ? Elem{0} : terms_.front().coeff; }

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coeff = field_->neg(t.coeff);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  field_ = pick_field(field_, o.field_);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const auto c = compare_lex(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      const Elem s = field_->add(terms_[i].coeff, o.terms_[j].coeff);
      if (!s.is_zero()) out.push_back({std::move(terms_[i].mono), s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const FieldPtr& F = pick_field(a.field_, b.field_);
  Polynomial out(F);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].coeff, a.terms_[0].mono);
  if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].coeff, b.terms_[0].mono);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.terms_.push_back({s.mono * t.mono, F->mul(s.coeff, t.coeff)});
  out.normalize();
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::scale(Elem c) const {
  if (c.is_zero()) return Polynomial(field_);
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coeff = field_->mul(t.coeff, c);
  return out;
}

Polynomial Polynomial::mul_monomial(Elem c, const Monomial& m) const {
  Polynomial out(field_);
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves lex order.
  for (const auto& t : terms_) out.terms_.push_back({t.mono * m, field_->mul(t.coeff, c)});
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(field_, field_->one());
  Polynomial base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scale(field_->inv(terms_.front().coeff));
}

Elem Polynomial::evaluate(std::span<const Elem> point) const {
  const Field& F = *field_;
  Elem sum = F.zero();
  for (const auto& t : terms_) {
    Elem v = t.coeff;
    for (const auto& [x, e] : t.mono.factors()) {
      if (static_cast<std::size_t>(x) > point.size())
        throw Error(ErrorKind::IncompleteAssignment, "x" + std::to_string(x) + " is unassigned");
      v = F.mul(v, F.pow(point[static_cast<std::size_t>(x) - 1], static_cast<std::uint64_t>(e)));
    }
    sum = F.add(sum, v);
  }
  return sum;
}

Elem Polynomial::evaluate(const Assignment& nu) const {
  const Field& F = *field_;
  Elem sum = F.zero();
  for (const auto& t : terms_) {
    Elem v = t.coeff;
    for (const auto& [x, e] : t.mono.factors()) {
      const auto idx = static_cast<std::size_t>(x) - 1;
      if (idx >= nu.size() || !nu[idx])
        throw Error(ErrorKind::IncompleteAssignment, "x" + std::to_string(x) + " is unassigned");
      v = F.mul(v, F.pow(*nu[idx], static_cast<std::uint64_t>(e)));
    }
    sum = F.add(sum, v);
  }
  return sum;
}

Polynomial Polynomial::partial_eval(const Assignment& nu) const {
  const Field& F = *field_;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Elem v = t.coeff;
    std::vector<Monomial::Factor> rest;
    for (const auto& [x, e] : t.mono.factors()) {
      const auto idx = static_cast<std::size_t>(x) - 1;
      if (idx < nu.size() && nu[idx])
        v = F.mul(v, F.pow(*nu[idx], static_cast<std::uint64_t>(e)));
      else
        rest.emplace_back(x, e);
    }
    if (!v.is_zero()) out.push_back({Monomial::from_factors(std::move(rest)), v});
  }
  return from_terms(field_, std::move(out));
}

std::vector<Elem> Polynomial::univariate_image(std::span<const Elem> point, int x) const {
  const Field& F = *field_;
  std::vector<Elem> out;
  for (const auto& t : terms_) {
    Elem v = t.coeff;
    int power = 0;
    for (const auto& [y, e] : t.mono.factors()) {
      if (y == x) {
        power = e;
        continue;
      }
      if (static_cast<std::size_t>(y) > point.size())
        throw Error(ErrorKind::IncompleteAssignment, "x" + std::to_string(y) + " is unassigned");
      v = F.mul(v, F.pow(point[static_cast<std::size_t>(y) - 1], static_cast<std::uint64_t>(e)));
    }
    if (out.size() <= static_cast<std::size_t>(power)) out.resize(static_cast<std::size_t>(power) + 1, F.zero());
    out[static_cast<std::size_t>(power)] = F.add(out[static_cast<std::size_t>(power)], v);
  }
  dense::trim(out);
  return out;
}

Polynomial Polynomial::reduce_exponents() const {
  const auto period = static_cast<int>(field_->order() - 1);
  std::vector<Term> out;
  out.reserve(terms_.size());
  bool changed = false;
  for (const auto& t : terms_) {
    std::vector<Monomial::Factor> fs = t.mono.factors();
    for (auto& fe : fs) {
      const int reduced = (fe.second - 1) % period + 1;
      if (reduced != fe.second) changed = true;
      fe.second = reduced;
    }
    out.push_back({Monomial::from_factors(std::move(fs)), t.coeff});
  }
  if (!changed) return *this;
  return from_terms(field_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (field_ && o.field_ && field_ != o.field_ && !(*field_ == *o.field_)) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono)) return false;
  return true;
}

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = h * 1000003ULL ^ (t.mono.hash() + t.coeff.v * 0x9e3779b9ULL);
  return h;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  const Field& F = *field_;
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool is_base = F.is_prime_field() || t.coeff.v < F.characteristic();
    const std::string c = is_base ? std::to_string(t.coeff.v) : "(" + F.to_string(t.coeff) + ")";
    const bool unit = t.coeff == F.one();
    if (t.mono.is_one()) {
      os << c;
      continue;
    }
    if (!unit) os << c;
    const auto& fs = t.mono.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
      if (it != fs.rbegin()) os << '*';
      const auto idx = static_cast<std::size_t>(it->first) - 1;
      if (idx < names.size())
        os << names[idx];
      else
        os << 'x' << it->first;
      if (it->second > 1) os << '^' << it->second;
    }
  }
  return os.str();
}

// ---------------------------------------------------------- pseudo-division

PseudoDivision pseudo_divide(const Polynomial& g, const Polynomial& f, int x) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroDivisor, "pseudo-division by zero");
  const FieldPtr& F = f.field();
  const int n = f.degree(x);
  const int m = g.degree(x);
  const int d = std::max(m - n + 1, 0);
  const Polynomial l = f.lc(x);
  Polynomial r = g;
  Polynomial o(F);
  int steps = 0;
  while (!r.is_zero() && r.degree(x) >= n) {
    const int dr = r.degree(x);
    const Polynomial s = r.lc(x) * Polynomial::variable(F, x, dr - n);
    r = l * r - s * f;
    o = l * o + s;
    ++steps;
  }
  if (steps < d) {
    const Polynomial adj = l.pow(static_cast<unsigned>(d - steps));
    r = adj * r;
    o = adj * o;
  }
  return {std::move(o), std::move(r)};
}

Polynomial prem(const Polynomial& g, const Polynomial& f, int x) { return pseudo_divide(g, f, x).remainder; }
Polynomial pquo(const Polynomial& g, const Polynomial& f, int x) { return pseudo_divide(g, f, x).quotient; }

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by zero");
  const FieldPtr& F = pick_field(a.field(), b.field());
  if (b.size() == 1) {
    // Fast path for monomial divisors.
    const Term& lt = b.terms().front();
    const Elem inv = F->inv(lt.coeff);
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!lt.mono.divides(t.mono)) throw Error(ErrorKind::Internal, "inexact division");
      out.push_back({lt.mono.divide_into(t.mono), F->mul(t.coeff, inv)});
    }
    return Polynomial::from_terms(F, std::move(out));
  }
  Polynomial rest = a;
  std::vector<Term> quot;
  const Term& lt = b.terms().front();
  const Elem inv = F->inv(lt.coeff);
  while (!rest.is_zero()) {
    const Term& head = rest.terms().front();
    if (!lt.mono.divides(head.mono)) throw Error(ErrorKind::Internal, "inexact division");
    Term t{lt.mono.divide_into(head.mono), F->mul(head.coeff, inv)};
    rest -= b.mul_monomial(t.coeff, t.mono);
    quot.push_back(std::move(t));
  }
  // Quotient terms were produced in descending order.
  return Polynomial::from_terms(F, std::move(quot));
}

// --------------------------------------------------------------------- SRS

namespace {

// Determinant of a square matrix of polynomials by fraction-free elimination.
Polynomial bareiss_det(std::vector<std::vector<Polynomial>> M, const FieldPtr& F) {
  const std::size_t N = M.size();
  bool negate = false;
  Polynomial prev = Polynomial::constant(F, F->one());
  for (std::size_t k = 0; k + 1 < N; ++k) {
    std::size_t piv = k;
    while (piv < N && M[piv][k].is_zero()) ++piv;
    if (piv == N) return Polynomial(F);
    if (piv != k) {
      std::swap(M[piv], M[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        Polynomial num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        M[i][j] = divide_exact(num, prev);
      }
    }
    prev = M[k][k];
  }
  return negate ? -M[N - 1][N - 1] : M[N - 1][N - 1];
}

// j-th subresultant of f (degree m) and g (degree n) in x, j < n.
std::vector<std::vector<Polynomial>> subresultant_matrix(const std::vector<Polynomial>& fc, const std::vector<Polynomial>& gc, int x, int j,
                        const FieldPtr& F) {
  const int m = static_cast<int>(fc.size()) - 1;
  const int n = static_cast<int>(gc.size()) - 1;
  const int N = m + n - 2 * j;
  const int top = m + n - j - 1;  // power of x in column 0
  std::vector<std::vector<Polynomial>> M;
  M.reserve(static_cast<std::size_t>(N));
  auto add_rows = [&](const std::vector<Polynomial>& c, int deg, int shifts) {
    for (int s = shifts - 1; s >= 0; --s) {
      std::vector<Polynomial> row(static_cast<std::size_t>(N), Polynomial(F));
      for (int col = 0; col + 1 < N; ++col) {
        const int power = top - col - s;
        if (power >= 0 && power <= deg) row[static_cast<std::size_t>(col)] = c[static_cast<std::size_t>(power)];
      }
      // Last column: the part of x^s * poly of degree <= j.
      Polynomial tail(F);
      for (int power = 0; power + s <= j && power <= deg; ++power)
        if (!c[static_cast<std::size_t>(power)].is_zero())
          tail += c[static_cast<std::size_t>(power)] * Polynomial::variable(F, x, power + s);
      row[static_cast<std::size_t>(N - 1)] = std::move(tail);
      M.push_back(std::move(row));
    }
  };
  add_rows(fc, m, n - j);
  add_rows(gc, n, m - j);
  return M;
}

// Exponents of variables below x reduced via a^q = a; x itself untouched.
Polynomial reduce_below(const Polynomial& p, int x) {
  const auto q1 = static_cast<int>(p.field()->order()) - 1;
  std::vector<Term> terms;
  terms.reserve(p.size());
  bool changed = false;
  for (const auto& t : p.terms()) {
    auto fs = t.mono.factors();
    for (auto& [y, e] : fs)
      if (y < x && e > q1) {
        e = (e - 1) % q1 + 1;
        changed = true;
      }
    terms.push_back({Monomial::from_factors(std::move(fs)), t.coeff});
  }
  return changed ? Polynomial::from_terms(p.field(), std::move(terms)) : p;
}

// Berkowitz: division-free, so it stays valid in the quotient ring where Bareiss's exact
// divisions are not available. Products are reduced below x as they are formed.
Polynomial berkowitz_det(const std::vector<std::vector<Polynomial>>& A, int x, const FieldPtr& F) {
  const std::size_t n = A.size();
  auto mul = [&](const Polynomial& a, const Polynomial& b) { return reduce_below(a * b, x); };
  std::vector<Polynomial> vect{Polynomial::constant(F, F->one())};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Polynomial> t(r + 2, Polynomial(F));
    t[0] = Polynomial::constant(F, F->one());
    t[1] = -A[r][r];
    std::vector<Polynomial> v(r, Polynomial(F));
    for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      Polynomial dot(F);
      for (std::size_t i = 0; i < r; ++i)
        if (!A[r][i].is_zero() && !v[i].is_zero()) dot += mul(A[r][i], v[i]);
      t[k + 2] = -dot;
      if (k + 1 == r) break;
      std::vector<Polynomial> w(r, Polynomial(F));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < r; ++l)
          if (!A[i][l].is_zero() && !v[l].is_zero()) w[i] += mul(A[i][l], v[l]);
      v = std::move(w);
    }
    std::vector<Polynomial> next(r + 2, Polynomial(F));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!t[i - j].is_zero() && !vect[j].is_zero()) next[i] += mul(t[i - j], vect[j]);
    vect = std::move(next);
  }
  return n % 2 ? -vect[n] : vect[n];
}

}  // namespace

std::vector<Polynomial> srs(const Polynomial& f, const Polynomial& g, int x) {
  const int m = f.degree(x);
  const int n = g.degree(x);
  if (n <= 0 || m < n) throw Error(ErrorKind::DegreeOrder, "srs needs deg(f) >= deg(g) > 0");
  const FieldPtr& F = pick_field(f.field(), g.field());
  std::vector<Polynomial> chain;
  chain.push_back(m > n ? g.lc(x).pow(static_cast<unsigned>(m - n - 1)) * g : g);
  const auto fc = f.coefficients(x);
  const auto gc = g.coefficients(x);
  for (int j = n - 1; j >= 0; --j) {
    Polynomial s = bareiss_det(subresultant_matrix(fc, gc, x, j, F), F);
    if (!s.is_zero() && s.degree(x) == j) chain.push_back(std::move(s));
  }
  return chain;
}

std::vector<Polynomial> srs_reduced(const Polynomial& f0, const Polynomial& g0, int x) {
  const Polynomial f = reduce_below(f0, x), g = reduce_below(g0, x);
  const int m = f.degree(x);
  const int n = g.degree(x);
  if (n <= 0 || m < n) throw Error(ErrorKind::DegreeOrder, "srs needs deg(f) >= deg(g) > 0");
  const FieldPtr& F = pick_field(f.field(), g.field());
  std::vector<Polynomial> chain;
  chain.push_back(m > n ? reduce_below(g.lc(x).pow(static_cast<unsigned>(m - n - 1)) * g, x) : g);
  const auto fc = f.coefficients(x);
  const auto gc = g.coefficients(x);
  for (int j = n - 1; j >= 0; --j) {
    Polynomial s = berkowitz_det(subresultant_matrix(fc, gc, x, j, F), x, F);
    // A member whose leading coefficient vanishes on all of F_q^(x-1) is dropped: its
    // guard can never hold, so keeping it changes no decision.
    if (!s.is_zero() && s.degree(x) == j) chain.push_back(std::move(s));
  }
  return chain;
}

// ------------------------------------------------------------- univariate

namespace dense {

void trim(std::vector<Elem>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Elem eval(const Field& F, const std::vector<Elem>& a, Elem x) {
  Elem acc = F.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

std::vector<Elem> rem(const Field& F, std::vector<Elem> a, const std::vector<Elem>& b) {
  trim(a);
  const Elem inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem factor = F.mul(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = F.sub(a[i + shift], F.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

std::vector<Elem> gcd(const Field& F, std::vector<Elem> a, std::vector<Elem> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = rem(F, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Elem inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

}  // namespace dense

namespace {

int univariate_var(const Polynomial& f) {
  const auto vs = f.vars();
  if (vs.size() > 1) throw Error(ErrorKind::NotUnivariate, "polynomial has several variables");
  return vs.empty() ? 0 : vs.front();
}

std::vector<Elem> to_dense(const Polynomial& f, int x) {
  std::vector<Elem> out;
  if (f.is_zero()) return out;
  out.assign(static_cast<std::size_t>(f.degree(x)) + 1, Elem{0});
  for (const auto& t : f.terms()) out[static_cast<std::size_t>(t.mono.degree(x))] = t.coeff;
  return out;
}

}  // namespace

Polynomial gcd_univariate(const Polynomial& f, const Polynomial& g) {
  const int xf = univariate_var(f);
  const int xg = univariate_var(g);
  if (xf && xg && xf != xg) throw Error(ErrorKind::NotUnivariate, "gcd of polynomials in different variables");
  const int x = xf ? xf : xg;
  const FieldPtr& F = pick_field(f.field(), g.field());
  const auto d = dense::gcd(*F, to_dense(f, x), to_dense(g, x));
  std::vector<Term> terms;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) terms.push_back({Monomial::var(x, static_cast<int>(i)), d[i]});
  return Polynomial::from_terms(F, std::move(terms));
}

std::vector<Elem> univariate_roots(const Polynomial& f) {
  const FieldPtr& F = f.field();
  if (f.is_zero()) return F->elements();
  const int x = univariate_var(f);
  std::vector<Elem> out;
  if (x == 0) return out;
  const auto d = to_dense(f, x);
  for (const Elem e : F->elements())
    if (dense::eval(*F, d, e).is_zero()) out.push_back(e);
  return out;
}

}  // namespace ffmc
