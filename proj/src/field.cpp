#include "ffmc/field.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace ffmc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::DegreeOrder: return "DegreeOrder";
    case ErrorKind::NotUnivariate: return "NotUnivariate";
    case ErrorKind::Redundant: return "Redundant";
    case ErrorKind::LevelViolation: return "LevelViolation";
    case ErrorKind::InfeasibleValue: return "InfeasibleValue";
    case ErrorKind::GuardViolated: return "GuardViolated";
    case ErrorKind::PivotMissing: return "PivotMissing";
    case ErrorKind::StepLimit: return "StepLimit";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ResourceOut: return "ResourceOut";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Semantic: return "SemanticError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

namespace {

using Coeffs = std::vector<std::uint32_t>;  // over F_p, low degree first

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on integers.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b over F_p; b must be nonzero after trimming.
Coeffs poly_rem(Coeffs a, const Coeffs& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  trim(out);
  return out;
}

Coeffs poly_sub(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  Coeffs out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    out[i] = (x + p - y) % p;
  }
  trim(out);
  return out;
}

// Quotient of a by b over F_p.
Coeffs poly_quo(Coeffs a, const Coeffs& b, std::uint32_t p) {
  trim(a);
  if (a.size() < b.size()) return {};
  Coeffs quot(a.size() - b.size() + 1, 0);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint32_t factor = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.back()) * lead_inv % p);
    const std::size_t shift = a.size() - b.size();
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(factor) * b[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return quot;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool Field::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool Field::is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Coeffs f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs divisor(d + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      divisor[d] = 1;
      if (poly_rem(f, divisor, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(std::uint32_t p, int k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < k; ++i) q_ *= p;
  build_tables();
}

FieldPtr Field::prime(std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (static_cast<std::uint64_t>(p) > kMaxOrder)
    throw Error(ErrorKind::FieldTooLarge, "order " + std::to_string(p) + " exceeds 2^20");
  return std::make_shared<const Field>(static_cast<std::uint32_t>(p), 1, std::vector<std::uint32_t>{});
}

FieldPtr Field::extension(std::int64_t p, int k, std::optional<std::vector<std::uint32_t>> modulus) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorKind::Semantic, "extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder)
      throw Error(ErrorKind::FieldTooLarge, std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^20");
  }
  if (k == 1 && !modulus) return prime(p);
  const auto up = static_cast<std::uint32_t>(p);
  Coeffs mod;
  if (modulus) {
    mod = *modulus;
    for (auto& c : mod) c %= up;
    trim(mod);
    if (mod.size() != static_cast<std::size_t>(k) + 1 || mod.back() != 1)
      throw Error(ErrorKind::NotIrreducible, "modulus must be monic of degree " + std::to_string(k));
    if (!is_irreducible(up, mod)) throw Error(ErrorKind::NotIrreducible, "modulus is reducible over F_" + std::to_string(p));
    if (k == 1) return prime(p);
  } else {
    const std::uint64_t count = q;  // p^k candidates for the low coefficients
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs cand(static_cast<std::size_t>(k) + 1, 0);
      std::uint64_t rest = idx;
      for (int i = 0; i < k; ++i) {
        cand[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % up);
        rest /= up;
      }
      cand[static_cast<std::size_t>(k)] = 1;
      if (is_irreducible(up, cand)) {
        mod = std::move(cand);
        break;
      }
    }
  }
  return std::make_shared<const Field>(up, k, std::move(mod));
}

FieldPtr Field::of_order(std::int64_t q) {
  if (q < 2) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  const auto factors = prime_factors(static_cast<std::uint64_t>(q));
  if (factors.size() != 1) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  const std::uint64_t p = factors.front();
  int k = 0;
  for (std::uint64_t rest = static_cast<std::uint64_t>(q); rest > 1; rest /= p) ++k;
  return k == 1 ? prime(static_cast<std::int64_t>(p)) : extension(static_cast<std::int64_t>(p), k);
}

void Field::build_tables() {
  inverse_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) inverse_[a] = inv_euclid(Elem{a}).v;
  if (k_ == 1) return;

  if (q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t out = 0, scale = 1, x = a, y = b;
        for (int i = 0; i < k_; ++i) {
          out += ((x % p_ + y % p_) % p_) * scale;
          x /= p_;
          y /= p_;
          scale *= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = out;
      }
  }

  // Find a primitive element, then tabulate powers.
  const auto factors = prime_factors(q_ - 1);
  auto slow_pow = [this](Elem a, std::uint64_t e) {
    Elem result = one();
    while (e) {
      if (e & 1) result = mul_schoolbook(result, a);
      a = mul_schoolbook(a, a);
      e >>= 1;
    }
    return result;
  };
  std::uint32_t primitive = 0;
  for (std::uint32_t g = 1; g < q_ && primitive == 0; ++g) {
    bool ok = true;
    for (auto r : factors)
      if (slow_pow(Elem{g}, (q_ - 1) / r) == one()) {
        ok = false;
        break;
      }
    if (ok) primitive = g;
  }
  exp_.resize(2 * static_cast<std::size_t>(q_));
  log_.assign(q_, 0);
  Elem cur = one();
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = cur.v;
    log_[cur.v] = i;
    cur = mul_schoolbook(cur, Elem{primitive});
  }
  for (std::uint32_t i = q_ - 1; i < exp_.size(); ++i) exp_[i] = exp_[i - (q_ - 1)];
}

Elem Field::generator() const {
  if (k_ == 1) throw Error(ErrorKind::Semantic, "prime fields have no generator symbol");
  return Elem{p_};
}

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) {
    const std::uint32_t s = a.v + b.v;
    return Elem{s >= p_ ? s - p_ : s};
  }
  if (!add_table_.empty()) return Elem{add_table_[static_cast<std::size_t>(a.v) * q_ + b.v]};
  std::uint32_t out = 0, scale = 1, x = a.v, y = b.v;
  for (int i = 0; i < k_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return Elem{out};
}

Elem Field::neg(Elem a) const {
  if (k_ == 1) return Elem{a.v == 0 ? 0 : p_ - a.v};
  std::uint32_t out = 0, scale = 1, x = a.v;
  for (int i = 0; i < k_; ++i) {
    const std::uint32_t d = x % p_;
    out += ((p_ - d) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (k_ == 1) return Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % p_)};
  if (a.v == 0 || b.v == 0) return zero();
  return Elem{exp_[static_cast<std::size_t>(log_[a.v]) + log_[b.v]]};
}

Elem Field::mul_schoolbook(Elem a, Elem b) const {
  const Coeffs prod = poly_mul(coefficients(a), coefficients(b), p_);
  return from_coefficients(poly_rem(prod, modulus_, p_));
}

Elem Field::inv_euclid(Elem a) const {
  if (k_ == 1) return Elem{inv_mod(a.v, p_)};
  // Extended Euclid over F_p[t] against the modulus: s*a + t*g = 1.
  Coeffs r0 = modulus_, r1 = coefficients(a);
  trim(r1);
  Coeffs s0{}, s1{1};
  while (!r1.empty()) {
    const Coeffs quot = poly_quo(r0, r1, p_);
    Coeffs r2 = poly_sub(r0, poly_mul(quot, r1, p_), p_);
    Coeffs s2 = poly_sub(s0, poly_mul(quot, s1, p_), p_);
    r0 = std::exchange(r1, std::move(r2));
    s0 = std::exchange(s1, std::move(s2));
  }
  // r0 is a nonzero constant.
  const std::uint32_t scale = inv_mod(r0.front(), p_);
  for (auto& c : s0) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * scale % p_);
  return from_coefficients(s0);
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return Elem{inverse_[a.v]};
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem Field::from_integer(std::int64_t z) const {
  std::int64_t r = z % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(k_)) {
    // Reduce modulo the modulus first.
    if (k_ == 1) {
      return from_integer(coeffs.empty() ? 0 : coeffs.front());
    }
    Coeffs c = coeffs;
    for (auto& x : c) x %= p_;
    return from_coefficients(poly_rem(c, modulus_, p_));
  }
  std::uint32_t out = 0, scale = 1;
  for (auto c : coeffs) {
    out += (c % p_) * scale;
    scale *= p_;
  }
  return Elem{out};
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(k_), 0);
  std::uint32_t x = a.v;
  for (int i = 0; i < k_; ++i) {
    out[static_cast<std::size_t>(i)] = x % p_;
    x /= p_;
  }
  return out;
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out;
  out.reserve(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out.emplace_back(i);
  return out;
}

std::string Field::to_string(Elem a, const std::string& symbol) const {
  if (k_ == 1) return std::to_string(a.v);
  if (a.is_zero()) return "0";
  const auto coeffs = coefficients(a);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << coeffs[i];
      continue;
    }
    if (coeffs[i] != 1) os << coeffs[i];
    os << symbol;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
}

}  // namespace ffmc
