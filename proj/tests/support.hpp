#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "ffmc/parse.hpp"

namespace testing {

using namespace ffmc;

inline Polynomial P(const FieldPtr& F, std::string_view s) { return parse_polynomial(F, s); }
inline Constraint C(const FieldPtr& F, std::string_view s) { return parse_constraint(F, s); }

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

/// Random polynomial in x_1..x_n, each variable degree at most max_deg.
inline Polynomial random_poly(std::mt19937_64& rng, const FieldPtr& F, int n, int max_deg, int max_terms) {
  std::vector<Term> terms;
  const int count = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(max_terms)));
  for (int t = 0; t < count; ++t) {
    std::vector<Monomial::Factor> fs;
    for (int x = 1; x <= n; ++x) {
      const int e = static_cast<int>(below(rng, static_cast<std::uint64_t>(max_deg) + 1));
      if (e) fs.emplace_back(x, e);
    }
    terms.push_back({Monomial::from_factors(fs), Elem{static_cast<std::uint32_t>(below(rng, F->order()))}});
  }
  return Polynomial::from_terms(F, std::move(terms));
}

/// Calls fn(point) for every point of F^n in lexicographic element order.
template <class Fn>
void for_each_point(const Field& F, int n, Fn&& fn) {
  std::vector<Elem> point(static_cast<std::size_t>(n), Elem{0});
  for (;;) {
    fn(std::as_const(point));
    int i = n - 1;
    while (i >= 0) {
      auto& v = point[static_cast<std::size_t>(i)].v;
      if (++v < F.order()) break;
      v = 0;
      --i;
    }
    if (i < 0) return;
  }
}

}  // namespace testing
