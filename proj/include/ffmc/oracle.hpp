#pragma once

#include <cstdint>
#include <vector>

#include "ffmc/engine.hpp"
#include "ffmc/explain.hpp"

namespace ffmc {

/// Exhaustive search in lexicographic element order. CapExceeded when q^n > cap.
Verdict brute_solve(const Formula& F, std::uint64_t cap = 1'000'000);

/// Points of F_q^k where every eqs member vanishes and no neqs member does.
std::vector<std::vector<Elem>> enumerate_zeros(const FieldPtr& F, const PolySystem& sys, std::uint64_t cap = 1'000'000);

/// Every constraint false at alpha, and every zero of sys covered by one of them at its
/// first k-1 coordinates.
bool check_weak_projection(const FieldPtr& F, const PolySystem& sys, std::span<const Elem> alpha,
                           const std::vector<Constraint>& C, std::uint64_t cap = 1'000'000);

/// True when no point of F_q^n falsifies the clause.
bool is_valid_lemma(const FieldPtr& F, int n, const Clause& c, std::uint64_t cap = 1'000'000);

}  // namespace ffmc
