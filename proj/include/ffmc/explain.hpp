#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffmc/formula.hpp"
#include "ffmc/trail.hpp"

namespace ffmc {

/// (P, Q): zeros of every member of P that are not zeros of any member of Q, over F_q^k.
struct PolySystem {
  std::vector<Polynomial> eqs;
  std::vector<Polynomial> neqs;
  int k = 0;
};

using TraceSink = std::function<void(const std::string&)>;

struct ExplainOptions {
  /// Receives one line per decomposition step when set.
  TraceSink trace;
  /// Upper bound on recursive P_Reg calls before StepLimit is raised.
  std::size_t max_calls = 100000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Shrink A to a subset of the trail constraints that still leaves no feasible value for
  /// x_k together with not-f. Any such subset yields a valid explanation.
  bool minimize_core = false;
};

/// Coefficient projection of a single polynomial a of level k: one constraint
/// c_i - c_i(alpha) != 0 per coefficient of a in x_k, omitting identically zero ones.
/// alpha must not extend to a zero of the single-polynomial system (either relation).
std::vector<Constraint> proj_coeff(const Polynomial& a, int k, std::span<const Elem> alpha);

/// SRS-guided weak projection of (P, Q) at alpha. Every returned constraint has level < k and is
/// false at alpha; every zero of the system satisfies at least one of them. Generated
/// constraints are left unnormalized; constant-false ones are omitted and duplicates merged.
std::vector<Constraint> p_reg(const PolySystem& sys, std::span<const Elem> alpha, const ExplainOptions& opts = {});

/// A (trail constraints of level k plus not-f) as a polynomial system, with alpha = the trail point.
struct ConflictSystem {
  std::vector<Constraint> A;
  PolySystem sys;
  std::vector<Elem> alpha;
};

/// Throws GuardViolated unless f is off the trail and not-f is incompatible with it.
ConflictSystem build_conflict_system(const Constraint& f, Trail& trail, bool minimize_core = false);

/// Explanation clause for propagating f on the trail: not-a for every a in A, plus the
/// excluding constraints from proj_coeff (|A| = 1) or p_reg (|A| > 1). Finite-basis normalized.
Clause explain(const Constraint& f, Trail& trail, const ExplainOptions& opts = {});

/// Exponents reduced via a^q = a, polynomials scaled monic, constant-false literals dropped,
/// duplicates merged.
Clause finite_basis_normalize(const Clause& E);

/// Monic, exponent-reduced form used to intern atoms.
Polynomial normal_poly(const Polynomial& p);

}  // namespace ffmc
