#include "ffmc/explain.hpp"

#include <algorithm>

namespace ffmc {

namespace {

int level_of(const Polynomial& p) { return p.is_zero() ? 0 : p.lv(); }

class Decomposer {
 public:
  Decomposer(int k, std::span<const Elem> alpha, const ExplainOptions& opts) : k_(k), alpha_(alpha), opts_(opts) {}

  void run(std::vector<Polynomial> P, std::vector<Polynomial> Q) {
    if (++calls_ > opts_.max_calls) throw Error(ErrorKind::StepLimit, "decomposition exceeded its call budget");
    if (opts_.deadline && (calls_ & 63) == 0 && std::chrono::steady_clock::now() > *opts_.deadline)
      throw Error(ErrorKind::ResourceOut, "deadline reached during decomposition");

    std::erase_if(P, [](const Polynomial& p) { return p.is_zero(); });
    // Only zero sets over F_q matter, so x^q = x keeps pseudo-quotients from growing.
    for (auto& p : P) p = p.reduce_exponents();
    for (auto& q : Q) q = q.reduce_exponents();

    // Lines 1-2: a member below x_k already excludes alpha.
    for (const auto& p : P)
      if (level_of(p) < k_ && !zero_at(p)) {
        note(1, "exclude " + p.to_string() + " = 0");
        add(p, Rel::Eq);
        return;
      }
    for (const auto& q : Q)
      if (level_of(q) < k_ && zero_at(q)) {
        note(2, "exclude " + q.to_string() + " != 0");
        add(q, Rel::Neq);
        return;
      }

    std::vector<std::size_t> phat, qhat;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (level_of(P[i]) == k_) phat.push_back(i);
    for (std::size_t i = 0; i < Q.size(); ++i)
      if (level_of(Q[i]) == k_) qhat.push_back(i);

    if (!phat.empty()) {
      std::size_t pi = phat.front();
      for (auto i : phat)
        if (P[i].degree(k_) < P[pi].degree(k_)) pi = i;
      const Polynomial p = P[pi];

      if (guard(p.lc(k_), Rel::Eq, 5)) {
        P[pi] = p.red(k_);
        return run(std::move(P), std::move(Q));
      }

      if (phat.size() > 1) {
        const std::size_t pj = phat.front() == pi ? phat[1] : phat.front();
        const auto chain = srs_reduced(P[pj], p, k_);
        const auto lcs = leading_coeffs(chain);
        const std::size_t R = chain.size() - 1;
        std::vector<Polynomial> rest;
        for (std::size_t i = 0; i < P.size(); ++i)
          if (i != pi && i != pj) rest.push_back(P[i]);
        std::size_t top = R;
        if (chain[R].degree(k_) == 0) {
          if (guard(lcs[R - 1], Rel::Neq, 10)) {
            auto next = rest;
            next.push_back(chain[R]);
            next.push_back(chain[R - 1]);
            return run(std::move(next), std::move(Q));
          }
          top = R - 2;
        }
        for (std::size_t i = top + 1; i-- > 0;) {
          if (guard(lcs[i], Rel::Neq, 13)) {
            auto next = rest;
            next.push_back(chain[i]);
            for (std::size_t j = i + 1; j <= R; ++j) next.push_back(lcs[j]);
            return run(std::move(next), std::move(Q));
          }
        }
        throw Error(ErrorKind::Internal, "no subresultant guard held at alpha");
      }

      if (!qhat.empty()) {
        const std::size_t qi = qhat.front();
        const Polynomial q = Q[qi];
        std::vector<Polynomial> chain;
        if (q.degree(k_) >= p.degree(k_)) {
          chain = srs_reduced(q, p, k_);
        } else {
          if (guard(q.lc(k_), Rel::Eq, 16)) {
            Q[qi] = q.red(k_);
            return run(std::move(P), std::move(Q));
          }
          chain = srs_reduced(p, q, k_);
        }
        const auto lcs = leading_coeffs(chain);
        const std::size_t R = chain.size() - 1;
        std::vector<Polynomial> rest;
        for (std::size_t i = 0; i < P.size(); ++i)
          if (i != pi) rest.push_back(P[i]);
        std::size_t top = R + 1;
        if (chain[R].degree(k_) == 0) {
          if (guard(lcs[R], Rel::Neq, 18)) {
            rest.push_back(pquo(p, chain[R], k_));
            Q.erase(Q.begin() + static_cast<std::ptrdiff_t>(qi));
            return run(std::move(rest), std::move(Q));
          }
          top = R;
        }
        for (std::size_t i = top; i-- > 0;) {
          if (guard(lcs[i], Rel::Neq, 20)) {
            auto next = rest;
            next.push_back(pquo(p, chain[i], k_));
            for (std::size_t j = i + 1; j <= R; ++j) next.push_back(lcs[j]);
            return run(std::move(next), std::move(Q));
          }
        }
        throw Error(ErrorKind::Internal, "no subresultant guard held at alpha");
      }

      // Line 21: p is the only polynomial in x_k left.
      note(21, "project coefficients of " + p.to_string());
      for (const auto& c : proj_coeff(p, k_, alpha_)) add(c.poly, c.rel);
      return;
    }

    if (!qhat.empty()) {
      for (auto qi : qhat) {
        if (guard(Q[qi].lc(k_), Rel::Eq, 23)) {
          Q[qi] = Q[qi].red(k_);
          return run(std::move(P), std::move(Q));
        }
      }
      Polynomial prod = Polynomial::constant(Q.front().field(), Q.front().field()->one());
      for (auto qi : qhat) prod = (prod * Q[qi]).reduce_exponents();
      note(24, "project coefficients of the product " + prod.to_string());
      for (const auto& c : proj_coeff(prod, k_, alpha_)) add(c.poly, c.rel);
      return;
    }

    throw Error(ErrorKind::GuardViolated, "alpha extends to a zero of the system");
  }

  std::vector<Constraint> take() { return std::move(out_); }

 private:
  bool zero_at(const Polynomial& p) const { return p.evaluate(alpha_).is_zero(); }

  std::vector<Polynomial> leading_coeffs(const std::vector<Polynomial>& chain) const {
    std::vector<Polynomial> out;
    out.reserve(chain.size());
    for (const auto& h : chain) out.push_back(h.lc(k_));
    return out;
  }

  void note(int line, const std::string& what) const {
    if (opts_.trace) opts_.trace("line " + std::to_string(line) + ": " + what);
  }

  void add(const Polynomial& p, Rel rel) {
    if (p.is_constant()) return;  // false at alpha, hence false everywhere
    Constraint c{p, rel};
    if (std::find(out_.begin(), out_.end(), c) == out_.end()) out_.push_back(std::move(c));
  }

  // `return call if g rel 0`: when the guard holds at alpha, its negation is recorded and the
  // caller recurses; otherwise the guard itself is recorded and the caller falls through.
  bool guard(const Polynomial& g, Rel rel, int line) {
    const bool holds = (rel == Rel::Eq) == zero_at(g);
    note(line, "guard " + g.to_string() + (rel == Rel::Eq ? " = 0" : " != 0") + (holds ? " holds" : " fails"));
    add(g, holds ? (rel == Rel::Eq ? Rel::Neq : Rel::Eq) : rel);
    return holds;
  }

  int k_;
  std::span<const Elem> alpha_;
  const ExplainOptions& opts_;
  std::size_t calls_ = 0;
  std::vector<Constraint> out_;
};

}  // namespace

std::vector<Constraint> proj_coeff(const Polynomial& a, int k, std::span<const Elem> alpha) {
  std::vector<Constraint> out;
  const auto coeffs = a.coefficients(k);
  for (std::size_t d = coeffs.size(); d-- > 0;) {
    const auto& c = coeffs[d];
    if (c.is_zero()) continue;
    const Elem gamma = c.evaluate(alpha);
    Polynomial diff = c - Polynomial::constant(a.field(), gamma);
    if (diff.is_zero()) continue;
    Constraint f{std::move(diff), Rel::Neq};
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  }
  return out;
}

std::vector<Constraint> p_reg(const PolySystem& sys, std::span<const Elem> alpha, const ExplainOptions& opts) {
  Decomposer d(sys.k, alpha, opts);
  d.run(sys.eqs, sys.neqs);
  return d.take();
}

ConflictSystem build_conflict_system(const Constraint& f, Trail& trail, bool minimize_core) {
  const ConstraintStore& store = trail.store();
  const int k = trail.level();
  auto on_trail = trail.constraints_at_level(k);
  for (Lit l : on_trail)
    if (store.constraint(l) == f) throw Error(ErrorKind::GuardViolated, f.to_string() + " is already on the trail");
  const Constraint nf = f.negate();
  if (nf.level() > k) throw Error(ErrorKind::GuardViolated, f.to_string() + " is above the trail level");
  const std::uint32_t q = store.field()->order();
  ValueSet nf_values(q);
  for (const Elem beta : satisfying_values(nf, trail.point(), k)) nf_values.insert(beta);
  if (trail.feasible().intersects(nf_values))
    throw Error(ErrorKind::GuardViolated, "the negation of " + f.to_string() + " is compatible");

  if (minimize_core && on_trail.size() > 1) {
    // Greedy deletion, most expensive constraints first.
    std::vector<std::size_t> order(on_trail.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto cost = [&](std::size_t i) {
      const auto& p = store.poly(on_trail[i]);
      return std::pair{p.degree(k), p.size()};
    };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cost(a) > cost(b); });
    std::vector<bool> keep(on_trail.size(), true);
    for (std::size_t drop : order) {
      keep[drop] = false;
      ValueSet left = nf_values;
      for (std::size_t i = 0; i < on_trail.size() && !left.empty(); ++i)
        if (keep[i]) left &= trail.satisfying(on_trail[i]);
      if (!left.empty()) keep[drop] = true;
    }
    std::vector<Lit> core;
    for (std::size_t i = 0; i < on_trail.size(); ++i)
      if (keep[i]) core.push_back(on_trail[i]);
    on_trail = std::move(core);
  }

  ConflictSystem out;
  out.alpha = trail.point();
  out.sys.k = k;
  for (Lit l : on_trail) out.A.push_back(store.constraint(l));
  out.A.push_back(nf);
  for (const auto& a : out.A) (a.rel == Rel::Eq ? out.sys.eqs : out.sys.neqs).push_back(a.poly);
  return out;
}

Clause explain(const Constraint& f, Trail& trail, const ExplainOptions& opts) {
  const ConflictSystem cs = build_conflict_system(f, trail, opts.minimize_core);
  std::vector<Constraint> C;
  if (cs.A.size() == 1)
    C = proj_coeff(cs.A.front().poly, cs.sys.k, cs.alpha);
  else
    C = p_reg(cs.sys, cs.alpha, opts);
  Clause E;
  for (const auto& a : cs.A) E.literals.push_back(a.negate());
  for (auto& c : C) E.literals.push_back(std::move(c));
  return finite_basis_normalize(E);
}

Polynomial normal_poly(const Polynomial& p) { return p.reduce_exponents().monic(); }

Clause finite_basis_normalize(const Clause& E) {
  Clause out;
  for (const auto& f : E.literals) {
    Constraint g{normal_poly(f.poly), f.rel};
    if (g.is_constant() && !g.constant_truth()) continue;
    if (std::find(out.literals.begin(), out.literals.end(), g) == out.literals.end()) out.literals.push_back(std::move(g));
  }
  return out;
}

}  // namespace ffmc
