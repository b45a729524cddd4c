#include "ffmc/oracle.hpp"

namespace ffmc {

namespace {

void check_cap(const Field& F, int n, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= F.order();
    if (size > cap) throw Error(ErrorKind::CapExceeded, "search space exceeds " + std::to_string(cap) + " points");
  }
}

// Visits F_q^n in lexicographic order until fn returns false.
template <class Fn>
void enumerate(const Field& F, int n, Fn&& fn) {
  std::vector<Elem> pt(static_cast<std::size_t>(n), Elem{0});
  for (;;) {
    if (!fn(static_cast<const std::vector<Elem>&>(pt))) return;
    int i = n - 1;
    for (; i >= 0; --i) {
      auto& v = pt[static_cast<std::size_t>(i)].v;
      if (++v < F.order()) break;
      v = 0;
    }
    if (i < 0) return;
  }
}

bool holds(const Constraint& c, std::span<const Elem> pt) { return c.holds(c.poly.evaluate(pt)); }

}  // namespace

Verdict brute_solve(const Formula& F, std::uint64_t cap) {
  check_cap(*F.field, F.nvars, cap);
  Verdict v;
  v.status = Status::Unsat;
  enumerate(*F.field, F.nvars, [&](const std::vector<Elem>& pt) {
    if (!check_model(F, pt)) return true;
    v.status = Status::Sat;
    v.model = pt;
    return false;
  });
  return v;
}

std::vector<std::vector<Elem>> enumerate_zeros(const FieldPtr& F, const PolySystem& sys, std::uint64_t cap) {
  check_cap(*F, sys.k, cap);
  std::vector<std::vector<Elem>> out;
  enumerate(*F, sys.k, [&](const std::vector<Elem>& pt) {
    for (const auto& p : sys.eqs)
      if (!p.evaluate(pt).is_zero()) return true;
    for (const auto& q : sys.neqs)
      if (q.evaluate(pt).is_zero()) return true;
    out.push_back(pt);
    return true;
  });
  return out;
}

bool check_weak_projection(const FieldPtr& F, const PolySystem& sys, std::span<const Elem> alpha,
                           const std::vector<Constraint>& C, std::uint64_t cap) {
  for (const auto& c : C)
    if (c.level() >= sys.k || holds(c, alpha)) return false;
  for (const auto& z : enumerate_zeros(F, sys, cap)) {
    const std::span<const Elem> xi(z.data(), z.size() - 1);
    bool hit = false;
    for (const auto& c : C)
      if (holds(c, xi)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool is_valid_lemma(const FieldPtr& F, int n, const Clause& c, std::uint64_t cap) {
  check_cap(*F, n, cap);
  bool valid = true;
  enumerate(*F, n, [&](const std::vector<Elem>& pt) {
    for (const auto& f : c.literals)
      if (holds(f, pt)) return true;
    valid = false;
    return false;
  });
  return valid;
}

}  // namespace ffmc
