#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffmc/explain.hpp"
#include "support.hpp"

using namespace ffmc;
using testing::C;
using testing::P;

namespace {

bool holds_at(const Constraint& c, std::span<const Elem> xi) { return c.holds(c.poly.evaluate(xi)); }

// Independent check: every output false at alpha, of level < k, and every zero of the
// system in F_q^k is covered by some output.
bool covers(const FieldPtr& F, const PolySystem& sys, std::span<const Elem> alpha, const std::vector<Constraint>& out) {
  for (const auto& c : out) {
    if (c.level() >= sys.k) return false;
    if (holds_at(c, alpha)) return false;
  }
  bool ok = true;
  testing::for_each_point(*F, sys.k, [&](const std::vector<Elem>& pt) {
    for (const auto& p : sys.eqs)
      if (!p.evaluate(pt).is_zero()) return;
    for (const auto& q : sys.neqs)
      if (q.evaluate(pt).is_zero()) return;
    const std::span<const Elem> xi(pt.data(), pt.size() - 1);
    bool hit = false;
    for (const auto& c : out) hit = hit || holds_at(c, xi);
    if (!hit) ok = false;
  });
  return ok;
}

bool extendable(const FieldPtr& F, const PolySystem& sys, std::span<const Elem> alpha) {
  std::vector<Elem> pt(alpha.begin(), alpha.end());
  pt.push_back(Elem{0});
  for (const Elem beta : F->elements()) {
    pt.back() = beta;
    bool zero = true;
    for (const auto& p : sys.eqs) zero = zero && p.evaluate(pt).is_zero();
    for (const auto& q : sys.neqs) zero = zero && !q.evaluate(pt).is_zero();
    if (zero) return true;
  }
  return false;
}

// Same zero set in F_q^n for both polynomials.
bool same_zeros(const FieldPtr& F, int n, const Polynomial& a, const Polynomial& b) {
  bool same = true;
  testing::for_each_point(*F, n, [&](const std::vector<Elem>& pt) {
    if (a.evaluate(pt).is_zero() != b.evaluate(pt).is_zero()) same = false;
  });
  return same;
}

}  // namespace

TEST_CASE("coefficient projection") {
  auto F = Field::prime(5);
  const std::vector<Elem> alpha{Elem{1}};
  const auto out = proj_coeff(P(F, "x1*x2 - x2 - 1"), 2, alpha);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == C(F, "x1 - 1 != 0"));
  PolySystem sys{{P(F, "x1*x2 - x2 - 1")}, {}, 2};
  CHECK(covers(F, sys, alpha, out));
}

TEST_CASE("coefficient projection covers over F_3") {
  std::mt19937_64 rng(21);
  auto F = Field::prime(3);
  int tried = 0;
  for (int iter = 0; iter < 400; ++iter) {
    auto a = testing::random_poly(rng, F, 2, 2, 4);
    if (a.is_zero() || a.lv() != 2) continue;
    for (const Elem x : F->elements()) {
      const std::vector<Elem> alpha{x};
      for (Rel rel : {Rel::Eq, Rel::Neq}) {
        PolySystem sys{{}, {}, 2};
        (rel == Rel::Eq ? sys.eqs : sys.neqs).push_back(a);
        if (extendable(F, sys, alpha)) continue;
        ++tried;
        CHECK(covers(F, sys, alpha, proj_coeff(a, 2, alpha)));
      }
    }
  }
  CHECK(tried > 50);
}

TEST_CASE("srs-based projection on the worked system") {
  auto F = Field::prime(5);
  PolySystem sys{{P(F, "x3^2 + x3*x2 + 4")}, {P(F, "x3*x2 + x1")}, 3};
  const std::vector<Elem> alpha{Elem{3}, Elem{1}};
  std::vector<std::string> trace;
  ExplainOptions opts;
  opts.trace = [&](const std::string& s) { trace.push_back(s); };
  const auto out = p_reg(sys, alpha, opts);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == C(F, "x2 = 0"));
  CHECK(out[1] == C(F, "-x2^2*x1 - x2^2 + x1^2 != 0"));
  // Reference value is -x2^4 + 2x2^2*x1; ours differs by the factor -x2, which is nonzero wherever
  // the first output fails, so the disjunction of the three is unchanged.
  CHECK(out[2].rel == Rel::Neq);
  CHECK(out[2].poly == P(F, "x2^3 - 2x2*x1"));
  const Polynomial printed = P(F, "-x2^4 + 2x2^2*x1");
  testing::for_each_point(*F, 2, [&](const std::vector<Elem>& pt) {
    auto any = [&](const Constraint& third) {
      return holds_at(out[0], pt) || holds_at(out[1], pt) || holds_at(third, pt);
    };
    CHECK(any(out[2]) == any(Constraint{printed, Rel::Neq}));
  });
  CHECK(covers(F, sys, alpha, out));
  CHECK(!trace.empty());
}

TEST_CASE("exit on a member below the top variable") {
  auto F = Field::prime(5);
  PolySystem sys{{P(F, "x1 - 2"), P(F, "x2^2 + x1")}, {}, 2};
  const std::vector<Elem> alpha{Elem{1}};
  const auto out = p_reg(sys, alpha);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == C(F, "x1 - 2 = 0"));
}

TEST_CASE("system without the top variable that alpha satisfies") {
  auto F = Field::prime(5);
  PolySystem sys{{P(F, "x1 - 1")}, {}, 2};
  const std::vector<Elem> alpha{Elem{1}};
  CHECK_THROWS_AS(p_reg(sys, alpha), Error);
}

TEST_CASE("weak projection on random systems") {
  std::mt19937_64 rng(1234);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto F = Field::of_order(q);
    const int k = q <= 3 ? 3 : 2;
    int tried = 0;
    for (int iter = 0; iter < 300; ++iter) {
      PolySystem sys{{}, {}, k};
      const int ne = 1 + static_cast<int>(testing::below(rng, 3));
      const int nq = static_cast<int>(testing::below(rng, 3));
      for (int i = 0; i < ne; ++i) sys.eqs.push_back(testing::random_poly(rng, F, k, 2, 3));
      for (int i = 0; i < nq; ++i) sys.neqs.push_back(testing::random_poly(rng, F, k, 2, 3));
      std::vector<Elem> alpha;
      for (int i = 1; i < k; ++i) alpha.push_back(Elem{static_cast<std::uint32_t>(testing::below(rng, q))});
      if (extendable(F, sys, alpha)) continue;
      ++tried;
      std::vector<Constraint> out;
      try {
        out = p_reg(sys, alpha);
      } catch (const Error& e) {
        FAIL("p_reg threw " << e.what());
      }
      const bool ok = covers(F, sys, alpha, out);
      if (!ok) {
        std::string s;
        for (auto& p : sys.eqs) s += " P:" + p.to_string();
        for (auto& p : sys.neqs) s += " Q:" + p.to_string();
        for (auto a : alpha) s += " a:" + F->to_string(a);
        FAIL_CHECK("not covering: q=" << q << s);
      }
    }
    CHECK(tried > 40);
  }
}

TEST_CASE("explanation of the motivating propagation") {
  auto F = Field::prime(5);
  ConstraintStore store(F);
  Trail M(store, 2);
  const Constraint c1 = C(F, "x1^2 - 1 = 0");
  const Constraint c2 = C(F, "x1*x2 - x2 - 1 = 0");
  M.push_decided(store.intern(c1));
  M.push_assignment(1, Elem{1});
  const Constraint f = c2.negate();
  const auto cs = build_conflict_system(f, M);
  REQUIRE(cs.A.size() == 1);
  CHECK(cs.A[0] == c2);
  CHECK(cs.sys.eqs.size() == 1);
  CHECK(cs.sys.neqs.empty());
  const Clause E = explain(f, M);
  REQUIRE(E.size() == 2);
  CHECK(E.literals[0] == Constraint{normal_poly(c2.poly), Rel::Neq});
  CHECK(E.literals[1] == C(F, "x1 - 1 != 0"));
  // f already on the trail
  M.push_propagated(store.intern(f), kLazy);
  CHECK_THROWS_AS(build_conflict_system(f, M), Error);
}

TEST_CASE("guard violation when the negation is compatible") {
  auto F = Field::prime(5);
  ConstraintStore store(F);
  Trail M(store, 2);
  M.push_assignment(1, Elem{2});
  CHECK_THROWS_AS(build_conflict_system(C(F, "x2 - 1 = 0"), M), Error);
}

TEST_CASE("finite basis normalization") {
  auto F = Field::prime(5);
  Clause a{{C(F, "x1^7 = 0")}};
  CHECK(finite_basis_normalize(a).literals == std::vector<Constraint>{C(F, "x1^3 = 0")});
  Clause b{{C(F, "x1^5 - x1 != 0"), C(F, "2x1 + 2 = 0"), C(F, "x1 + 1 = 0")}};
  const auto nb = finite_basis_normalize(b);
  CHECK(nb.literals == std::vector<Constraint>{C(F, "x1 + 1 = 0")});
  CHECK(finite_basis_normalize(nb) == nb);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    auto p = testing::random_poly(rng, F, 2, 9, 4);
    if (p.is_zero()) continue;
    CHECK(same_zeros(F, 2, p, normal_poly(p)));
  }
}

TEST_CASE("explanations are valid lemmas with false side literals") {
  std::mt19937_64 rng(99);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    auto F = Field::of_order(q);
    const int n = q == 5 ? 2 : 3;
    int made = 0;
    for (int iter = 0; iter < 400 && made < 60; ++iter) {
      ConstraintStore store(F);
      Trail M(store, n);
      for (int x = 1; x < n; ++x) M.push_assignment(x, Elem{static_cast<std::uint32_t>(testing::below(rng, q))});
      const int k = M.level();
      for (int j = 0; j < 2; ++j) {
        auto p = normal_poly(testing::random_poly(rng, F, k, 2, 3) + Polynomial::variable(F, k));
        if (p.is_zero() || p.lv() != k) continue;
        const Lit l = store.intern({p, testing::below(rng, 2) ? Rel::Eq : Rel::Neq});
        if (M.on_trail(l) || M.on_trail(negate(l)) || !M.compatible(l)) continue;
        M.push_decided(l);
      }
      auto g = normal_poly(testing::random_poly(rng, F, k, 2, 3));
      if (g.is_constant() || g.lv() != k) continue;
      Constraint f{g, Rel::Eq};
      const Lit lf = store.intern(f);
      if (M.on_trail(lf) || M.on_trail(negate(lf))) continue;
      if (M.compatible(negate(lf))) {
        f = f.negate();
        if (M.compatible(lf)) continue;
      }
      ++made;
      const Clause E = explain(f, M);
      CHECK(std::find(E.literals.begin(), E.literals.end(), f) != E.literals.end());
      for (const auto& c : E.literals) {
        if (c == f) continue;
        const Lit l = store.intern(c);
        CHECK(M.value(l) == Truth::False);
      }
      testing::for_each_point(*F, n, [&](const std::vector<Elem>& pt) {
        bool sat = false;
        for (const auto& c : E.literals) sat = sat || holds_at(c, pt);
        CHECK(sat);
      });
    }
    CHECK(made > 20);
  }
}
