#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffmc/engine.hpp"
#include "ffmc/oracle.hpp"
#include "support.hpp"

using namespace ffmc;
using testing::C;

namespace {

const char* kMotivating = "field 5\nvars x1 x2\nclause x1^2 - 1 = 0\nclause x1*x2 - x2 - 1 = 0\n";

// Random clause set: each clause 1-3 literals over x1..xn, polynomials of small degree.
Formula random_formula(std::mt19937_64& rng, const FieldPtr& F, int n, int clauses) {
  Formula out;
  out.field = F;
  out.nvars = n;
  for (int i = 0; i < clauses; ++i) {
    Clause c;
    const int len = 1 + static_cast<int>(testing::below(rng, 3));
    for (int j = 0; j < len; ++j) {
      auto p = testing::random_poly(rng, F, n, 2, 3);
      c.literals.push_back({p, testing::below(rng, 3) ? Rel::Eq : Rel::Neq});
    }
    out.clauses.push_back(std::move(c));
  }
  return out;
}

// Every model of f satisfies c.
bool entailed(const Formula& f, const Clause& c) {
  bool ok = true;
  testing::for_each_point(*f.field, f.nvars, [&](const std::vector<Elem>& pt) {
    if (!ok || !check_model(f, pt)) return;
    bool hit = false;
    for (const auto& g : c.literals) hit = hit || g.holds(g.poly.evaluate(pt));
    ok = hit;
  });
  return ok;
}

}  // namespace

TEST_CASE("motivating formula") {
  const Formula F = parse_formula(kMotivating);
  Config cfg;
  cfg.check_level = CheckLevel::EveryTransition;
  const Verdict v = solve(F, cfg);
  REQUIRE(v.status == Status::Sat);
  CHECK(check_model(F, v.model));
  CHECK(v.model == std::vector<Elem>{Elem{4}, Elem{2}});
  CHECK(v.stats.learned >= 1);
  CHECK(v.stats.explanations >= 1);
  const std::vector<Elem> witness{Elem{4}, Elem{2}}, bad{Elem{1}, Elem{0}};
  CHECK(check_model(F, witness));
  CHECK(!check_model(F, bad));
}

TEST_CASE("learned clause of the motivating run") {
  const Formula F = parse_formula(kMotivating);
  std::vector<Clause> learned;
  Config cfg;
  cfg.on_learn = [&](const Clause& c) { learned.push_back(c); };
  solve(F, cfg);
  REQUIRE(!learned.empty());
  CHECK(learned.front().literals == std::vector<Constraint>{C(F.field, "x1 - 1 != 0")});
}

TEST_CASE("trivial verdicts") {
  CHECK(solve(parse_formula("field 5\nvars x1\nclause\n")).status == Status::Unsat);
  CHECK(solve(parse_formula("field 3\nvars x\nclause x^2 - 2 = 0\n")).status == Status::Unsat);
  const auto v = solve(parse_formula("field 3\nvars x y\n"));
  CHECK(v.status == Status::Sat);
  CHECK(v.model.size() == 2);
}

TEST_CASE("resolution") {
  auto F = Field::prime(5);
  const auto f = C(F, "x1 = 0"), g = C(F, "x2 = 0"), h = C(F, "x1 + x2 != 0");
  CHECK(resolve(Clause{{f.negate(), g}}, Clause{{f, h}}, f).literals == std::vector<Constraint>{g, h});
  CHECK(resolve(Clause{{f.negate()}}, Clause{{f}}, f).empty());
  const auto c2 = C(F, "x1*x2 - x2 - 1 = 0");
  const auto r = resolve(Clause{{c2}}, Clause{{c2.negate(), C(F, "x1 - 1 != 0")}}, c2.negate());
  CHECK(r.literals == std::vector<Constraint>{C(F, "x1 - 1 != 0")});
  try {
    resolve(Clause{{g}}, Clause{{f}}, f);
    FAIL("expected PivotMissing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PivotMissing);
  }
}

TEST_CASE("step budget") {
  Config cfg;
  cfg.max_steps = 3;
  const Verdict v = solve(parse_formula(kMotivating), cfg);
  CHECK(v.status == Status::ResourceOut);
}

TEST_CASE("variable order") {
  const Formula F = parse_formula(kMotivating);
  Config cfg;
  cfg.var_order = {2, 1};
  const Verdict v = solve(F, cfg);
  REQUIRE(v.status == Status::Sat);
  CHECK(check_model(F, v.model));
  cfg.var_order = {1, 1};
  CHECK_THROWS_AS(solve(F, cfg), Error);
}

TEST_CASE("agreement with exhaustive search") {
  std::mt19937_64 rng(2024);
  struct Shape {
    std::uint32_t q;
    int n, clauses;
  };
  int sat = 0, unsat = 0;
  for (const Shape s : {Shape{2, 4, 8}, Shape{3, 3, 6}, Shape{4, 3, 5}, Shape{5, 3, 5}, Shape{7, 2, 4}, Shape{9, 2, 4}}) {
    auto F = Field::of_order(s.q);
    for (int iter = 0; iter < 60; ++iter) {
      const Formula f = random_formula(rng, F, s.n, s.clauses);
      Config cfg;
      cfg.check_level = iter % 4 == 0 ? CheckLevel::EveryTransition : CheckLevel::Final;
      bool lemmas_ok = true;
      cfg.on_learn = [&](const Clause& c) { lemmas_ok = lemmas_ok && entailed(f, c); };
      cfg.on_explain = [&](const ExplanationEvent& e) { lemmas_ok = lemmas_ok && is_valid_lemma(F, s.n, e.clause); };
      const Verdict got = solve(f, cfg);
      const Verdict want = brute_solve(f);
      REQUIRE(got.status != Status::ResourceOut);
      CHECK(got.status == want.status);
      CHECK(lemmas_ok);
      if (got.status == Status::Sat) {
        ++sat;
        CHECK(check_model(f, got.model));
      } else {
        ++unsat;
      }
    }
  }
  CHECK(sat > 20);
  CHECK(unsat > 20);
}
