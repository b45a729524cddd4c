#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffmc/oracle.hpp"
#include "support.hpp"

using namespace ffmc;
using testing::C;
using testing::P;

TEST_CASE("brute force") {
  const auto v = brute_solve(parse_formula("field 5\nvars x1 x2\nclause x1^2 - 1 = 0\nclause x1*x2 - x2 - 1 = 0\n"));
  CHECK(v.status == Status::Sat);
  CHECK(v.model == std::vector<Elem>{Elem{4}, Elem{2}});
  CHECK(brute_solve(parse_formula("field 3\nvars x\nclause x^2 - 2 = 0\n")).status == Status::Unsat);
  const auto e = brute_solve(parse_formula("field 3\nvars\n"));
  CHECK(e.status == Status::Sat);
  CHECK(e.model.empty());
  try {
    brute_solve(parse_formula("field 5\nvars a b c d e f g h i\n"));
    FAIL("expected CapExceeded");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("zero sets") {
  auto F = Field::prime(5);
  const auto z = enumerate_zeros(F, {{P(F, "x1^2 - 1")}, {}, 1});
  CHECK(z == std::vector<std::vector<Elem>>{{Elem{1}}, {Elem{4}}});
  CHECK(enumerate_zeros(F, {{}, {}, 2}).size() == 25);
  CHECK(enumerate_zeros(F, {{P(F, "1")}, {}, 2}).empty());
  const PolySystem sys{{P(F, "x2*x1 - 1")}, {P(F, "x1 - 2")}, 2};
  const auto a = enumerate_zeros(F, sys);
  const auto b = enumerate_zeros(F, {sys.eqs, {}, 2});
  for (const auto& pt : a) CHECK(std::find(b.begin(), b.end(), pt) != b.end());
  CHECK(a.size() == 3);
}

TEST_CASE("weak projection check") {
  auto F = Field::prime(5);
  const std::vector<Elem> one{Elem{1}};
  CHECK(check_weak_projection(F, {{P(F, "x1*x2 - x2 - 1")}, {}, 2}, one, {C(F, "x1 - 1 != 0")}));
  CHECK(!check_weak_projection(F, {{P(F, "x1*x2 - x2 - 1")}, {}, 2}, one, {}));
  const std::vector<Elem> alpha{Elem{3}, Elem{1}};
  const PolySystem sys{{P(F, "x3^2 + x3*x2 + 4")}, {P(F, "x3*x2 + x1")}, 3};
  CHECK(check_weak_projection(F, sys, alpha,
                              {C(F, "x2 = 0"), C(F, "-x2^2*x1 - x2^2 + x1^2 != 0"), C(F, "-x2^4 + 2x2^2*x1 != 0")}));
}

TEST_CASE("lemma validity") {
  auto F = Field::prime(3);
  CHECK(is_valid_lemma(F, 1, Clause{{C(F, "x1 = 0"), C(F, "x1 != 0")}}));
  CHECK(!is_valid_lemma(F, 1, Clause{{C(F, "x1 = 0")}}));
}
