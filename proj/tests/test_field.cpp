#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ffmc/field.hpp"

using namespace ffmc;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("prime field construction") {
  auto F5 = Field::prime(5);
  CHECK(F5->order() == 5);
  CHECK(F5->elements().size() == 5);
  CHECK(Field::prime(2)->order() == 2);
  CHECK(kind_of([] { Field::prime(4); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { Field::prime(1); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { Field::of_order(6); }) == ErrorKind::NotPrimePower);
  CHECK(kind_of([] { Field::prime(1048583); }) == ErrorKind::FieldTooLarge);
}

TEST_CASE("prime field arithmetic") {
  auto F = Field::prime(5);
  CHECK(F->add(Elem{2}, Elem{3}) == Elem{0});
  CHECK(F->mul(Elem{3}, Elem{4}) == Elem{2});
  CHECK(F->inv(Elem{2}) == Elem{3});
  CHECK(F->div(Elem{1}, Elem{2}) == Elem{3});
  CHECK(F->from_integer(-1) == Elem{4});
  CHECK(F->from_integer(7) == Elem{2});
  CHECK(kind_of([&] { F->inv(Elem{0}); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("extension fields") {
  auto F4 = Field::extension(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  CHECK(F4->order() == 4);
  const Elem a = F4->generator();
  const Elem a1 = F4->add(a, F4->one());
  CHECK(F4->mul(a1, a1) == a);
  CHECK(F4->to_string(a1) == "1+a");
  CHECK(F4->from_integer(3) == F4->one());
  std::vector<std::string> names;
  for (auto e : F4->elements()) names.push_back(F4->to_string(e));
  CHECK(names == std::vector<std::string>{"0", "1", "a", "1+a"});

  CHECK(kind_of([] { Field::extension(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }) == ErrorKind::NotIrreducible);

  auto F9 = Field::extension(3, 2);
  CHECK(F9->order() == 9);
  CHECK(F9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(F9->elements().size() == 9);
  CHECK(*Field::of_order(9) == *F9);
}

TEST_CASE("irreducibility test") {
  CHECK(Field::is_irreducible(2, {1, 1, 1}));
  CHECK_FALSE(Field::is_irreducible(2, {1, 0, 1}));
  CHECK(Field::is_irreducible(2, {1, 1, 0, 1}));
  CHECK_FALSE(Field::is_irreducible(3, {2, 0, 1}));  // x^2 - 1
  CHECK(Field::is_irreducible(3, {1, 0, 1}));
}

TEST_CASE("field axioms exhaustively for small orders") {
  for (int q : {2, 3, 4, 5, 8, 9}) {
    auto F = Field::of_order(q);
    const auto els = F->elements();
    std::set<std::uint32_t> distinct;
    for (auto e : els) distinct.insert(e.v);
    CHECK(distinct.size() == static_cast<std::size_t>(q));
    std::size_t failures = 0;
    for (auto a : els) {
      if (F->add(a, F->neg(a)) != F->zero()) ++failures;
      if (F->add(a, F->zero()) != a || F->mul(a, F->one()) != a) ++failures;
      if (!a.is_zero() && F->mul(a, F->inv(a)) != F->one()) ++failures;
      for (auto b : els) {
        if (F->add(a, b) != F->add(b, a) || F->mul(a, b) != F->mul(b, a)) ++failures;
        if (F->sub(F->add(a, b), b) != a) ++failures;
        for (auto c : els) {
          if (F->add(F->add(a, b), c) != F->add(a, F->add(b, c))) ++failures;
          if (F->mul(F->mul(a, b), c) != F->mul(a, F->mul(b, c))) ++failures;
          if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c))) ++failures;
        }
      }
    }
    INFO("q = " << q);
    CHECK(failures == 0);
  }
}

TEST_CASE("generalized Fermat a^q = a") {
  std::size_t failures = 0;
  for (int q = 2; q <= 211; ++q) {
    std::shared_ptr<const Field> F;
    try {
      F = Field::of_order(q);
    } catch (const Error&) {
      continue;
    }
    for (auto a : F->elements())
      if (F->pow(a, static_cast<std::uint64_t>(q)) != a) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("sampled axioms for a larger extension") {
  auto F = Field::of_order(343);  // 7^3, beyond the add-table size
  for (std::uint32_t a = 0; a < 343; a += 7)
    for (std::uint32_t b = 1; b < 343; b += 11) {
      const Elem x{a}, y{b};
      CHECK(F->mul(F->div(x, y), y) == x);
      CHECK(F->sub(F->add(x, y), y) == x);
    }
}
