#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "ffmc/bench.hpp"
#include "ffmc/oracle.hpp"
#include "ffmc/parse.hpp"

using namespace ffmc;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ffmc_bench_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("instance names") {
  BenchSpec s;
  s.family = Family::Craft;
  s.n = 32;
  s.c = 16;
  CHECK(instance_name(s, 4) == "craft_q3_n32_c16_4.ff");
  CHECK(family_from_string("RAND") == Family::Rand);
  CHECK_THROWS_AS(family_from_string("grid"), Error);
}

TEST_CASE("same seed, same instances") {
  for (Family fam : {Family::Rand, Family::Craft}) {
    BenchSpec s;
    s.family = fam;
    s.count = 5;
    s.seed = 11;
    const auto a = generate(s), b = generate(s);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(render(a[i]) == render(b[i]));
    s.seed = 12;
    CHECK(render(generate(s)[0]) != render(a[0]));
  }
}

TEST_CASE("rand shape") {
  BenchSpec s;
  s.n = 6;
  s.c = 7;
  s.count = 40;
  for (const auto& f : gen_rand(s)) {
    CHECK(f.clauses.size() == 7);
    bool constant_term = false;
    for (const auto& c : f.clauses) {
      REQUIRE(c.literals.size() == 1);
      const auto& p = c.literals[0].poly;
      CHECK(c.literals[0].rel == Rel::Eq);
      CHECK(!p.is_constant());
      CHECK(p.size() <= 8);
      CHECK(p.total_degree() <= 4);
      CHECK(p.lv() <= 6);
      if (p.terms().back().mono.is_one()) constant_term = true;
    }
    CHECK(constant_term);
  }
}

TEST_CASE("craft instances contain the hidden point") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    BenchSpec s;
    s.family = Family::Craft;
    s.q = q;
    s.n = 9;
    s.c = 9;
    s.count = 20;
    std::vector<std::vector<Elem>> hidden;
    const auto fs = gen_craft(s, hidden);
    REQUIRE(hidden.size() == fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      CHECK(check_model(fs[i], hidden[i]));
      for (const auto& c : fs[i].clauses) {
        CHECK(c.literals.size() == 1);
        CHECK(c.literals[0].poly.vars().size() <= 5);
        CHECK(!c.literals[0].poly.is_constant());
      }
    }
  }
}

TEST_CASE("rendered instances parse back") {
  for (std::uint32_t q : {3u, 4u, 9u}) {
    for (Family fam : {Family::Rand, Family::Craft}) {
      BenchSpec s;
      s.family = fam;
      s.q = q;
      s.n = 5;
      s.c = 5;
      s.count = 8;
      for (const auto& f : generate(s)) CHECK(parse_formula(render(f)) == f);
    }
  }
}

TEST_CASE("small instances agree with exhaustive search") {
  for (Family fam : {Family::Rand, Family::Craft}) {
    BenchSpec s;
    s.family = fam;
    s.n = 5;
    s.c = 5;
    s.count = 25;
    s.seed = 3;
    for (const auto& f : generate(s)) {
      const auto v = solve(f);
      CHECK(v.status == brute_solve(f).status);
      if (fam == Family::Craft) CHECK(v.status == Status::Sat);
    }
  }
}

TEST_CASE("bad field order") {
  BenchSpec s;
  s.q = 6;
  try {
    generate(s);
    FAIL("expected NotPrimePower");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrimePower);
  }
}

TEST_CASE("suite report") {
  const auto dir = scratch("suite");
  BenchSpec s;
  s.n = 4;
  s.c = 4;
  s.count = 6;
  const auto files = write_instances(s, dir);
  CHECK(files.size() == 6);
  s.family = Family::Craft;
  write_instances(s, dir);

  const auto one = run_suite(dir, 30, {}, 1);
  const auto four = run_suite(dir, 30, {}, 4);
  REQUIRE(one.records.size() == 12);
  REQUIRE(four.records.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(one.records[i].name == four.records[i].name);
    CHECK(one.records[i].status == four.records[i].status);
    CHECK(one.records[i].stats.learned == four.records[i].stats.learned);
  }
  CHECK(one.records.front().name == "craft_q3_n4_c4_0.ff");
  const auto table = one.table();
  CHECK(table.find("craft") != std::string::npos);
  CHECK(table.find("6/6") != std::string::npos);
  const auto lines = one.jsonl();
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 12);
  CHECK(lines.find("\"verdict\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}
