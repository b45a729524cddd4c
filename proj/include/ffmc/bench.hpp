#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ffmc/engine.hpp"
#include "ffmc/formula.hpp"

namespace ffmc {

enum class Family { Rand, Craft };
std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

struct BenchSpec {
  Family family = Family::Rand;
  std::uint32_t q = 3;
  int n = 8;
  int c = 8;
  int count = 25;
  std::uint64_t seed = 1;
};

/// Unit clauses of equality atoms, total degree <= 4, 2..8 terms with nonzero coefficients.
/// At least one polynomial per system has a nonzero constant term.
std::vector<Formula> gen_rand(const BenchSpec& spec);

/// Unit clauses whose polynomials are products of (x_i - z) factors over up to 5 variables,
/// built so that a hidden assignment satisfies every clause.
std::vector<Formula> gen_craft(const BenchSpec& spec);

/// Also returns the hidden assignments of gen_craft, one per formula.
std::vector<Formula> gen_craft(const BenchSpec& spec, std::vector<std::vector<Elem>>& hidden);

std::vector<Formula> generate(const BenchSpec& spec);

/// `<family>_q<q>_n<n>_c<c>_<idx>.ff`
std::string instance_name(const BenchSpec& spec, int idx);

/// Writes the instances into dir (created if missing) and returns the paths.
std::vector<std::filesystem::path> write_instances(const BenchSpec& spec, const std::filesystem::path& dir);

/// Flat JSON object with the counters and time_ms.
std::string stats_json(const Stats& s);

struct BenchRecord {
  std::string name;
  Status status = Status::ResourceOut;
  std::string reason;
  double time_ms = 0;
  Stats stats;
};

struct BenchReport {
  std::vector<BenchRecord> records;  // sorted by name
  /// Aligned text table: one row per (family, q, n, c) with solved/total.
  std::string table() const;
  /// One JSON object per line.
  std::string jsonl() const;
};

/// Solves every *.ff file in dir with the given per-instance timeout. Instances run on
/// `jobs` threads; the report order does not depend on it.
BenchReport run_suite(const std::filesystem::path& dir, double timeout_s, const Config& cfg = {}, int jobs = 1);

}  // namespace ffmc
