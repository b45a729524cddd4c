#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffmc/explain.hpp"
#include "ffmc/formula.hpp"

namespace ffmc {

enum class CheckLevel { None, Final, EveryTransition };

/// Data handed to Config::on_explain for every explanation produced during resolution.
/// `level_constraints` are the trail constraints of level k at propagation time.
struct ExplanationEvent {
  const Clause& clause;
  const Constraint& propagated;
  std::span<const Elem> alpha;
  int k;
  std::vector<Constraint> level_constraints;
};

struct Config {
  /// var_order[i] is the input variable solved as the (i+1)-th one. Empty means input order.
  std::vector<int> var_order;
  std::uint64_t max_steps = 10'000'000;
  std::optional<double> timeout_s;
  CheckLevel check_level = CheckLevel::None;
  /// Decomposition trace, forwarded to the explanation procedure.
  TraceSink trace_explain;
  std::function<void(const ExplanationEvent&)> on_explain;
  /// Called with every clause added to the database by conflict analysis.
  std::function<void(const Clause&)> on_learn;
  std::size_t max_explain_calls = 100000;
  /// Explain with a minimal subset of the level-k trail constraints instead of all of them.
  bool minimize_core = true;
};

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;  // boolean
  std::uint64_t t_propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned = 0;
  std::uint64_t explanations = 0;
  double time_ms = 0;
};

enum class Status { Sat, Unsat, ResourceOut };
std::string_view to_string(Status s);

struct Verdict {
  Status status = Status::ResourceOut;
  /// Values of x_1..x_n in input order when Sat.
  std::vector<Elem> model;
  std::string reason;
  Stats stats;
};

/// Decides F. ResourceOut when the step budget, the timeout or the explanation budget runs out.
Verdict solve(const Formula& F, const Config& cfg = {});

/// (C \ {not f}) u (E \ {f}); PivotMissing unless not f in C and f in E.
Clause resolve(const Clause& C, const Clause& E, const Constraint& f);

}  // namespace ffmc
