// ffmc solve|gen|bench
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ffmc/bench.hpp"
#include "ffmc/engine.hpp"
#include "ffmc/oracle.hpp"
#include "ffmc/parse.hpp"

namespace {

using namespace ffmc;

constexpr int kSat = 10, kUnsat = 20, kUnknown = 30, kError = 1;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Semantic, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<int> parse_order(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Semantic, "bad --var-order entry '" + tok + "'");
    }
  }
  return out;
}

struct SolveArgs {
  std::string path;
  std::string var_order;
  std::uint64_t max_steps = 10'000'000;
  double timeout = 0;
  bool stats = false, check = false, oracle = false, trace = false;
};

int cmd_solve(const SolveArgs& a) {
  const Formula F = parse_formula(read_file(a.path));
  Config cfg;
  if (!a.var_order.empty()) cfg.var_order = parse_order(a.var_order);
  cfg.max_steps = a.max_steps;
  if (a.timeout > 0) cfg.timeout_s = a.timeout;
  if (a.check) cfg.check_level = CheckLevel::Final;
  if (a.trace) cfg.trace_explain = [](const std::string& line) { std::cerr << line << '\n'; };
  const Verdict v = solve(F, cfg);

  std::cout << to_string(v.status) << '\n';
  if (v.status == Status::Sat)
    for (int i = 0; i < F.nvars; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      std::cout << (idx < F.names.size() ? F.names[idx] : "x" + std::to_string(i + 1)) << " = "
                << F.field->to_string(v.model[idx]) << '\n';
    }
  if (v.status == Status::ResourceOut && !v.reason.empty()) std::cerr << "reason: " << v.reason << '\n';
  int rc = v.status == Status::Sat ? kSat : v.status == Status::Unsat ? kUnsat : kUnknown;
  if (a.check && v.status == Status::Sat) {
    const bool ok = check_model(F, v.model);
    std::cout << "model: " << (ok ? "ok" : "FAILED") << '\n';
    if (!ok) rc = kError;
  }
  if (a.oracle) {
    try {
      const Verdict o = brute_solve(F);
      if (v.status == Status::ResourceOut)
        std::cout << "oracle: " << to_string(o.status) << '\n';
      else if (o.status == v.status)
        std::cout << "oracle: agree\n";
      else {
        std::cout << "oracle: disagree (" << to_string(o.status) << ")\n";
        rc = kError;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      std::cout << "oracle: skipped (search space too large)\n";
    }
  }
  if (a.stats) std::cout << stats_json(v.stats) << '\n';
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MCSAT solver for polynomial constraints over finite fields"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "decide one instance file");
  solve_cmd->add_option("file", sa.path)->required();
  solve_cmd->add_flag("--stats", sa.stats, "print search statistics as JSON");
  solve_cmd->add_option("--var-order", sa.var_order, "comma separated variable indices, 1-based");
  solve_cmd->add_option("--max-steps", sa.max_steps);
  solve_cmd->add_option("--timeout", sa.timeout, "seconds");
  solve_cmd->add_flag("--check-model", sa.check);
  solve_cmd->add_flag("--oracle", sa.oracle, "compare with exhaustive search when small enough");
  solve_cmd->add_flag("--trace-explain", sa.trace, "decomposition trace on stderr");

  BenchSpec spec;
  std::string family = "rand", out_dir = ".";
  auto* gen_cmd = app.add_subcommand("gen", "write random or crafted instances");
  gen_cmd->add_option("--family", family, "rand or craft");
  gen_cmd->add_option("--q", spec.q);
  gen_cmd->add_option("--n", spec.n);
  gen_cmd->add_option("--c", spec.c);
  gen_cmd->add_option("--count", spec.count);
  gen_cmd->add_option("--seed", spec.seed);
  gen_cmd->add_option("--out", out_dir);

  std::string bench_dir;
  double bench_timeout = 300;
  int jobs = 1;
  std::string jsonl_path;
  auto* bench_cmd = app.add_subcommand("bench", "solve every .ff file in a directory");
  bench_cmd->add_option("dir", bench_dir)->required();
  bench_cmd->add_option("--timeout", bench_timeout, "seconds per instance");
  bench_cmd->add_option("--jobs", jobs, "worker threads, 0 for all cores");
  bench_cmd->add_option("--jsonl", jsonl_path, "write per-instance records here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*gen_cmd) {
      spec.family = family_from_string(family);
      const auto files = write_instances(spec, out_dir);
      std::cout << "wrote " << files.size() << " instances to " << out_dir << '\n';
      return 0;
    }
    if (*bench_cmd) {
      if (jobs <= 0) jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
      const BenchReport r = run_suite(bench_dir, bench_timeout, Config{}, jobs);
      std::cout << r.table();
      if (jsonl_path.empty()) {
        std::cout << r.jsonl();
      } else {
        std::ofstream os(jsonl_path, std::ios::binary);
        os << r.jsonl();
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
