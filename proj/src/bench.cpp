#include "ffmc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "ffmc/parse.hpp"

namespace ffmc {

std::string_view to_string(Family f) { return f == Family::Rand ? "rand" : "craft"; }

Family family_from_string(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "rand") return Family::Rand;
  if (t == "craft") return Family::Craft;
  throw Error(ErrorKind::Semantic, "unknown family '" + std::string(s) + "'");
}

namespace {

// mt19937_64 output is fixed by the standard; the reduction to a range is done here
// (rejection sampling) because std distributions differ between library vendors.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do r = rng();
  while (r >= limit);
  return r % n;
}

int uniform_in(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

void check_spec(const BenchSpec& spec) {
  if (spec.n <= 0 || spec.c <= 0 || spec.count < 0) throw Error(ErrorKind::Semantic, "bench parameters must be positive");
}

Formula empty_formula(const FieldPtr& F, int n) {
  Formula out;
  out.field = F;
  out.nvars = n;
  for (int i = 1; i <= n; ++i) out.names.push_back("x" + std::to_string(i));
  return out;
}

// Exponent vectors of total degree <= d in n variables, in a fixed order.
void monomials(int n, int d, std::vector<Monomial::Factor>& cur, int x, std::vector<Monomial>& out) {
  if (x > n) {
    out.push_back(Monomial::from_factors(cur));
    return;
  }
  for (int e = 0; e <= d; ++e) {
    if (e) cur.emplace_back(x, e);
    monomials(n, d - e, cur, x + 1, out);
    if (e) cur.pop_back();
  }
}

Elem nonzero(std::mt19937_64& rng, const Field& F) { return Elem{1 + static_cast<std::uint32_t>(uniform(rng, F.order() - 1))}; }

}  // namespace

std::vector<Formula> gen_rand(const BenchSpec& spec) {
  check_spec(spec);
  auto F = Field::of_order(spec.q);
  std::vector<Monomial> monos;
  std::vector<Monomial::Factor> cur;
  monomials(spec.n, 4, cur, 1, monos);
  std::mt19937_64 rng(spec.seed);
  auto draw = [&] {
    const int terms = uniform_in(rng, 2, 8);
    std::vector<Term> ts;
    for (int t = 0; t < terms; ++t) ts.push_back({monos[uniform(rng, monos.size())], nonzero(rng, *F)});
    return Polynomial::from_terms(F, std::move(ts));
  };
  auto has_constant = [](const Polynomial& p) { return !p.is_zero() && p.terms().back().mono.is_one(); };
  std::vector<Formula> out;
  for (int i = 0; i < spec.count; ++i) {
    Formula f = empty_formula(F, spec.n);
    std::vector<Polynomial> ps;
    for (int j = 0; j < spec.c; ++j) {
      Polynomial p = draw();
      while (p.is_constant()) p = draw();
      ps.push_back(std::move(p));
    }
    if (std::none_of(ps.begin(), ps.end(), has_constant)) {
      Polynomial p = draw();
      while (!has_constant(p) || p.is_constant()) p = draw();
      ps.back() = std::move(p);
    }
    for (auto& p : ps) f.clauses.push_back(Clause{{Constraint{std::move(p), Rel::Eq}}});
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Formula> gen_craft(const BenchSpec& spec, std::vector<std::vector<Elem>>& hidden) {
  check_spec(spec);
  auto F = Field::of_order(spec.q);
  std::mt19937_64 rng(spec.seed);
  const std::uint32_t q = F->order();
  // q zeros would make the factor vanish identically.
  const int max_zeros = static_cast<int>(std::min<std::uint32_t>(3, q - 1));
  std::vector<Formula> out;
  hidden.clear();
  for (int i = 0; i < spec.count; ++i) {
    Formula f = empty_formula(F, spec.n);
    std::vector<Elem> sigma;
    for (int x = 0; x < spec.n; ++x) sigma.push_back(Elem{static_cast<std::uint32_t>(uniform(rng, q))});
    for (int j = 0; j < spec.c; ++j) {
      std::vector<int> vars(static_cast<std::size_t>(spec.n));
      for (int x = 0; x < spec.n; ++x) vars[static_cast<std::size_t>(x)] = x + 1;
      const int take = uniform_in(rng, 1, std::min(5, spec.n));
      for (int t = 0; t < take; ++t)
        std::swap(vars[static_cast<std::size_t>(t)], vars[static_cast<std::size_t>(t) + uniform(rng, vars.size() - static_cast<std::size_t>(t))]);
      vars.resize(static_cast<std::size_t>(take));
      const int planted = uniform_in(rng, 0, take - 1);
      Polynomial p = Polynomial::constant(F, F->one());
      for (int t = 0; t < take; ++t) {
        const int x = vars[static_cast<std::size_t>(t)];
        const int nz = uniform_in(rng, 1, max_zeros);
        std::vector<Elem> zeros;
        if (t == planted) zeros.push_back(sigma[static_cast<std::size_t>(x) - 1]);
        while (static_cast<int>(zeros.size()) < nz) {
          const Elem z{static_cast<std::uint32_t>(uniform(rng, q))};
          if (std::find(zeros.begin(), zeros.end(), z) == zeros.end()) zeros.push_back(z);
        }
        for (const Elem z : zeros) p = p * (Polynomial::variable(F, x) - Polynomial::constant(F, z));
      }
      f.clauses.push_back(Clause{{Constraint{std::move(p), Rel::Eq}}});
    }
    hidden.push_back(std::move(sigma));
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Formula> gen_craft(const BenchSpec& spec) {
  std::vector<std::vector<Elem>> hidden;
  return gen_craft(spec, hidden);
}

std::vector<Formula> generate(const BenchSpec& spec) {
  return spec.family == Family::Rand ? gen_rand(spec) : gen_craft(spec);
}

std::string instance_name(const BenchSpec& spec, int idx) {
  std::ostringstream os;
  os << to_string(spec.family) << "_q" << spec.q << "_n" << spec.n << "_c" << spec.c << '_' << idx << ".ff";
  return os.str();
}

std::vector<std::filesystem::path> write_instances(const BenchSpec& spec, const std::filesystem::path& dir) {
  const auto formulas = generate(spec);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    auto path = dir / instance_name(spec, static_cast<int>(i));
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::Semantic, "cannot write " + path.string());
    os << render(formulas[i]);
    out.push_back(std::move(path));
  }
  return out;
}

std::string stats_json(const Stats& s) {
  nlohmann::ordered_json j;
  j["decisions"] = s.decisions;
  j["propagations"] = s.propagations;
  j["t_propagations"] = s.t_propagations;
  j["conflicts"] = s.conflicts;
  j["learned"] = s.learned;
  j["explanations"] = s.explanations;
  j["time_ms"] = s.time_ms;
  return j.dump();
}

namespace {

BenchRecord run_one(const std::filesystem::path& path, double timeout_s, Config cfg) {
  BenchRecord r;
  r.name = path.filename().string();
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  cfg.timeout_s = timeout_s;
  try {
    const Verdict v = solve(parse_formula(ss.str()), cfg);
    r.status = v.status;
    r.reason = v.reason;
    r.stats = v.stats;
    r.time_ms = v.stats.time_ms;
  } catch (const Error& e) {
    r.status = Status::ResourceOut;
    r.reason = e.what();
  }
  return r;
}

// rand_q3_n8_c8_4.ff -> ("rand", 3, 8, 8); anything else lands in its own row.
std::tuple<std::string, long, long, long> row_key(const std::string& name) {
  std::string fam;
  long q = 0, n = 0, c = 0;
  char buf[16] = {};
  if (std::sscanf(name.c_str(), "%15[a-z]_q%ld_n%ld_c%ld_", buf, &q, &n, &c) == 4) return {buf, q, n, c};
  return {name, 0, 0, 0};
}

}  // namespace

BenchReport run_suite(const std::filesystem::path& dir, double timeout_s, const Config& cfg, int jobs) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::exists(dir))
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".ff") files.push_back(e.path());
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  BenchReport report;
  report.records.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) report.records[i] = run_one(files[i], timeout_s, cfg);
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

std::string BenchReport::table() const {
  struct Row {
    int solved = 0, total = 0;
    double time_ms = 0;
  };
  std::map<std::tuple<std::string, long, long, long>, Row> rows;
  for (const auto& r : records) {
    auto& row = rows[row_key(r.name)];
    ++row.total;
    if (r.status != Status::ResourceOut) {
      ++row.solved;
      row.time_ms += r.time_ms;
    }
  }
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %4s %4s %4s %8s %12s\n", "Type", "q", "n", "c", "solved", "avg ms");
  os << line;
  for (const auto& [key, row] : rows) {
    const auto& [fam, q, n, c] = key;
    std::snprintf(line, sizeof line, "%-8s %4ld %4ld %4ld %5d/%-2d %12.1f\n", fam.c_str(), q, n, c, row.solved, row.total,
                  row.solved ? row.time_ms / row.solved : 0.0);
    os << line;
  }
  return os.str();
}

std::string BenchReport::jsonl() const {
  std::ostringstream os;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["verdict"] = std::string(to_string(r.status));
    j["time_ms"] = r.time_ms;
    j["stats"] = nlohmann::ordered_json::parse(stats_json(r.stats));
    if (!r.reason.empty()) j["reason"] = r.reason;
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace ffmc
