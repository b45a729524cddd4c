#include "ffmc/engine.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "ffmc/trail.hpp"

namespace ffmc {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::ResourceOut: return "unknown";
  }
  return "unknown";
}

Clause resolve(const Clause& C, const Clause& E, const Constraint& f) {
  const Constraint nf = f.negate();
  const bool in_c = std::find(C.literals.begin(), C.literals.end(), nf) != C.literals.end();
  const bool in_e = std::find(E.literals.begin(), E.literals.end(), f) != E.literals.end();
  if (!in_c || !in_e) throw Error(ErrorKind::PivotMissing, "pivot " + f.to_string() + " missing");
  Clause R;
  auto add = [&](const Constraint& g) {
    if (std::find(R.literals.begin(), R.literals.end(), g) == R.literals.end()) R.literals.push_back(g);
  };
  for (const auto& g : C.literals)
    if (!(g == nf)) add(g);
  for (const auto& g : E.literals)
    if (!(g == f)) add(g);
  return R;
}

namespace {

using Clock = std::chrono::steady_clock;

Polynomial rename(const Polynomial& p, const std::vector<int>& to) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto fs = t.mono.factors();
    for (auto& [x, e] : fs) x = to[static_cast<std::size_t>(x)];
    terms.push_back({Monomial::from_factors(std::move(fs)), t.coeff});
  }
  return Polynomial::from_terms(p.field(), std::move(terms));
}

struct SortedKeyHash {
  std::size_t operator()(const std::vector<Lit>& v) const {
    std::size_t h = v.size();
    for (Lit l : v) h = h * 0x9E3779B97F4A7C15ULL + l;
    return h;
  }
};

class Solver {
 public:
  Solver(const Formula& F, const Config& cfg)
      : F_(F), cfg_(cfg), store_(F.field), trail_(store_, F.nvars), start_(Clock::now()) {
    if (cfg.timeout_s) deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*cfg.timeout_s));
    xopts_.trace = cfg.trace_explain;
    xopts_.max_calls = cfg.max_explain_calls;
    xopts_.deadline = deadline_;
    xopts_.minimize_core = cfg.minimize_core;
  }

  Verdict run() {
    Verdict v;
    try {
      v = loop();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StepLimit && e.kind() != ErrorKind::ResourceOut) throw;
      v.status = Status::ResourceOut;
      v.reason = e.what();
    }
    stats_.time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    v.stats = stats_;
    return v;
  }

 private:
  enum class Mode { Search, Focus, Conflict };

  // Interns a clause after normalization; returns false when it is trivially true.
  bool to_lits(const Clause& c, std::vector<Lit>& out) {
    out.clear();
    for (const auto& f : c.literals) {
      Constraint g{normal_poly(f.poly), f.rel};
      if (g.is_constant()) {
        if (g.constant_truth()) return false;
        continue;
      }
      const Lit l = store_.intern(g);
      if (std::find(out.begin(), out.end(), negate(l)) != out.end()) return false;
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    return true;
  }

  int clause_level(const std::vector<Lit>& c) const {
    int lvl = 0;
    for (Lit l : c) lvl = std::max(lvl, store_.level(l));
    return lvl;
  }

  // Appends a clause unless an identical one exists; returns its index.
  int add_clause(std::vector<Lit> c) {
    auto key = c;
    std::sort(key.begin(), key.end());
    if (auto it = known_.find(key); it != known_.end()) return it->second;
    const int idx = static_cast<int>(clauses_.size());
    const int lvl = clause_level(c);
    known_.emplace(std::move(key), idx);
    clauses_.push_back(std::move(c));
    if (static_cast<std::size_t>(lvl) >= by_level_.size()) by_level_.resize(static_cast<std::size_t>(lvl) + 1);
    by_level_[static_cast<std::size_t>(lvl)].push_back(idx);
    maxvar_ = std::max(maxvar_, lvl);
    return idx;
  }

  Clause to_clause(const std::vector<Lit>& c) const {
    Clause out;
    for (Lit l : c) out.literals.push_back(store_.constraint(l));
    return out;
  }

  void tick() {
    if (++steps_ > cfg_.max_steps) throw Error(ErrorKind::StepLimit, "step budget of " + std::to_string(cfg_.max_steps) + " exhausted");
    if (deadline_ && (steps_ & 255) == 0 && Clock::now() > *deadline_) throw Error(ErrorKind::ResourceOut, "timeout");
  }

  void check_state() {
    const auto v = check_well_formed(trail_, clauses_);
    if (!v.empty()) throw Error(ErrorKind::Internal, "state is not well formed: " + v.front());
  }

  Verdict loop() {
    std::vector<Lit> lits;
    for (const auto& c : F_.clauses) {
      if (!to_lits(c, lits)) continue;
      if (lits.empty()) return {Status::Unsat, {}, "empty clause", {}};
      add_clause(lits);
    }

    Mode mode = Mode::Search;
    int focus = -1;
    std::vector<Lit> C;
    for (;;) {
      tick();
      if (cfg_.check_level == CheckLevel::EveryTransition && mode != Mode::Conflict) check_state();
      const int k = trail_.level();
      switch (mode) {
        case Mode::Search: {
          if (k > maxvar_) return sat();
          int undef = -1;
          bool conflict = false;
          if (static_cast<std::size_t>(k) < by_level_.size()) {
            for (int idx : by_level_[static_cast<std::size_t>(k)]) {
              const Truth t = trail_.value(clauses_[static_cast<std::size_t>(idx)]);
              if (t == Truth::False) {
                C = clauses_[static_cast<std::size_t>(idx)];
                conflict = true;
                break;
              }
              if (t == Truth::Undef && undef < 0) undef = idx;
            }
          }
          if (conflict) {
            ++stats_.conflicts;
            mode = Mode::Conflict;
          } else if (undef < 0) {
            trail_.push_assignment(k, trail_.feasible().first());
          } else {
            focus = undef;
            mode = Mode::Focus;
          }
          break;
        }
        case Mode::Focus:
          apply_focus(clauses_[static_cast<std::size_t>(focus)], focus);
          mode = Mode::Search;
          break;
        case Mode::Conflict: {
          if (C.empty() || trail_.empty()) return {Status::Unsat, {}, "", {}};
          const TrailElement top = trail_.top();
          if (top.kind == ElementKind::Assignment) {
            trail_.pop();
            if (trail_.value(C) != Truth::False) {
              focus = learn(C);
              mode = Mode::Focus;
            }
            break;
          }
          const bool pivot = std::find(C.begin(), C.end(), negate(top.lit)) != C.end();
          if (top.kind == ElementKind::Decided) {
            trail_.pop();
            if (pivot) {
              focus = learn(C);
              mode = Mode::Focus;
            }
            break;
          }
          trail_.pop();
          if (!pivot) break;
          std::vector<Lit> E;
          if (top.reason >= 0)
            E = clauses_[static_cast<std::size_t>(top.reason)];
          else
            E = explain_lazy(top.lit);
          std::vector<Lit> R;
          for (Lit l : C)
            if (l != negate(top.lit)) R.push_back(l);
          for (Lit l : E)
            if (l != top.lit && std::find(R.begin(), R.end(), l) == R.end()) R.push_back(l);
          C = std::move(R);
          break;
        }
      }
    }
  }

  void apply_focus(const std::vector<Lit>& c, int idx) {
    Lit last = 0;
    int nonfalse = 0;
    for (Lit l : c)
      if (trail_.value(l) != Truth::False) {
        ++nonfalse;
        last = l;
      }
    if (nonfalse == 1 && trail_.value(last) == Truth::Undef && trail_.compatible(last)) {
      trail_.push_propagated(last, idx);
      ++stats_.propagations;
      return;
    }
    for (Lit l : c) {
      if (trail_.value(l) != Truth::Undef) continue;
      const ValueSet& X = trail_.satisfying(l);
      if (trail_.feasible().subset_of(X)) {
        trail_.push_propagated(l, kLazy);
        ++stats_.t_propagations;
        return;
      }
      if (!trail_.feasible().intersects(X)) {
        trail_.push_propagated(negate(l), kLazy);
        ++stats_.t_propagations;
        return;
      }
    }
    for (Lit l : c)
      if (trail_.value(l) == Truth::Undef && trail_.compatible(l)) {
        trail_.push_decided(l);
        ++stats_.decisions;
        return;
      }
    throw Error(ErrorKind::Internal, "focused clause admits no transition");
  }

  // The trail is already popped to the state in which f was propagated.
  std::vector<Lit> explain_lazy(Lit f) {
    const Constraint fc = store_.constraint(f);
    const Clause E = explain(fc, trail_, xopts_);
    ++stats_.explanations;
    if (cfg_.on_explain) {
      ExplanationEvent ev{E, fc, trail_.point(), trail_.level(), {}};
      for (Lit l : trail_.constraints_at_level()) ev.level_constraints.push_back(store_.constraint(l));
      cfg_.on_explain(ev);
    }
    std::vector<Lit> out;
    for (const auto& g : E.literals) {
      const Lit l = store_.intern(g);
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    if (std::find(out.begin(), out.end(), f) == out.end())
      throw Error(ErrorKind::Internal, "explanation lacks its propagated literal");
    return out;
  }

  int learn(const std::vector<Lit>& c) {
    const std::size_t before = clauses_.size();
    const int idx = add_clause(c);
    if (clauses_.size() != before) {
      ++stats_.learned;
      if (cfg_.on_learn) cfg_.on_learn(to_clause(c));
    }
    return idx;
  }

  Verdict sat() {
    if (cfg_.check_level != CheckLevel::None) check_state();
    Verdict v{Status::Sat, trail_.point(), "", {}};
    v.model.resize(static_cast<std::size_t>(F_.nvars), F_.field->zero());
    return v;
  }

  const Formula& F_;
  const Config& cfg_;
  ConstraintStore store_;
  Trail trail_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> by_level_;
  std::unordered_map<std::vector<Lit>, int, SortedKeyHash> known_;
  int maxvar_ = 0;
  Stats stats_;
  std::uint64_t steps_ = 0;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  ExplainOptions xopts_;
};

}  // namespace

Verdict solve(const Formula& input, const Config& cfg) {
  Formula F = simplify(input);
  const auto n = static_cast<std::size_t>(F.nvars);
  const bool permuted = !cfg.var_order.empty();
  std::vector<int> to(n + 1, 0);
  if (permuted) {
    if (cfg.var_order.size() != n) throw Error(ErrorKind::Semantic, "variable order must list every variable once");
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) {
      const int x = cfg.var_order[i];
      if (x < 1 || static_cast<std::size_t>(x) > n || seen[static_cast<std::size_t>(x)])
        throw Error(ErrorKind::Semantic, "variable order is not a permutation");
      seen[static_cast<std::size_t>(x)] = true;
      to[static_cast<std::size_t>(x)] = static_cast<int>(i) + 1;
    }
    for (auto& c : F.clauses)
      for (auto& f : c.literals) f.poly = rename(f.poly, to);
  }
  Solver s(F, cfg);
  Verdict v = s.run();
  if (v.status == Status::Sat) {
    if (permuted) {
      std::vector<Elem> model(n);
      for (std::size_t x = 1; x <= n; ++x) model[x - 1] = v.model[static_cast<std::size_t>(to[x]) - 1];
      v.model = std::move(model);
    }
    if (!check_model(input, v.model)) throw Error(ErrorKind::Internal, "model fails an input clause");
  }
  return v;
}

}  // namespace ffmc
