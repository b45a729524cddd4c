#include "ffmc/trail.hpp"

#include <bit>
#include <sstream>

namespace ffmc {

// ---------------------------------------------------------------- ValueSet

ValueSet::ValueSet(std::uint32_t q, bool full) : q_(q), w_((q + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  if (full && (q & 63)) w_.back() = (std::uint64_t{1} << (q & 63)) - 1;
}

std::uint32_t ValueSet::count() const {
  std::uint32_t n = 0;
  for (auto w : w_) n += static_cast<std::uint32_t>(std::popcount(w));
  return n;
}

bool ValueSet::empty() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

Elem ValueSet::first() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return Elem{static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i])))};
  throw Error(ErrorKind::Internal, "first() of an empty value set");
}

ValueSet ValueSet::complement() const {
  ValueSet out(q_, true);
  for (std::size_t i = 0; i < w_.size(); ++i) out.w_[i] &= ~w_[i];
  return out;
}

ValueSet& ValueSet::operator&=(const ValueSet& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

bool ValueSet::intersects(const ValueSet& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & o.w_[i]) return true;
  return false;
}

bool ValueSet::subset_of(const ValueSet& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

std::vector<Elem> ValueSet::elements() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    std::uint64_t w = w_[i];
    while (w) {
      out.emplace_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

// --------------------------------------------------------- ConstraintStore

Lit ConstraintStore::intern(const Constraint& c) {
  auto [it, inserted] = index_.try_emplace(c.poly, static_cast<std::uint32_t>(atoms_.size()));
  if (inserted) atoms_.push_back({c.poly, c.level()});
  return it->second * 2 + (c.rel == Rel::Neq ? 1U : 0U);
}

Constraint ConstraintStore::constraint(Lit l) const {
  return {atoms_[atom_of(l)].poly, is_neq(l) ? Rel::Neq : Rel::Eq};
}

// -------------------------------------------------------------------- Trail

Trail::Trail(ConstraintStore& store, int nvars)
    : store_(store), nvars_(nvars), epoch_(static_cast<std::size_t>(nvars) + 1, 0),
      feasible_(store.field()->order(), true) {
  epoch_[0] = 1;
}

void Trail::grow() {
  if (cache_.size() < store_.atoms()) cache_.resize(store_.atoms());
}

std::uint64_t Trail::stamp_for(int level) const { return epoch_[static_cast<std::size_t>(level)]; }

bool Trail::on_trail(Lit l) const {
  const auto a = atom_of(l);
  if (a >= cache_.size()) return false;
  return cache_[a].on_trail == (store_.is_neq(l) ? 2 : 1);
}

Truth Trail::value(Lit l) {
  grow();
  const int lvl = store_.level(l);
  auto& c = cache_[atom_of(l)];
  if (lvl < level()) {
    const std::uint64_t stamp = stamp_for(lvl);
    if (c.eval_stamp != stamp) {
      c.eval_zero = store_.poly(l).evaluate(point_).is_zero();
      c.eval_stamp = stamp;
    }
    return (c.eval_zero != store_.is_neq(l)) ? Truth::True : Truth::False;
  }
  if (c.on_trail) return ((c.on_trail == 2) == store_.is_neq(l)) ? Truth::True : Truth::False;
  return Truth::Undef;
}

Truth Trail::value(const std::vector<Lit>& clause) {
  bool undef = false;
  for (Lit l : clause) {
    const Truth t = value(l);
    if (t == Truth::True) return t;
    if (t == Truth::Undef) undef = true;
  }
  return undef ? Truth::Undef : Truth::False;
}

const ValueSet& Trail::satisfying(Lit l) {
  grow();
  const int k = level();
  if (store_.level(l) > k) throw Error(ErrorKind::LevelViolation, "literal above the current level");
  auto& c = cache_[atom_of(l)];
  const std::uint64_t stamp = stamp_for(k - 1);
  if (c.roots_stamp != stamp) {
    const Field& F = *store_.field();
    const auto image = store_.poly(l).univariate_image(point_, k);
    c.roots = ValueSet(F.order());
    if (image.empty()) {
      c.roots = ValueSet(F.order(), true);
    } else if (image.size() > 1) {
      for (const Elem beta : F.elements())
        if (dense::eval(F, image, beta).is_zero()) c.roots.insert(beta);
    }
    c.nonroots = c.roots.complement();
    c.roots_stamp = stamp;
  }
  return store_.is_neq(l) ? c.nonroots : c.roots;
}

ValueSet Trail::feasible_with(Lit l) {
  ValueSet out = feasible_;
  out &= satisfying(l);
  return out;
}

bool Trail::compatible(Lit l) { return feasible_.intersects(satisfying(l)); }

void Trail::check_constraint_push(Lit l) const {
  const auto a = atom_of(l);
  if (a < cache_.size() && cache_[a].on_trail)
    throw Error(ErrorKind::Redundant, store_.constraint(l).to_string() + " is already on the trail");
  if (store_.level(l) != level())
    throw Error(ErrorKind::LevelViolation, store_.constraint(l).to_string() + " has level " +
                                               std::to_string(store_.level(l)) + ", trail is at level " +
                                               std::to_string(level()));
}

void Trail::push_decided(Lit l) {
  grow();
  check_constraint_push(l);
  saved_feasible_.push_back(feasible_);
  feasible_ &= satisfying(l);
  cache_[atom_of(l)].on_trail = store_.is_neq(l) ? 2 : 1;
  elems_.push_back({ElementKind::Decided, l, 0, 0, Elem{}});
}

void Trail::push_propagated(Lit l, int reason) {
  grow();
  check_constraint_push(l);
  saved_feasible_.push_back(feasible_);
  feasible_ &= satisfying(l);
  cache_[atom_of(l)].on_trail = store_.is_neq(l) ? 2 : 1;
  elems_.push_back({ElementKind::Propagated, l, reason, 0, Elem{}});
}

void Trail::push_assignment(int x, Elem v) {
  if (x != level() || x > nvars_)
    throw Error(ErrorKind::LevelViolation, "x" + std::to_string(x) + " assigned at level " + std::to_string(level()));
  if (v.v >= feasible_.universe() || !feasible_.contains(v))
    throw Error(ErrorKind::InfeasibleValue, store_.field()->to_string(v) + " is not feasible for x" + std::to_string(x));
  saved_feasible_.push_back(feasible_);
  feasible_ = ValueSet(feasible_.universe(), true);
  point_.push_back(v);
  epoch_[static_cast<std::size_t>(x)] = ++clock_;
  elems_.push_back({ElementKind::Assignment, 0, 0, x, v});
}

void Trail::pop() {
  if (elems_.empty()) throw Error(ErrorKind::Internal, "pop of an empty trail");
  const TrailElement e = elems_.back();
  elems_.pop_back();
  feasible_ = std::move(saved_feasible_.back());
  saved_feasible_.pop_back();
  if (e.kind == ElementKind::Assignment) {
    epoch_[static_cast<std::size_t>(e.var)] = 0;
    point_.pop_back();
  } else {
    cache_[atom_of(e.lit)].on_trail = 0;
  }
}

std::vector<Lit> Trail::constraints_at_level(int k) const {
  if (k == 0) k = level();
  std::vector<Lit> out;
  for (const auto& e : elems_)
    if (e.kind != ElementKind::Assignment && store_.level(e.lit) == k) out.push_back(e.lit);
  return out;
}

std::string Trail::dump(std::span<const std::string> names) const {
  std::ostringstream os;
  const Field& F = *store_.field();
  for (const auto& e : elems_) {
    switch (e.kind) {
      case ElementKind::Decided:
        os << "[dec] " << store_.constraint(e.lit).to_string(names) << '\n';
        break;
      case ElementKind::Propagated:
        if (e.reason == kLazy)
          os << "[prop<-lazy] ";
        else
          os << "[prop<-C" << e.reason << "] ";
        os << store_.constraint(e.lit).to_string(names) << '\n';
        break;
      case ElementKind::Assignment: {
        const auto idx = static_cast<std::size_t>(e.var) - 1;
        os << '[' << (idx < names.size() ? names[idx] : "x" + std::to_string(e.var)) << " := " << F.to_string(e.value)
           << "]\n";
        break;
      }
    }
  }
  return os.str();
}

std::vector<std::string> check_well_formed(Trail& trail, const std::vector<std::vector<Lit>>& clauses) {
  std::vector<std::string> out;
  const auto& store = trail.store();
  std::vector<std::uint32_t> seen;
  int assigned = 0;
  for (const auto& e : trail.elements()) {
    if (e.kind == ElementKind::Assignment) {
      if (e.var != assigned + 1) out.push_back("assignments are not consecutive at x" + std::to_string(e.var));
      assigned = e.var;
      continue;
    }
    const auto a = atom_of(e.lit);
    for (auto s : seen)
      if (s == a) out.push_back("non-redundant: " + store.constraint(e.lit).to_string() + " occurs twice");
    seen.push_back(a);
    if (store.level(e.lit) != assigned + 1)
      out.push_back("increasing in level: " + store.constraint(e.lit).to_string() + " pushed at level " +
                    std::to_string(assigned + 1));
  }
  if (assigned + 1 != trail.level()) out.push_back("level mismatch");
  if (trail.feasible().empty()) out.push_back("feasible set is empty");
  const int k = trail.level();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    int lvl = 0;
    for (Lit l : clauses[i]) lvl = std::max(lvl, store.level(l));
    if (lvl < k && trail.value(clauses[i]) != Truth::True)
      out.push_back("clause " + std::to_string(i) + " of level " + std::to_string(lvl) + " is not satisfied");
  }
  for (const auto& e : trail.elements()) {
    if (e.kind == ElementKind::Assignment) continue;
    if (store.level(e.lit) < k && trail.value(e.lit) != Truth::True)
      out.push_back(store.constraint(e.lit).to_string() + " is on the trail but false");
    if (e.kind == ElementKind::Propagated && e.reason != kLazy) {
      const auto& E = clauses.at(static_cast<std::size_t>(e.reason));
      bool has = false;
      for (Lit l : E) {
        if (l == e.lit) {
          has = true;
          continue;
        }
        if (trail.value(l) != Truth::False)
          out.push_back("propagation of " + store.constraint(e.lit).to_string() + " is not implied by clause " +
                        std::to_string(e.reason));
      }
      if (!has) out.push_back("reason clause " + std::to_string(e.reason) + " lacks its propagated literal");
    }
  }
  return out;
}

}  // namespace ffmc
