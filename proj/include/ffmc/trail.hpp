#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffmc/formula.hpp"

namespace ffmc {

/// Subset of F_q as a bitset over element encodings.
class ValueSet {
 public:
  ValueSet() = default;
  explicit ValueSet(std::uint32_t q, bool full = false);

  std::uint32_t universe() const { return q_; }
  bool contains(Elem e) const { return (w_[e.v >> 6] >> (e.v & 63)) & 1U; }
  void insert(Elem e) { w_[e.v >> 6] |= std::uint64_t{1} << (e.v & 63); }
  void erase(Elem e) { w_[e.v >> 6] &= ~(std::uint64_t{1} << (e.v & 63)); }
  std::uint32_t count() const;
  bool empty() const;
  bool full() const { return count() == q_; }
  /// Smallest element, requires !empty().
  Elem first() const;
  ValueSet complement() const;
  ValueSet& operator&=(const ValueSet& o);
  bool intersects(const ValueSet& o) const;
  bool subset_of(const ValueSet& o) const;
  std::vector<Elem> elements() const;
  bool operator==(const ValueSet&) const = default;

 private:
  std::uint32_t q_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Literal handle: atom * 2 for `p = 0`, atom * 2 + 1 for `p != 0`.
using Lit = std::uint32_t;
inline Lit negate(Lit l) { return l ^ 1U; }
inline std::uint32_t atom_of(Lit l) { return l >> 1; }

/// Interns constraints so that a literal and its negation share one atom.
class ConstraintStore {
 public:
  explicit ConstraintStore(FieldPtr field) : field_(std::move(field)) {}

  /// Stores the polynomial as given; callers normalize beforehand if they want sharing.
  Lit intern(const Constraint& c);
  Constraint constraint(Lit l) const;
  const Polynomial& poly(Lit l) const { return atoms_[atom_of(l)].poly; }
  bool is_neq(Lit l) const { return l & 1U; }
  int level(Lit l) const { return atoms_[atom_of(l)].level; }
  std::size_t atoms() const { return atoms_.size(); }
  const FieldPtr& field() const { return field_; }

 private:
  struct Atom {
    Polynomial poly;
    int level;
  };
  FieldPtr field_;
  std::vector<Atom> atoms_;
  std::unordered_map<Polynomial, std::uint32_t, PolynomialHash> index_;
};

enum class ElementKind { Decided, Propagated, Assignment };

/// Reason of a propagated literal: a clause index, or kLazy for a theory propagation
/// whose explanation is produced on demand.
inline constexpr int kLazy = -1;

struct TrailElement {
  ElementKind kind;
  Lit lit = 0;     // Decided / Propagated
  int reason = 0;  // Propagated
  int var = 0;     // Assignment
  Elem value;      // Assignment
};

/// MCSAT trail over variables x_1..x_n with cached feasible sets and literal values.
class Trail {
 public:
  Trail(ConstraintStore& store, int nvars);

  /// k: index of the next unassigned variable.
  int level() const { return static_cast<int>(point_.size()) + 1; }
  /// Values of x_1..x_{k-1}.
  const std::vector<Elem>& point() const { return point_; }
  const std::vector<TrailElement>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  const TrailElement& top() const { return elems_.back(); }

  /// Throws Redundant or LevelViolation.
  void push_decided(Lit l);
  void push_propagated(Lit l, int reason);
  /// Throws LevelViolation unless x == level(), InfeasibleValue unless value is feasible.
  void push_assignment(int x, Elem value);
  void pop();

  bool on_trail(Lit l) const;
  Truth value(Lit l);
  Truth value(const std::vector<Lit>& clause);
  /// Feasible values for x_k under the level-k constraints on the trail.
  const ValueSet& feasible() const { return feasible_; }
  /// Values of x_k satisfying a level-k literal under the current point.
  const ValueSet& satisfying(Lit l);
  ValueSet feasible_with(Lit l);
  bool compatible(Lit l);
  /// Literals on the trail whose level equals k (the current level unless given).
  std::vector<Lit> constraints_at_level(int k = 0) const;

  /// One element per line: `[dec] f`, `[prop<-C3] f`, `[prop<-lazy] f`, `[x1 := 4]`.
  std::string dump(std::span<const std::string> names = {}) const;

  ConstraintStore& store() { return store_; }
  const ConstraintStore& store() const { return store_; }

 private:
  void check_constraint_push(Lit l) const;
  void grow();

  struct AtomCache {
    std::uint64_t eval_stamp = 0;
    bool eval_zero = false;
    std::uint64_t roots_stamp = 0;
    ValueSet roots;
    ValueSet nonroots;
    int on_trail = 0;  // 0 absent, 1 as `= 0`, 2 as `!= 0`
  };

  std::uint64_t stamp_for(int level) const;

  ConstraintStore& store_;
  int nvars_;
  std::vector<TrailElement> elems_;
  std::vector<Elem> point_;
  std::vector<std::uint64_t> epoch_;  // epoch_[x] changes on every assignment of x
  std::uint64_t clock_ = 1;
  ValueSet feasible_;
  std::vector<ValueSet> saved_feasible_;  // one per constraint element
  std::vector<AtomCache> cache_;
};

/// Violations of the well-formedness conditions; empty when the state is well formed.
/// `clauses` is the clause database addressed by propagation reasons.
std::vector<std::string> check_well_formed(Trail& trail, const std::vector<std::vector<Lit>>& clauses);

}  // namespace ffmc
