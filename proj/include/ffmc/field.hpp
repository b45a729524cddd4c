#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffmc/error.hpp"

namespace ffmc {

/// Canonical element of a finite field F_q.
///
/// The value is an index in [0, q). For prime fields it is the residue itself;
/// for F_{p^k} it encodes the coefficient list (c_0, ..., c_{k-1}) of the
/// residue polynomial as c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Element order is
/// therefore lexicographic with the highest coefficient most significant,
/// which gives 0, 1, a, 1+a for F_4.
///
/// Elements do not carry their field; the owning polynomial or assignment does.
struct Elem {
  std::uint32_t v = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t value) : v(value) {}

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Description of F_q with q = p^k, plus the arithmetic on its elements.
///
/// Immutable after construction and shared by pointer. Orders above 2^20 are
/// rejected since feasible sets are enumerated element by element.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  static FieldPtr prime(std::int64_t p);
  /// `modulus` is a low-degree-first coefficient list of length k + 1 (monic).
  /// When absent, the first monic irreducible in element-encoding order is used.
  static FieldPtr extension(std::int64_t p, int k,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);
  /// Any prime power; composite non-prime-powers raise NotPrimePower.
  static FieldPtr of_order(std::int64_t q);

  std::uint32_t characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return k_ == 1; }
  /// Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// Residue class of the generator symbol `a`; only defined for k > 1.
  Elem generator() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// z mod p, embedded as a constant residue.
  Elem from_integer(std::int64_t z) const;
  Elem from_coefficients(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> coefficients(Elem a) const;

  /// All q elements in ascending encoding order.
  std::vector<Elem> elements() const;

  /// Integers for prime fields; `(c0 + c1*a + ...)`-style sums otherwise.
  std::string to_string(Elem a, const std::string& symbol = "a") const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

  static bool is_prime(std::uint64_t n);
  /// Trial division by every monic polynomial of degree 1..deg/2 over F_p.
  static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

  Field(std::uint32_t p, int k, std::vector<std::uint32_t> modulus);

 private:
  Elem mul_schoolbook(Elem a, Elem b) const;
  Elem inv_euclid(Elem a) const;
  void build_tables();

  std::uint32_t p_;
  int k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> inverse_;
  // Extension fields only: discrete log tables over a primitive element.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  // Addition table for small extension fields.
  std::vector<std::uint32_t> add_table_;
};

/// Checks that two field pointers describe the same field; throws FieldMismatch otherwise.
void require_same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace ffmc
