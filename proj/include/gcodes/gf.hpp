#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcodes/error.hpp"

namespace gcodes {

/// A field element encoded as an integer in [0, q). The polynomial
/// c_0 + c_1 x + ... + c_{e-1} x^{e-1} is stored as sum(c_i * p^i).
using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

/// Arithmetic context for GF(p^e).
///
/// Contexts are interned: `field_new` hands out references that stay valid
/// for the lifetime of the process, so matrices can refer to their field
/// by pointer. A context is immutable once built and can be shared freely
/// between threads.
///
/// For q <= 256 full addition and multiplication tables are kept; for
/// q <= 4096 multiplication goes through log/antilog tables; above that all
/// arithmetic is done on coefficient vectors.
class FieldCtx {
 public:
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  [[nodiscard]] std::uint32_t p() const noexcept { return p_; }
  [[nodiscard]] std::uint32_t e() const noexcept { return e_; }
  [[nodiscard]] std::uint32_t q() const noexcept { return q_; }
  /// Coefficients of the monic modulus, lowest degree first (length e + 1).
  [[nodiscard]] const std::vector<Elem>& modulus() const noexcept { return modulus_; }
  /// A generator of the multiplicative group (smallest encoding with order q - 1).
  [[nodiscard]] Elem generator() const noexcept { return generator_; }

  [[nodiscard]] Elem add(Elem a, Elem b) const noexcept {
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    if (p_ == 2) return a ^ b;
    if (e_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_slow(a, b);
  }

  [[nodiscard]] Elem neg(Elem a) const noexcept {
    if (!neg_table_.empty()) return neg_table_[a];
    if (p_ == 2) return a;
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_slow(a);
  }

  [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    if (!exp_table_.empty()) return exp_table_[log_table_[a] + log_table_[b]];
    return mul_slow(a, b);
  }

  /// Multiplicative inverse; throws DivisionByZero for 0.
  [[nodiscard]] Elem inv(Elem a) const;
  [[nodiscard]] Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  [[nodiscard]] Elem pow(Elem a, std::uint64_t exponent) const noexcept;

  /// a + b * c, the update used by every elimination loop.
  [[nodiscard]] Elem fma(Elem a, Elem b, Elem c) const noexcept { return add(a, mul(b, c)); }

  /// The q - 1 nonzero elements in ascending encoding order.
  [[nodiscard]] std::vector<Elem> all_nonzero() const;

  [[nodiscard]] bool contains(Elem a) const noexcept { return a < q_; }

  /// Coefficient vector (length e) of an element, lowest degree first.
  [[nodiscard]] std::vector<Elem> decode(Elem a) const;
  [[nodiscard]] Elem encode(const std::vector<Elem>& coefficients) const;

  [[nodiscard]] bool has_tables() const noexcept { return !exp_table_.empty() || !mul_table_.empty(); }

 private:
  friend class FieldRegistry;
  FieldCtx(std::uint32_t p, std::uint32_t e, std::vector<Elem> modulus);

  [[nodiscard]] Elem add_slow(Elem a, Elem b) const noexcept;
  [[nodiscard]] Elem neg_slow(Elem a) const noexcept;
  [[nodiscard]] Elem mul_slow(Elem a, Elem b) const noexcept;
  [[nodiscard]] Elem find_generator() const;

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  Elem generator_ = 1;

  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> neg_table_;
  std::vector<Elem> inv_table_;
  std::vector<Elem> exp_table_;  // length 2(q-1) so log a + log b needs no reduction
  std::vector<std::uint32_t> log_table_;
};

/// Returns the interned context for GF(p^e). Without an explicit modulus the
/// lexicographically smallest monic irreducible polynomial of degree e is used,
/// so equal (p, e) always yield the same representation.
/// Throws NotPrime, ReducibleModulus or FieldTooLarge.
const FieldCtx& field_new(std::uint32_t p, std::uint32_t e,
                          const std::optional<std::vector<Elem>>& modulus = std::nullopt);

/// Field of order q with the default modulus; q must be a prime power.
const FieldCtx& field_of_order(std::uint64_t q);

[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

/// (p, e) with q = p^e, or nullopt if q is not a prime power.
[[nodiscard]] std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept;

/// Irreducibility of a monic polynomial over GF(p) by trial division
/// (coefficients lowest degree first).
[[nodiscard]] bool is_irreducible(std::uint32_t p, const std::vector<Elem>& monic);

}  // namespace gcodes
