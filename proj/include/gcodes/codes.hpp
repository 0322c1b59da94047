#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gcodes/subspace.hpp"

namespace gcodes {

/// Minimum distance of the zero code, and d(X, Y) for vertices in different
/// components.
inline constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

/// Largest codeword count enumerated exactly.
inline constexpr std::uint64_t kExactEnumerationCap = std::uint64_t{1} << 24;

/// A linear [n, k] code: a k-dimensional subspace of GF(q)^n in canonical
/// (RREF) form, with its dual minimum distance computed lazily and cached.
class LinearCode {
 public:
  explicit LinearCode(Subspace space) : space_(std::move(space)) {}
  /// The row space of `generator` (rank-deficient matrices are allowed; k is the rank).
  static LinearCode from_generator(const Matrix& generator) { return LinearCode(Subspace::span(generator)); }

  LinearCode(const LinearCode& other) : space_(other.space_), dual_distance_(other.dual_distance_.load()) {}
  LinearCode& operator=(const LinearCode& other) {
    space_ = other.space_;
    dual_distance_.store(other.dual_distance_.load());
    return *this;
  }
  LinearCode(LinearCode&& other) noexcept : space_(std::move(other.space_)), dual_distance_(other.dual_distance_.load()) {}
  LinearCode& operator=(LinearCode&& other) noexcept {
    space_ = std::move(other.space_);
    dual_distance_.store(other.dual_distance_.load());
    return *this;
  }

  [[nodiscard]] const Subspace& space() const noexcept { return space_; }
  [[nodiscard]] const Matrix& generator() const noexcept { return space_.basis(); }
  [[nodiscard]] const FieldCtx& field() const noexcept { return space_.field(); }
  [[nodiscard]] std::size_t n() const noexcept { return space_.ambient(); }
  [[nodiscard]] std::size_t k() const noexcept { return space_.dim(); }

  /// d⊥ = d_min(C⊥); exact, cached after the first call. kInfinite for the full space.
  [[nodiscard]] std::size_t dual_min_distance() const;
  /// Largest t with membership in C_t(n, k); 0 for degenerate codes.
  [[nodiscard]] std::size_t t_max() const;

  friend bool operator==(const LinearCode& a, const LinearCode& b) noexcept { return a.space_ == b.space_; }

 private:
  static constexpr std::size_t kUnknown = kInfinite - 1;
  Subspace space_;
  mutable std::atomic<std::size_t> dual_distance_{kUnknown};
};

LinearCode dual(const LinearCode& c);

enum class DistanceMode { Exact, Estimate };

struct MinDistance {
  std::size_t value = kInfinite;
  /// false when the value came from sampling: it is then only an upper
  /// bound on the true minimum distance.
  bool exact = true;
};

/// Minimum weight of a nonzero codeword.
///
/// Exact mode enumerates the code when q^k <= 2^24; otherwise, if the dual
/// is small enough, it enumerates the dual and recovers the weight
/// distribution through the MacWilliams identities. Anything larger throws
/// TooLargeExact. Estimate mode falls back to random information-set
/// sampling instead of throwing.
MinDistance min_distance(const LinearCode& c, DistanceMode mode = DistanceMode::Exact);

/// Number of codewords of each weight 0..n, by enumerating the code.
std::vector<BigInt> weight_distribution(const LinearCode& c);

/// Weight distribution of C⊥ from that of C (MacWilliams identities).
std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& distribution, std::size_t k, std::uint64_t q);

/// The three equivalent tests for membership in C_t(n, k).
enum class CtCriterion {
  DualDistance,        ///< d⊥ >= t + 1
  ColumnsIndependent,  ///< every t columns of the generator matrix are independent
  CoordMeet,           ///< dim(X ∩ C_I) = k - t for every t-set of coordinates I
};

/// Throws BadT unless 1 <= t <= n.
bool is_in_ct(const LinearCode& c, std::size_t t, CtCriterion criterion = CtCriterion::ColumnsIndependent);

/// Same as LinearCode::t_max().
std::size_t classify_tmax(const LinearCode& c);

/// Coordinate subspace C_I = {v : v_i = 0 for i in I}; indices are 0-based
/// and strictly increasing. Throws BadIndices.
Subspace coordinate_subspace(const FieldCtx& field, std::size_t n, std::span<const std::size_t> indices);

/// A monomial transformation: column j moves to position perm[j] and is
/// multiplied by scalars[j]. Composition `a.then(b)` applies a first.
class MonomialMap {
 public:
  MonomialMap(const FieldCtx& field, std::vector<std::size_t> perm, std::vector<Elem> scalars);
  static MonomialMap identity(const FieldCtx& field, std::size_t n);

  [[nodiscard]] std::size_t n() const noexcept { return perm_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  [[nodiscard]] const std::vector<Elem>& scalars() const noexcept { return scalars_; }
  [[nodiscard]] const FieldCtx& field() const noexcept { return *field_; }

  [[nodiscard]] MonomialMap then(const MonomialMap& next) const;
  [[nodiscard]] MonomialMap inverse() const;

  [[nodiscard]] Matrix apply(const Matrix& generator) const;
  [[nodiscard]] Vec apply(std::span<const Elem> v) const;

  friend bool operator==(const MonomialMap& a, const MonomialMap& b) noexcept {
    return a.field_ == b.field_ && a.perm_ == b.perm_ && a.scalars_ == b.scalars_;
  }

 private:
  const FieldCtx* field_;
  std::vector<std::size_t> perm_;
  std::vector<Elem> scalars_;
};

/// Throws DimensionMismatch when n or the field differ.
LinearCode apply_monomial(const MonomialMap& m, const LinearCode& c);

/// Visits every strictly increasing t-subset of {0..n-1} in lexicographic
/// order. If fn returns bool, false stops the walk.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t t, Fn&& fn) {
  if (t > n) return true;
  std::vector<std::size_t> idx(t);
  for (std::size_t i = 0; i < t; ++i) idx[i] = i;
  while (true) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, std::span<const std::size_t>>, bool>) {
      if (!fn(std::span<const std::size_t>(idx))) return false;
    } else {
      fn(std::span<const std::size_t>(idx));
    }
    std::size_t i = t;
    while (i > 0 && idx[i - 1] == n - t + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t binomial(std::size_t n, std::size_t k) noexcept;

}  // namespace gcodes
