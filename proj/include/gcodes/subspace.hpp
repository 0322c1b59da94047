#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <optional>
#include <type_traits>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcodes/matrix.hpp"

namespace gcodes {

using BigInt = boost::multiprecision::cpp_int;

/// A subspace of GF(q)^n held by its reduced row echelon basis.
///
/// The RREF basis is unique, so two subspaces are equal exactly when their
/// bases are entry-identical. The zero subspace has a 0-row basis but keeps
/// its ambient dimension.
class Subspace {
 public:
  Subspace(const FieldCtx& field, std::size_t ambient) : basis_(field, 0, ambient) {}

  /// Row space of an arbitrary generator matrix.
  static Subspace span(const Matrix& generators);
  static Subspace full(const FieldCtx& field, std::size_t n);
  /// Adopts a basis that is already in RREF with no zero rows.
  static Subspace from_rref(Matrix basis);

  [[nodiscard]] const FieldCtx& field() const noexcept { return basis_.field(); }
  [[nodiscard]] std::size_t ambient() const noexcept { return basis_.cols(); }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.rows(); }
  [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
  [[nodiscard]] std::vector<std::size_t> pivots() const;

  [[nodiscard]] bool contains(std::span<const Elem> v) const;
  [[nodiscard]] bool contains(const Subspace& other) const;

  [[nodiscard]] std::size_t hash() const noexcept;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// dim(a ∩ b) without building the intersection.
std::size_t intersection_dim(const Subspace& a, const Subspace& b);
/// Null space {v : m v^T = 0}.
Subspace kernel(const Matrix& m);
/// Orthogonal complement under the standard bilinear form.
Subspace orthogonal(const Subspace& s);

/// Rows extending a basis of `sub` to a basis of `super` (sub ⊆ super).
/// Deterministic: the super basis is reduced against the pivots of `sub`
/// and the remainder brought to RREF.
Matrix complement_basis(const Subspace& sub, const Subspace& super);

/// Hyperplanes of x that contain u, in a fixed order.
///
/// Each hyperplane is the kernel of a nonzero functional on x/u; the
/// functionals are taken normalized (first nonzero coefficient 1) in
/// lexicographic order on the complement basis of u in x.
class HyperplaneEnumerator {
 public:
  HyperplaneEnumerator(const Subspace& x, const Subspace& u);

  std::optional<Subspace> next();
  /// [dim x - dim u]_q
  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

 private:
  Subspace u_;
  Matrix complement_;
  std::size_t m_;
  std::size_t lead_ = 0;
  std::vector<Elem> tail_;  // coefficients after the leading 1
  bool done_ = false;
  std::uint64_t count_ = 0;
};

std::vector<Subspace> hyperplanes_containing(const Subspace& x, const Subspace& u);

/// A basis of s drawn from b1 ∪ b2, where b1, b2 are bases of two distinct
/// hyperplanes of s: all of b1 plus the first vector of b2 outside span(b1).
Matrix merge_bases(const Subspace& s, const Matrix& b1, const Matrix& b2);

/// [m]_q = (q^m - 1) / (q - 1), the number of points of an m-dimensional space.
BigInt q_number(std::size_t m, std::uint64_t q);
/// Gaussian binomial coefficient: number of k-subspaces of GF(q)^n.
BigInt subspace_count(std::size_t n, std::size_t k, std::uint64_t q);

/// Vectors of GF(q)^m up to scalars: each has first nonzero entry 1.
/// Calls fn(span) for every projective point in lexicographic order. If fn
/// returns bool, returning false stops the walk; the function then returns
/// false.
template <typename Fn>
bool for_each_projective_point(const FieldCtx& field, std::size_t m, Fn&& fn) {
  std::vector<Elem> v(m);
  const Elem q = field.q();
  for (std::size_t lead = 0; lead < m; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    bool more = true;
    while (more) {
      if constexpr (std::is_same_v<std::invoke_result_t<Fn&, std::span<const Elem>>, bool>) {
        if (!fn(std::span<const Elem>(v))) return false;
      } else {
        fn(std::span<const Elem>(v));
      }
      more = false;
      for (std::size_t i = m; i-- > lead + 1;) {
        if (++v[i] < q) {
          more = true;
          break;
        }
        v[i] = 0;
      }
    }
  }
  return true;
}

}  // namespace gcodes
