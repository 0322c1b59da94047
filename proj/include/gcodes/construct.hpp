#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcodes/codes.hpp"

namespace gcodes {

/// Generator rows (a_j^i), i = 0..k-1, over n distinct points a_j. Default
/// points are the field elements with encodings 0..n-1.
/// Throws NotEnoughPoints (n > q without points) and DuplicatePoints.
LinearCode vandermonde_mds(const FieldCtx& field, std::size_t n, std::size_t k,
                           std::optional<std::vector<Elem>> points = std::nullopt);

/// A t-subset of coordinates (0-based, increasing), or infinity.
/// Tuples compare lexicographically and infinity is above all of them.
struct Color {
  std::vector<std::size_t> tuple;
  bool infinite = false;

  static Color infinity() { return {{}, true}; }
  friend bool operator==(const Color&, const Color&) = default;
  friend std::strong_ordering operator<=>(const Color& a, const Color& b) {
    if (a.infinite != b.infinite) return a.infinite ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.tuple <=> b.tuple;
  }
  [[nodiscard]] std::string str() const;
};

/// Color of [p] under the coloration induced by the hyperplane h of x:
/// the smallest t-subset I with dim(<h, p> ∩ C_I) = k - t + 1, else infinity.
/// Throws BadHyperplane (h not a hyperplane of x containing x ∩ y), RepInH
/// (p in h) and InvalidArgument (p not in y).
Color psi_color(const Subspace& h, const LinearCode& x, const LinearCode& y, std::span<const Elem> p, std::size_t t);

/// True iff all vectors have the same finite color. The vectors must be
/// independent modulo h ∩ y (DependentVectors otherwise).
bool is_monochromatic_basis(const Subspace& h, const LinearCode& x, const LinearCode& y,
                            const std::vector<Vec>& vectors, std::size_t t);

struct SubspaceColor {
  std::optional<Color> color;  // nullopt: not colorable
  bool exact = true;           // false when only a sample of points was colored
};

/// Color of the subspace of y/(h ∩ y) spanned by the lifted rows of s.
///
/// S has a monochromatic basis of color c iff the points of S with color c
/// span S, so the color is the least such c. Every projective point is
/// colored when there are at most point_cap of them; otherwise
/// sample_budget random points are used and the answer is a best effort.
/// Throws DependentVectors if the rows are dependent modulo h ∩ y.
SubspaceColor subspace_color(const Subspace& h, const LinearCode& x, const LinearCode& y, const Matrix& s,
                             std::size_t t, std::uint64_t point_cap = std::uint64_t{1} << 20,
                             std::uint64_t sample_budget = 20000);

/// Counters shared by the step searches.
struct ScanStats {
  std::uint64_t hyperplanes = 0;
  std::uint64_t candidates = 0;
  /// Candidates <H, z> with dim(<H, z> ∩ C_I) > k - t + 1 for some I.
  /// Impossible when x is in C_t; any nonzero value is a bug.
  std::uint64_t bound_violations = 0;
  void merge(const ScanStats& o) {
    hyperplanes += o.hyperplanes;
    candidates += o.candidates;
    bound_violations += o.bound_violations;
  }
};

struct StepCertificate {
  LinearCode z_code;
  Subspace hyperplane_used;
  Vec coset_rep;
  std::size_t dim_x_meet_z = 0;
  std::size_t dim_z_meet_y = 0;
  bool in_ct = false;
  std::size_t hyperplane_rank = 0;  // position of hyperplane_used in scan order
  std::uint64_t candidates_scanned = 0;
};

/// A code Z in C_t(n, k) adjacent to x with dim(Z ∩ y) = dim(x ∩ y) + 1.
///
/// Hyperplanes H of x containing x ∩ y are scanned in enumeration order and,
/// for each, representatives z of the projective points of y/(x ∩ y); the
/// first <H, z> in C_t is returned. Throws NotInCt, DimensionMismatch,
/// InvalidArgument (x = y), PreconditionDepth (d > t) and NoStepFound.
StepCertificate step_toward(const LinearCode& x, const LinearCode& y, std::size_t t, ScanStats* stats = nullptr);

/// Recomputes every check in the certificate from scratch.
bool verify_step(const StepCertificate& cert, const LinearCode& x, const LinearCode& y, std::size_t t);

struct StepCount {
  BigInt total = 0;
  std::vector<std::uint64_t> per_hyperplane;
};

/// Number of distinct Z reachable by step_toward over every hyperplane and
/// representative. Same preconditions and errors as step_toward, except
/// that it never throws NoStepFound.
StepCount count_step_codes(const LinearCode& x, const LinearCode& y, std::size_t t, ScanStats* stats = nullptr);

/// First hyperplane of x (in enumeration order) that contains u and none of
/// the spaces x ∩ C_I, |I| = t. Throws NotInCt, BadU (u not inside x, or
/// dim u >= k - t) and NoShrinkFound.
LinearCode shrink(const LinearCode& x, const Subspace& u, std::size_t t);

struct GeodesicPath {
  std::vector<LinearCode> codes;
  ScanStats stats;
  [[nodiscard]] std::size_t length() const noexcept { return codes.empty() ? 0 : codes.size() - 1; }
};

class PathFailedError : public Error {
 public:
  PathFailedError(std::string what, std::vector<LinearCode> partial)
      : Error(ErrorCode::PathFailed, std::move(what)), partial_(std::move(partial)) {}
  [[nodiscard]] const std::vector<LinearCode>& partial() const noexcept { return partial_; }

 private:
  std::vector<LinearCode> partial_;
};

/// Path x = Z_0, ..., Z_m = y inside C_t(n, k), consecutive codes adjacent,
/// with m = k - dim(x ∩ y). Close pairs (d <= t) use step_toward; farther
/// pairs go through T = <X', Y'> with X' = shrink(cur, cur ∩ y) and
/// Y' = (cur ∩ y) + <z>. Throws NotInCt, DimensionMismatch and PathFailedError.
GeodesicPath geodesic_path(const LinearCode& x, const LinearCode& y, std::size_t t);

struct OppositeResult {
  LinearCode d;
  MonomialMap witness;  // witness applied to c gives d
  Elem lambda = 1;
  MonomialMap rho;      // moves the RREF pivots of c to the front
  MonomialMap sigma;    // the block swap with scaling by lambda
};

/// A code equivalent to c and opposite to it in Γ(n, k), i.e.
/// dim(c ∩ d) = max(2k - n, 0). λ runs over the nonzero elements in encoding
/// order and the first one giving full rank of the stacked generators wins.
/// Throws NotInCt (c not in C_t, or t out of range) and NoLambda.
OppositeResult opposite_code(const LinearCode& c, std::size_t t);

/// The block swap σ_λ for an [n, k] code: column j and k + j trade places
/// for j < min(k, n - k), and the columns landing in front are scaled by λ.
MonomialMap block_swap(const FieldCtx& field, std::size_t n, std::size_t k, Elem lambda);

}  // namespace gcodes
