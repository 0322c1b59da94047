#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gcodes/codes.hpp"

namespace gcodes {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 21;
inline constexpr std::size_t kDefaultAdjacencyCacheLimit = std::size_t{1} << 13;
inline constexpr std::uint32_t kUnreachable = UINT32_MAX;

/// All k-subspaces of GF(q)^n, indexed without storing them.
///
/// Subspaces are ordered by RREF pivot pattern (k-subsets of columns in
/// lexicographic order) and, within a pattern, by the free entries read
/// row-major as a base-q number. `at` decodes an index and `index_of`
/// inverts it, both in O(kn).
class SubspaceIndex {
 public:
  SubspaceIndex(const FieldCtx& field, std::size_t n, std::size_t k, std::uint64_t cap = kDefaultEnumerationCap);

  [[nodiscard]] const FieldCtx& field() const noexcept { return *field_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::uint64_t size() const noexcept { return size_; }

  [[nodiscard]] Subspace at(std::uint64_t index) const;
  /// Writes the k x n RREF basis of subspace `index` to out (row-major).
  void decode(std::uint64_t index, std::span<Elem> out) const;
  /// Throws DimensionMismatch if s is not a k-subspace of GF(q)^n.
  [[nodiscard]] std::uint64_t index_of(const Subspace& s) const;
  /// Index of a k x n RREF buffer (no zero rows).
  [[nodiscard]] std::uint64_t index_of_rref(std::span<const Elem> rref) const;

 private:
  struct Pattern {
    std::vector<std::size_t> pivots;
    std::vector<std::uint32_t> free_positions;  // row * n + col, row-major order
    std::uint64_t offset;
  };

  const FieldCtx* field_;
  std::size_t n_;
  std::size_t k_;
  std::uint64_t size_ = 0;
  std::vector<Pattern> patterns_;
  std::unordered_map<std::uint32_t, std::uint32_t> pattern_by_mask_;
};

enum class GraphMode { Full, Delta };
enum class AdjacencyStrategy { Auto, Scan, Pairwise };

struct GraphOptions {
  /// Graphs with at most this many vertices keep a bitset adjacency matrix.
  std::size_t adjacency_cache_limit = kDefaultAdjacencyCacheLimit;
  AdjacencyStrategy strategy = AdjacencyStrategy::Auto;
};

/// Γ(n, k) or the subgraph Δ_t(n, k) induced on C_t(n, k).
///
/// Vertices are numbered 0..vertex_count()-1 in index order. Two vertices
/// are adjacent iff their intersection has dimension k - 1.
class GrassmannGraph {
 public:
  static GrassmannGraph full(std::shared_ptr<const SubspaceIndex> index, GraphOptions options = {});
  /// Throws BadT unless 1 <= t <= k.
  static GrassmannGraph delta(std::shared_ptr<const SubspaceIndex> index, std::size_t t, GraphOptions options = {});

  [[nodiscard]] GraphMode mode() const noexcept { return mode_; }
  [[nodiscard]] std::size_t t() const noexcept { return t_; }
  [[nodiscard]] const SubspaceIndex& index() const noexcept { return *index_; }
  [[nodiscard]] std::size_t vertex_count() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty_class() const noexcept { return members_.empty(); }

  [[nodiscard]] std::uint64_t global_index(std::uint32_t v) const { return members_.at(v); }
  [[nodiscard]] std::optional<std::uint32_t> local_of(std::uint64_t global) const;
  [[nodiscard]] Subspace vertex(std::uint32_t v) const;
  /// RREF rows of vertex v (k x n, row-major).
  void vertex_rows(std::uint32_t v, std::span<Elem> out) const;
  [[nodiscard]] std::uint32_t vertex_of(const Subspace& s) const;

  [[nodiscard]] std::vector<std::uint32_t> neighbors(std::uint32_t v) const;
  /// Neighbours found by extending every hyperplane of v by points outside v.
  [[nodiscard]] std::vector<std::uint32_t> neighbors_scan(std::uint32_t v) const;
  /// Neighbours found by testing dim(v ∩ w) = k - 1 against every vertex w.
  [[nodiscard]] std::vector<std::uint32_t> neighbors_pairwise(std::uint32_t v) const;

  [[nodiscard]] bool has_adjacency_cache() const noexcept { return !adjacency_.empty(); }
  [[nodiscard]] bool adjacent(std::uint32_t a, std::uint32_t b) const;
  /// dim(v ∩ w) for two vertices.
  [[nodiscard]] std::size_t meet_dim(std::uint32_t v, std::uint32_t w) const;

  /// Bitset row of v in the adjacency cache (words of 64 vertices).
  [[nodiscard]] std::span<const std::uint64_t> adjacency_row(std::uint32_t v) const {
    return {adjacency_.data() + std::size_t{v} * words_, words_};
  }
  [[nodiscard]] std::size_t words() const noexcept { return words_; }

 private:
  GrassmannGraph(std::shared_ptr<const SubspaceIndex> index, GraphMode mode, std::size_t t, GraphOptions options);
  void build_adjacency();

  std::shared_ptr<const SubspaceIndex> index_;
  GraphMode mode_;
  std::size_t t_;
  GraphOptions options_;
  std::vector<std::uint64_t> members_;  // sorted global indices
  std::vector<bool> mask_;              // vertex_mask over the whole index (Delta mode)
  std::vector<Elem> rows_cache_;        // materialized vertex bases for small graphs
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adjacency_;
};

/// Grassmann distance k - dim(x ∩ y). Throws DimensionMismatch.
std::size_t grassmann_distance(const Subspace& x, const Subspace& y);

/// Shortest-path distances from source; kUnreachable for other components.
/// Throws VertexAbsent.
std::vector<std::uint32_t> bfs_distances(const GrassmannGraph& g, std::uint32_t source);

struct DiameterReport {
  bool connected = true;
  std::size_t diameter = 0;  // kInfinite when disconnected
  std::size_t component_count = 0;
  std::vector<std::size_t> component_sizes;
  std::vector<std::size_t> component_diameters;
};

/// Exact, from a BFS out of every vertex.
DiameterReport diameter_and_connectivity(const GrassmannGraph& g);

/// Components only (one BFS per component).
DiameterReport connectivity(const GrassmannGraph& g);

struct IsometryWitness {
  std::uint32_t x;
  std::uint32_t y;
  std::size_t graph_distance;      // d_t(x, y); kInfinite if unreachable
  std::size_t grassmann_distance;  // k - dim(x ∩ y)
};

struct IsometryReport {
  bool isometric = true;
  std::vector<IsometryWitness> witnesses;
};

/// Checks d_t(X, Y) = k - dim(X ∩ Y) for all pairs. Sources are processed in
/// order; once a violating source is found the scan stops after collecting
/// that source's violations (at most max_witnesses).
IsometryReport isometry_check(const GrassmannGraph& g, std::size_t max_witnesses = 100);

/// Diameter, connectivity and isometry from one all-sources pass.
struct AllPairsReport {
  DiameterReport diameter;
  IsometryReport isometry;
};
AllPairsReport analyze_all_pairs(const GrassmannGraph& g, std::size_t max_witnesses = 100);

}  // namespace gcodes
