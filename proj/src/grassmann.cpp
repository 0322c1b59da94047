#include "gcodes/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

namespace gcodes {

// ---------------------------------------------------------------------------
// SubspaceIndex

SubspaceIndex::SubspaceIndex(const FieldCtx& field, std::size_t n, std::size_t k, std::uint64_t cap)
    : field_(&field), n_(n), k_(k) {
  if (k > n) throw Error(ErrorCode::DimensionMismatch, "k exceeds n");
  if (n > 24) throw Error(ErrorCode::InvalidArgument, "ambient dimension above 24 is not supported");
  const BigInt total = subspace_count(n, k, field.q());
  if (total > BigInt(cap)) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "Γ(" + std::to_string(n) + "," + std::to_string(k) + ") over GF(" + std::to_string(field.q()) +
                    ") has " + total.str() + " vertices, cap is " + std::to_string(cap));
  }
  const std::uint64_t q = field.q();
  std::uint64_t offset = 0;
  for_each_combination(n, k, [&](std::span<const std::size_t> piv) {
    Pattern p;
    p.pivots.assign(piv.begin(), piv.end());
    p.offset = offset;
    std::uint32_t mask = 0;
    for (auto c : piv) mask |= 1U << c;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = piv[r] + 1; c < n; ++c) {
        if ((mask >> c & 1U) == 0) p.free_positions.push_back(static_cast<std::uint32_t>(r * n + c));
      }
    }
    std::uint64_t block = 1;
    for (std::size_t i = 0; i < p.free_positions.size(); ++i) block *= q;
    offset += block;
    pattern_by_mask_.emplace(mask, static_cast<std::uint32_t>(patterns_.size()));
    patterns_.push_back(std::move(p));
  });
  size_ = offset;
  if (BigInt(size_) != total) throw Error(ErrorCode::InvalidArgument, "internal: pattern count mismatch");
}

void SubspaceIndex::decode(std::uint64_t index, std::span<Elem> out) const {
  if (index >= size_) throw Error(ErrorCode::VertexAbsent, "subspace index out of range");
  auto it = std::upper_bound(patterns_.begin(), patterns_.end(), index,
                             [](std::uint64_t i, const Pattern& p) { return i < p.offset; });
  const Pattern& p = *std::prev(it);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k_ * n_), 0);
  for (std::size_t r = 0; r < k_; ++r) out[r * n_ + p.pivots[r]] = 1;
  std::uint64_t local = index - p.offset;
  const std::uint64_t q = field_->q();
  for (std::size_t i = p.free_positions.size(); i-- > 0;) {
    out[p.free_positions[i]] = static_cast<Elem>(local % q);
    local /= q;
  }
}

Subspace SubspaceIndex::at(std::uint64_t index) const {
  Matrix m(*field_, k_, n_);
  decode(index, m.data());
  return Subspace::from_rref(std::move(m));
}

std::uint64_t SubspaceIndex::index_of_rref(std::span<const Elem> rref) const {
  std::uint32_t mask = 0;
  for (std::size_t r = 0; r < k_; ++r) {
    std::size_t c = 0;
    while (c < n_ && rref[r * n_ + c] == 0) ++c;
    if (c == n_) throw Error(ErrorCode::DimensionMismatch, "zero row in RREF basis");
    mask |= 1U << c;
  }
  const auto it = pattern_by_mask_.find(mask);
  if (it == pattern_by_mask_.end()) throw Error(ErrorCode::DimensionMismatch, "not an RREF basis");
  const Pattern& p = patterns_[it->second];
  std::uint64_t local = 0;
  const std::uint64_t q = field_->q();
  for (auto pos : p.free_positions) local = local * q + rref[pos];
  return p.offset + local;
}

std::uint64_t SubspaceIndex::index_of(const Subspace& s) const {
  if (s.dim() != k_ || s.ambient() != n_ || &s.field() != field_) {
    throw Error(ErrorCode::DimensionMismatch, "subspace does not belong to this Grassmannian");
  }
  return index_of_rref(s.basis().data());
}

// ---------------------------------------------------------------------------
// GrassmannGraph

namespace {

bool columns_independent(const FieldCtx& f, std::span<const Elem> rows, std::size_t k, std::size_t n,
                         const std::vector<std::vector<std::size_t>>& subsets, std::vector<Elem>& buf) {
  for (const auto& cols : subsets) {
    const std::size_t t = cols.size();
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t j = 0; j < t; ++j) buf[r * t + j] = rows[r * n + cols[j]];
    }
    if (rank_in_place(f, std::span<Elem>(buf.data(), k * t), k, t) != t) return false;
  }
  return true;
}

}  // namespace

GrassmannGraph::GrassmannGraph(std::shared_ptr<const SubspaceIndex> index, GraphMode mode, std::size_t t,
                               GraphOptions options)
    : index_(std::move(index)), mode_(mode), t_(t), options_(options) {
  const SubspaceIndex& idx = *index_;
  const std::size_t k = idx.k();
  const std::size_t n = idx.n();
  if (mode_ == GraphMode::Full) {
    members_.resize(idx.size());
    std::iota(members_.begin(), members_.end(), std::uint64_t{0});
  } else {
    mask_.assign(idx.size(), false);
    std::vector<std::vector<std::size_t>> subsets;
    for_each_combination(n, t, [&](std::span<const std::size_t> c) { subsets.emplace_back(c.begin(), c.end()); });
    std::vector<Elem> rows(k * n);
    std::vector<Elem> buf(k * t);
    for (std::uint64_t i = 0; i < idx.size(); ++i) {
      idx.decode(i, rows);
      if (columns_independent(idx.field(), rows, k, n, subsets, buf)) {
        mask_[i] = true;
        members_.push_back(i);
      }
    }
  }
  if (members_.size() <= options_.adjacency_cache_limit) {
    rows_cache_.resize(members_.size() * k * n);
    for (std::size_t v = 0; v < members_.size(); ++v) {
      idx.decode(members_[v], std::span<Elem>(rows_cache_.data() + v * k * n, k * n));
    }
    build_adjacency();
  }
}

GrassmannGraph GrassmannGraph::full(std::shared_ptr<const SubspaceIndex> index, GraphOptions options) {
  return GrassmannGraph(std::move(index), GraphMode::Full, 0, options);
}

GrassmannGraph GrassmannGraph::delta(std::shared_ptr<const SubspaceIndex> index, std::size_t t, GraphOptions options) {
  if (t < 1 || t > index->k()) throw Error(ErrorCode::BadT, "t must satisfy 1 <= t <= k");
  return GrassmannGraph(std::move(index), GraphMode::Delta, t, options);
}

std::optional<std::uint32_t> GrassmannGraph::local_of(std::uint64_t global) const {
  if (global >= index_->size()) return std::nullopt;
  if (mode_ == GraphMode::Full) return static_cast<std::uint32_t>(global);
  if (!mask_[global]) return std::nullopt;
  const auto it = std::lower_bound(members_.begin(), members_.end(), global);
  return static_cast<std::uint32_t>(it - members_.begin());
}

void GrassmannGraph::vertex_rows(std::uint32_t v, std::span<Elem> out) const {
  const std::size_t kn = index_->k() * index_->n();
  if (!rows_cache_.empty()) {
    std::copy_n(rows_cache_.begin() + static_cast<std::ptrdiff_t>(std::size_t{v} * kn), kn, out.begin());
  } else {
    index_->decode(members_.at(v), out);
  }
}

Subspace GrassmannGraph::vertex(std::uint32_t v) const {
  if (v >= members_.size()) throw Error(ErrorCode::VertexAbsent, "vertex out of range");
  return index_->at(members_[v]);
}

std::uint32_t GrassmannGraph::vertex_of(const Subspace& s) const {
  const auto local = local_of(index_->index_of(s));
  if (!local) throw Error(ErrorCode::VertexAbsent, "subspace is not a vertex of this graph");
  return *local;
}

std::size_t GrassmannGraph::meet_dim(std::uint32_t v, std::uint32_t w) const {
  const std::size_t k = index_->k();
  const std::size_t n = index_->n();
  Matrix::Storage buf(2 * k * n);
  vertex_rows(v, std::span<Elem>(buf.data(), k * n));
  vertex_rows(w, std::span<Elem>(buf.data() + k * n, k * n));
  return 2 * k - rank_in_place(index_->field(), std::span<Elem>(buf.data(), buf.size()), 2 * k, n);
}

std::vector<std::uint32_t> GrassmannGraph::neighbors_pairwise(std::uint32_t v) const {
  if (v >= members_.size()) throw Error(ErrorCode::VertexAbsent, "vertex out of range");
  std::vector<std::uint32_t> out;
  const std::size_t k = index_->k();
  for (std::uint32_t w = 0; w < members_.size(); ++w) {
    if (w != v && meet_dim(v, w) + 1 == k) out.push_back(w);
  }
  return out;
}

std::vector<std::uint32_t> GrassmannGraph::neighbors_scan(std::uint32_t v) const {
  if (v >= members_.size()) throw Error(ErrorCode::VertexAbsent, "vertex out of range");
  const FieldCtx& f = index_->field();
  const std::size_t k = index_->k();
  const std::size_t n = index_->n();
  std::vector<std::uint32_t> out;
  if (k == 0 || k == n) return out;
  const Subspace x = vertex(v);
  const Matrix outside = complement_basis(x, Subspace::full(f, n));  // n - k rows
  HyperplaneEnumerator hyperplanes(x, Subspace(f, n));
  Matrix::Storage buf(k * n);
  Vec w(n);
  while (auto h = hyperplanes.next()) {
    const Matrix inside = complement_basis(*h, x);  // one vector of x outside h
    // Every neighbour through h is <h, w> with w = a0 * inside + sum a_i outside_i,
    // (a_1..a_{n-k}) normalized; this lists each neighbour exactly once.
    for_each_projective_point(f, n - k, [&](std::span<const Elem> a) {
      for (Elem a0 = 0; a0 < f.q(); ++a0) {
        std::fill(w.begin(), w.end(), 0);
        axpy(f, a0, inside.row(0), w);
        for (std::size_t i = 0; i < n - k; ++i) axpy(f, a[i], outside.row(i), w);
        std::copy(h->basis().data().begin(), h->basis().data().end(), buf.begin());
        std::copy(w.begin(), w.end(), buf.begin() + static_cast<std::ptrdiff_t>((k - 1) * n));
        rref_in_place(f, std::span<Elem>(buf.data(), buf.size()), k, n);
        if (const auto local = local_of(index_->index_of_rref(std::span<const Elem>(buf.data(), buf.size())))) {
          out.push_back(*local);
        }
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

void GrassmannGraph::build_adjacency() {
  const std::size_t count = members_.size();
  words_ = (count + 63) / 64;
  adjacency_.assign(count * words_, 0);
  const auto set = [&](std::uint32_t a, std::uint32_t b) { adjacency_[std::size_t{a} * words_ + b / 64] |= 1ULL << (b % 64); };
  const std::uint64_t q = index_->field().q();
  const std::size_t k = index_->k();
  const std::size_t n = index_->n();

  AdjacencyStrategy strategy = options_.strategy;
  if (strategy == AdjacencyStrategy::Auto) {
    const BigInt degree = BigInt(q) * q_number(k, q) * q_number(n - k, q);
    strategy = BigInt(count / 2 + 1) < degree ? AdjacencyStrategy::Pairwise : AdjacencyStrategy::Scan;
  }
  if (strategy == AdjacencyStrategy::Pairwise) {
    for (std::uint32_t a = 0; a < count; ++a) {
      for (std::uint32_t b = a + 1; b < count; ++b) {
        if (meet_dim(a, b) + 1 == k) {
          set(a, b);
          set(b, a);
        }
      }
    }
  } else {
    for (std::uint32_t a = 0; a < count; ++a) {
      for (auto b : neighbors_scan(a)) set(a, b);
    }
  }
}

bool GrassmannGraph::adjacent(std::uint32_t a, std::uint32_t b) const {
  if (a >= members_.size() || b >= members_.size()) throw Error(ErrorCode::VertexAbsent, "vertex out of range");
  if (has_adjacency_cache()) return (adjacency_[std::size_t{a} * words_ + b / 64] >> (b % 64) & 1ULL) != 0;
  return a != b && meet_dim(a, b) + 1 == index_->k();
}

std::vector<std::uint32_t> GrassmannGraph::neighbors(std::uint32_t v) const {
  if (v >= members_.size()) throw Error(ErrorCode::VertexAbsent, "vertex out of range");
  if (!has_adjacency_cache()) return neighbors_scan(v);
  std::vector<std::uint32_t> out;
  const auto row = adjacency_row(v);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = row[w];
    while (bits != 0) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distances

std::size_t grassmann_distance(const Subspace& x, const Subspace& y) {
  if (x.dim() != y.dim()) throw Error(ErrorCode::DimensionMismatch, "subspaces of different dimension");
  return x.dim() - intersection_dim(x, y);
}

std::vector<std::uint32_t> bfs_distances(const GrassmannGraph& g, std::uint32_t source) {
  const std::size_t count = g.vertex_count();
  if (source >= count) throw Error(ErrorCode::VertexAbsent, "BFS source is not a vertex");
  std::vector<std::uint32_t> dist(count, kUnreachable);
  dist[source] = 0;
  if (g.has_adjacency_cache()) {
    const std::size_t words = g.words();
    std::vector<std::uint64_t> visited(words, 0);
    std::vector<std::uint64_t> next(words);
    visited[source / 64] |= 1ULL << (source % 64);
    std::vector<std::uint32_t> frontier{source};
    std::vector<std::uint32_t> upcoming;
    std::uint32_t level = 0;
    while (!frontier.empty()) {
      std::fill(next.begin(), next.end(), 0);
      for (auto v : frontier) {
        const auto row = g.adjacency_row(v);
        for (std::size_t w = 0; w < words; ++w) next[w] |= row[w];
      }
      ++level;
      upcoming.clear();
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = next[w] & ~visited[w];
        visited[w] |= bits;
        while (bits != 0) {
          const auto v = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
          dist[v] = level;
          upcoming.push_back(v);
          bits &= bits - 1;
        }
      }
      frontier.swap(upcoming);
    }
    return dist;
  }
  std::deque<std::uint32_t> queue{source};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

// Component label per vertex, plus sizes.
std::vector<std::uint32_t> label_components(const GrassmannGraph& g, DiameterReport& report) {
  const std::size_t count = g.vertex_count();
  std::vector<std::uint32_t> label(count, kUnreachable);
  for (std::uint32_t s = 0; s < count; ++s) {
    if (label[s] != kUnreachable) continue;
    const auto id = static_cast<std::uint32_t>(report.component_sizes.size());
    const auto dist = bfs_distances(g, s);
    std::size_t size = 0;
    for (std::uint32_t v = 0; v < count; ++v) {
      if (dist[v] != kUnreachable) {
        label[v] = id;
        ++size;
      }
    }
    report.component_sizes.push_back(size);
  }
  report.component_count = report.component_sizes.size();
  report.connected = report.component_count <= 1;
  return label;
}

}  // namespace

DiameterReport connectivity(const GrassmannGraph& g) {
  DiameterReport report;
  label_components(g, report);
  report.diameter = report.connected ? 0 : kInfinite;
  return report;
}

AllPairsReport analyze_all_pairs(const GrassmannGraph& g, std::size_t max_witnesses) {
  AllPairsReport out;
  DiameterReport& d = out.diameter;
  const auto label = label_components(g, d);
  d.component_diameters.assign(d.component_count, 0);
  const std::size_t count = g.vertex_count();
  const std::size_t k = g.index().k();
  bool checking_isometry = true;
  for (std::uint32_t s = 0; s < count; ++s) {
    const auto dist = bfs_distances(g, s);
    std::size_t ecc = 0;
    for (std::uint32_t v = 0; v < count; ++v) {
      if (dist[v] != kUnreachable) ecc = std::max<std::size_t>(ecc, dist[v]);
    }
    auto& cd = d.component_diameters[label[s]];
    cd = std::max(cd, ecc);
    if (!checking_isometry) continue;
    for (std::uint32_t y = s + 1; y < count; ++y) {
      const std::size_t expected = k - g.meet_dim(s, y);
      const std::size_t actual = dist[y] == kUnreachable ? kInfinite : dist[y];
      if (actual != expected) {
        out.isometry.isometric = false;
        if (out.isometry.witnesses.size() < max_witnesses) out.isometry.witnesses.push_back({s, y, actual, expected});
      }
    }
    if (!out.isometry.isometric) checking_isometry = false;
  }
  if (d.connected) {
    d.diameter = d.component_diameters.empty() ? 0 : d.component_diameters.front();
  } else {
    d.diameter = kInfinite;
  }
  return out;
}

DiameterReport diameter_and_connectivity(const GrassmannGraph& g) {
  DiameterReport d;
  const auto label = label_components(g, d);
  d.component_diameters.assign(d.component_count, 0);
  for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
    const auto dist = bfs_distances(g, s);
    std::size_t ecc = 0;
    for (auto x : dist) {
      if (x != kUnreachable) ecc = std::max<std::size_t>(ecc, x);
    }
    d.component_diameters[label[s]] = std::max(d.component_diameters[label[s]], ecc);
  }
  d.diameter = d.connected ? (d.component_diameters.empty() ? 0 : d.component_diameters.front()) : kInfinite;
  if (g.mode() == GraphMode::Full && g.vertex_count() > 0) {
    const std::size_t n = g.index().n();
    const std::size_t k = g.index().k();
    if (d.diameter != std::min(k, n - k)) {
      throw Error(ErrorCode::InvalidArgument, "internal: diam Γ(n,k) differs from min(k, n-k)");
    }
  }
  return d;
}

IsometryReport isometry_check(const GrassmannGraph& g, std::size_t max_witnesses) {
  IsometryReport out;
  const std::size_t count = g.vertex_count();
  const std::size_t k = g.index().k();
  for (std::uint32_t s = 0; s < count; ++s) {
    const auto dist = bfs_distances(g, s);
    for (std::uint32_t y = s + 1; y < count; ++y) {
      const std::size_t expected = k - g.meet_dim(s, y);
      const std::size_t actual = dist[y] == kUnreachable ? kInfinite : dist[y];
      if (actual != expected) {
        out.isometric = false;
        if (out.witnesses.size() < max_witnesses) out.witnesses.push_back({s, y, actual, expected});
      }
    }
    if (!out.isometric) break;
  }
  return out;
}

}  // namespace gcodes
