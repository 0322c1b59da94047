#include "gcodes/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace gcodes {

std::string Color::str() const {
  if (infinite) return "inf";
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(tuple[i]);
  }
  return s + ")";
}

LinearCode vandermonde_mds(const FieldCtx& field, std::size_t n, std::size_t k, std::optional<std::vector<Elem>> points) {
  if (k > n) throw Error(ErrorCode::DimensionMismatch, "k exceeds n");
  std::vector<Elem> a;
  if (points) {
    a = std::move(*points);
    if (a.size() != n) throw Error(ErrorCode::InvalidArgument, "need exactly n points");
    for (auto v : a) {
      if (!field.contains(v)) throw Error(ErrorCode::InvalidArgument, "point is not a field element");
    }
    std::vector<Elem> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::DuplicatePoints, "evaluation points must be distinct");
    }
  } else {
    if (n > field.q()) {
      throw Error(ErrorCode::NotEnoughPoints,
                  "GF(" + std::to_string(field.q()) + ") has fewer than " + std::to_string(n) + " elements");
    }
    a.resize(n);
    std::iota(a.begin(), a.end(), Elem{0});
  }
  Matrix g(field, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    Elem v = 1;
    for (std::size_t i = 0; i < k; ++i) {
      g(i, j) = v;
      v = field.mul(v, a[j]);
    }
  }
  return LinearCode::from_generator(g);
}

namespace {

std::vector<std::vector<std::size_t>> t_subsets(std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(n, t, [&](std::span<const std::size_t> c) { out.emplace_back(c.begin(), c.end()); });
  return out;
}

// rank of the columns `cols` of a rows x n row-major matrix
std::size_t column_rank(const FieldCtx& f, std::span<const Elem> m, std::size_t rows, std::size_t n,
                        std::span<const std::size_t> cols, std::vector<Elem>& buf) {
  const std::size_t t = cols.size();
  buf.resize(rows * t);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < t; ++j) buf[r * t + j] = m[r * n + cols[j]];
  }
  return rank_in_place(f, std::span<Elem>(buf.data(), rows * t), rows, t);
}

// Scans every t-subset for a k-dim space with rows m: membership in C_t and
// whether the bound dim(m ∩ C_I) <= k - t + 1 fails anywhere.
struct CtScan {
  bool member = true;
  bool violation = false;
};

CtScan scan_ct(const FieldCtx& f, std::span<const Elem> m, std::size_t k, std::size_t n,
               const std::vector<std::vector<std::size_t>>& subsets, std::vector<Elem>& buf) {
  CtScan s;
  const std::size_t t = subsets.empty() ? 0 : subsets.front().size();
  for (const auto& cols : subsets) {
    const std::size_t r = column_rank(f, m, k, n, cols, buf);
    if (r < t) s.member = false;
    if (r + 1 < t) s.violation = true;
  }
  return s;
}

void require_in_ct(const LinearCode& c, std::size_t t, const char* name) {
  if (t < 1 || t > c.n() || !is_in_ct(c, t)) {
    throw Error(ErrorCode::NotInCt, std::string(name) + " is not in C_" + std::to_string(t));
  }
}

void require_same_shape(const LinearCode& x, const LinearCode& y) {
  if (&x.field() != &y.field() || x.n() != y.n() || x.k() != y.k()) {
    throw Error(ErrorCode::DimensionMismatch, "codes differ in field, length or dimension");
  }
}

void check_hyperplane(const Subspace& h, const LinearCode& x, const LinearCode& y) {
  if (&h.field() != &x.field() || h.ambient() != x.n() || h.dim() + 1 != x.k() || !x.space().contains(h) ||
      !h.contains(intersect(x.space(), y.space()))) {
    throw Error(ErrorCode::BadHyperplane, "h must be a hyperplane of x containing x ∩ y");
  }
}

Color color_of(const Subspace& h, std::span<const Elem> p, std::size_t t,
               const std::vector<std::vector<std::size_t>>& subsets) {
  const FieldCtx& f = h.field();
  const std::size_t n = h.ambient();
  const std::size_t k = h.dim() + 1;
  std::vector<Elem> w(h.basis().data().begin(), h.basis().data().end());
  w.insert(w.end(), p.begin(), p.end());
  std::vector<Elem> buf;
  for (const auto& cols : subsets) {
    // dim(W ∩ C_I) = k - rank(W restricted to I)
    if (column_rank(f, w, k, n, cols, buf) + 1 == t) return {cols, false};
  }
  return Color::infinity();
}

struct StepSetup {
  Subspace meet;
  Matrix reps;  // complement of x ∩ y in y
  std::size_t d;
};

StepSetup step_setup(const LinearCode& x, const LinearCode& y, std::size_t t) {
  require_same_shape(x, y);
  require_in_ct(x, t, "x");
  require_in_ct(y, t, "y");
  Subspace meet = intersect(x.space(), y.space());
  const std::size_t d = x.k() - meet.dim();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "x and y are equal");
  if (d > t) {
    throw Error(ErrorCode::PreconditionDepth,
                "distance " + std::to_string(d) + " exceeds t = " + std::to_string(t));
  }
  Matrix reps = complement_basis(meet, y.space());
  return {std::move(meet), std::move(reps), d};
}

Vec combine(const FieldCtx& f, const Matrix& rows, std::span<const Elem> coeff) {
  Vec v(rows.cols(), 0);
  for (std::size_t i = 0; i < rows.rows(); ++i) axpy(f, coeff[i], rows.row(i), v);
  return v;
}

// Calls fn(h, rank, z, rows_of_<h,z>) over the scan order of step_toward.
template <typename Fn>
void scan_steps(const LinearCode& x, const StepSetup& s, ScanStats& stats, Fn&& fn) {
  const FieldCtx& f = x.field();
  const std::size_t n = x.n();
  const std::size_t k = x.k();
  HyperplaneEnumerator hyperplanes(x.space(), s.meet);
  std::size_t rank = 0;
  std::vector<Elem> rows(k * n);
  while (auto h = hyperplanes.next()) {
    ++stats.hyperplanes;
    std::copy(h->basis().data().begin(), h->basis().data().end(), rows.begin());
    const bool keep_going = for_each_projective_point(f, s.d, [&](std::span<const Elem> a) {
      const Vec z = combine(f, s.reps, a);
      std::copy(z.begin(), z.end(), rows.begin() + static_cast<std::ptrdiff_t>((k - 1) * n));
      ++stats.candidates;
      return fn(*h, rank, z, std::span<const Elem>(rows));
    });
    if (!keep_going) return;
    ++rank;
  }
}

}  // namespace

Color psi_color(const Subspace& h, const LinearCode& x, const LinearCode& y, std::span<const Elem> p, std::size_t t) {
  check_hyperplane(h, x, y);
  if (t < 1 || t > x.n()) throw Error(ErrorCode::BadT, "t must satisfy 1 <= t <= n");
  if (p.size() != x.n() || !y.space().contains(p)) throw Error(ErrorCode::InvalidArgument, "p must lie in y");
  if (h.contains(p)) throw Error(ErrorCode::RepInH, "p lies in h");
  return color_of(h, p, t, t_subsets(x.n(), t));
}

namespace {

// rank of `vectors` modulo h ∩ y, compared against their count
void require_independent_mod(const Subspace& hy, const std::vector<Vec>& vectors) {
  Matrix m = hy.basis();
  for (const auto& v : vectors) m.append_row(v);
  if (rank(m) != hy.dim() + vectors.size()) {
    throw Error(ErrorCode::DependentVectors, "vectors are dependent modulo h ∩ y");
  }
}

}  // namespace

bool is_monochromatic_basis(const Subspace& h, const LinearCode& x, const LinearCode& y,
                            const std::vector<Vec>& vectors, std::size_t t) {
  check_hyperplane(h, x, y);
  for (const auto& v : vectors) {
    if (v.size() != x.n() || !y.space().contains(v)) throw Error(ErrorCode::InvalidArgument, "vectors must lie in y");
  }
  require_independent_mod(intersect(h, y.space()), vectors);
  if (vectors.empty()) return false;
  const auto subsets = t_subsets(x.n(), t);
  const Color first = color_of(h, vectors.front(), t, subsets);
  if (first.infinite) return false;
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    if (color_of(h, vectors[i], t, subsets) != first) return false;
  }
  return true;
}

SubspaceColor subspace_color(const Subspace& h, const LinearCode& x, const LinearCode& y, const Matrix& s,
                             std::size_t t, std::uint64_t point_cap, std::uint64_t sample_budget) {
  check_hyperplane(h, x, y);
  const FieldCtx& f = x.field();
  std::vector<Vec> lifts;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s.cols() != x.n() || !y.space().contains(s.row(i))) {
      throw Error(ErrorCode::InvalidArgument, "rows of s must lie in y");
    }
    lifts.push_back(s.row_vector(i));
  }
  const Subspace hy = intersect(h, y.space());
  require_independent_mod(hy, lifts);
  const std::size_t dim = lifts.size();
  SubspaceColor out;
  if (dim == 0) return out;

  const auto subsets = t_subsets(x.n(), t);
  // Points of each finite color, stacked on top of h ∩ y; a color spans S
  // when its rank reaches dim(h ∩ y) + dim S.
  std::map<Color, Matrix> by_color;
  const auto visit = [&](std::span<const Elem> a) {
    const Vec p = combine(f, s, a);
    Color c = color_of(h, p, t, subsets);
    if (c.infinite) return;
    auto it = by_color.find(c);
    if (it == by_color.end()) it = by_color.emplace(std::move(c), hy.basis()).first;
    if (it->second.rows() < hy.dim() + dim) {
      Matrix trial = it->second;
      trial.append_row(p);
      if (rank(trial) == trial.rows()) it->second = std::move(trial);
    }
  };

  BigInt points = q_number(dim, f.q());
  if (points <= BigInt(point_cap)) {
    for_each_projective_point(f, dim, [&](std::span<const Elem> a) { visit(a); });
  } else {
    out.exact = false;
    std::mt19937_64 rng(0xc0105ULL + dim);
    std::uniform_int_distribution<Elem> pick(0, f.q() - 1);
    std::vector<Elem> a(dim);
    for (std::uint64_t trial = 0; trial < sample_budget; ++trial) {
      for (auto& v : a) v = pick(rng);
      if (std::all_of(a.begin(), a.end(), [](Elem v) { return v == 0; })) continue;
      visit(a);
    }
  }
  for (const auto& [color, rows] : by_color) {
    if (rows.rows() == hy.dim() + dim) {
      out.color = color;
      break;
    }
  }
  return out;
}

StepCertificate step_toward(const LinearCode& x, const LinearCode& y, std::size_t t, ScanStats* stats) {
  const StepSetup s = step_setup(x, y, t);
  const FieldCtx& f = x.field();
  const auto subsets = t_subsets(x.n(), t);
  std::vector<Elem> buf;
  ScanStats local;
  std::optional<StepCertificate> found;
  scan_steps(x, s, local, [&](const Subspace& h, std::size_t rank, const Vec& z, std::span<const Elem> rows) {
    const CtScan r = scan_ct(f, rows, x.k(), x.n(), subsets, buf);
    if (r.violation) ++local.bound_violations;
    if (!r.member) return true;
    LinearCode zc = LinearCode::from_generator(Matrix::from_rows(f, {z}, x.n()).stacked(h.basis()));
    StepCertificate cert{std::move(zc), h, z, 0, 0, true, rank, local.candidates};
    cert.dim_x_meet_z = intersection_dim(x.space(), cert.z_code.space());
    cert.dim_z_meet_y = intersection_dim(cert.z_code.space(), y.space());
    found = std::move(cert);
    return false;
  });
  if (stats != nullptr) stats->merge(local);
  if (!found) {
    throw Error(ErrorCode::NoStepFound, "no <H, z> in C_" + std::to_string(t) + " after " +
                                            std::to_string(local.candidates) + " candidates");
  }
  return std::move(*found);
}

bool verify_step(const StepCertificate& cert, const LinearCode& x, const LinearCode& y, std::size_t t) {
  const Subspace& z = cert.z_code.space();
  if (z.dim() != x.k() || z.ambient() != x.n()) return false;
  const std::size_t meet = intersection_dim(x.space(), y.space());
  const std::size_t xz = intersection_dim(x.space(), z);
  const std::size_t zy = intersection_dim(z, y.space());
  const bool in_ct = is_in_ct(cert.z_code, t, CtCriterion::DualDistance);
  Matrix gen = cert.hyperplane_used.basis();
  gen.append_row(cert.coset_rep);
  return xz == cert.dim_x_meet_z && zy == cert.dim_z_meet_y && in_ct == cert.in_ct && in_ct &&
         xz + 1 == x.k() && zy == meet + 1 && Subspace::span(gen) == z && x.space().contains(cert.hyperplane_used) &&
         y.space().contains(cert.coset_rep);
}

StepCount count_step_codes(const LinearCode& x, const LinearCode& y, std::size_t t, ScanStats* stats) {
  const StepSetup s = step_setup(x, y, t);
  const FieldCtx& f = x.field();
  const auto subsets = t_subsets(x.n(), t);
  std::vector<Elem> buf;
  ScanStats local;
  StepCount out;
  scan_steps(x, s, local, [&](const Subspace&, std::size_t rank, const Vec&, std::span<const Elem> rows) {
    if (out.per_hyperplane.size() <= rank) out.per_hyperplane.resize(rank + 1, 0);
    const CtScan r = scan_ct(f, rows, x.k(), x.n(), subsets, buf);
    if (r.violation) ++local.bound_violations;
    if (r.member) ++out.per_hyperplane[rank];
    return true;
  });
  for (auto c : out.per_hyperplane) out.total += c;
  if (stats != nullptr) stats->merge(local);
  return out;
}

namespace {

// Hyperplanes of x containing u and no x ∩ C_I, in enumeration order.
// Calls fn(hyperplane); fn returns false to stop.
template <typename Fn>
void for_each_shrink(const LinearCode& x, const Subspace& u, std::size_t t, Fn&& fn) {
  require_in_ct(x, t, "x");
  if (&u.field() != &x.field() || u.ambient() != x.n() || !x.space().contains(u)) {
    throw Error(ErrorCode::BadU, "u must be a subspace of x");
  }
  if (u.dim() + t >= x.k()) throw Error(ErrorCode::BadU, "dim u must be below k - t");
  std::vector<Subspace> meets;
  for_each_combination(x.n(), t, [&](std::span<const std::size_t> idx) {
    meets.push_back(intersect(x.space(), coordinate_subspace(x.field(), x.n(), idx)));
  });
  HyperplaneEnumerator hyperplanes(x.space(), u);
  while (auto h = hyperplanes.next()) {
    const bool avoids = std::none_of(meets.begin(), meets.end(), [&](const Subspace& m) { return h->contains(m); });
    if (avoids && !fn(*h)) return;
  }
}

}  // namespace

LinearCode shrink(const LinearCode& x, const Subspace& u, std::size_t t) {
  std::optional<Subspace> found;
  for_each_shrink(x, u, t, [&](const Subspace& h) {
    found = h;
    return false;
  });
  if (!found) throw Error(ErrorCode::NoShrinkFound, "every hyperplane through u contains some x ∩ C_I");
  return LinearCode(std::move(*found));
}

GeodesicPath geodesic_path(const LinearCode& x, const LinearCode& y, std::size_t t) {
  require_same_shape(x, y);
  require_in_ct(x, t, "x");
  require_in_ct(y, t, "y");
  const FieldCtx& f = x.field();
  const std::size_t k = x.k();
  GeodesicPath path;
  path.codes.push_back(x);
  while (!(path.codes.back() == y)) {
    const LinearCode cur = path.codes.back();
    const Subspace meet = intersect(cur.space(), y.space());
    const std::size_t d = k - meet.dim();
    if (d <= t) {
      try {
        path.codes.push_back(step_toward(cur, y, t, &path.stats).z_code);
      } catch (const Error& e) {
        throw PathFailedError(e.what(), path.codes);
      }
      continue;
    }
    // Far pair: T = X' + <z> with X' a shrink of cur through cur ∩ y.
    const Matrix reps = complement_basis(meet, y.space());
    std::optional<LinearCode> next;
    try {
      for_each_shrink(cur, meet, t, [&](const Subspace& xprime) {
        ++path.stats.hyperplanes;
        for_each_projective_point(f, reps.rows(), [&](std::span<const Elem> a) {
          ++path.stats.candidates;
          Matrix gen = xprime.basis();
          gen.append_row(combine(f, reps, a));
          LinearCode tc = LinearCode::from_generator(gen);
          if (is_in_ct(tc, t) && intersection_dim(tc.space(), cur.space()) + 1 == k &&
              intersection_dim(tc.space(), y.space()) == meet.dim() + 1) {
            next = std::move(tc);
            return false;
          }
          return true;
        });
        return !next;
      });
    } catch (const Error& e) {
      throw PathFailedError(e.what(), path.codes);
    }
    if (!next) throw PathFailedError("no intermediate code T found", path.codes);
    path.codes.push_back(std::move(*next));
  }
  return path;
}

MonomialMap block_swap(const FieldCtx& field, std::size_t n, std::size_t k, Elem lambda) {
  const std::size_t m = std::min(k, n - k);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Elem> scalars(n, 1);
  for (std::size_t j = 0; j < m; ++j) {
    perm[j] = k + j;
    perm[k + j] = j;
    scalars[k + j] = lambda;
  }
  return {field, std::move(perm), std::move(scalars)};
}

OppositeResult opposite_code(const LinearCode& c, std::size_t t) {
  require_in_ct(c, t, "c");
  const FieldCtx& f = c.field();
  const std::size_t n = c.n();
  const std::size_t k = c.k();
  const auto pivots = c.space().pivots();
  std::vector<std::size_t> perm(n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    perm[pivots[i]] = i;
    is_pivot[pivots[i]] = true;
  }
  std::size_t next = pivots.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) perm[j] = next++;
  }
  const MonomialMap rho(f, std::move(perm), std::vector<Elem>(n, 1));
  const Matrix gprime = rref(rho.apply(c.generator())).matrix;  // (I | A B) or (I 0 A1 / 0 I A2)
  const std::size_t target = std::min(2 * k, n);
  for (Elem lambda = 1; lambda < f.q(); ++lambda) {
    const MonomialMap sigma = block_swap(f, n, k, lambda);
    const Matrix gsecond = sigma.apply(gprime);
    if (rank(gprime.stacked(gsecond)) != target) continue;
    const MonomialMap witness = rho.then(sigma).then(rho.inverse());
    LinearCode d = apply_monomial(witness, c);
    return {std::move(d), witness, lambda, rho, sigma};
  }
  throw Error(ErrorCode::NoLambda, "no nonzero λ gives an opposite code over GF(" + std::to_string(f.q()) + ")");
}

}  // namespace gcodes
