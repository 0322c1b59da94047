#include "gcodes/codes.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace gcodes {

std::uint64_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// q^m, saturating at UINT64_MAX.
std::uint64_t pow_saturating(std::uint64_t q, std::size_t m) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

// Calls fn(word) once per nonzero codeword up to scalar multiples. The
// coefficient vectors are walked odometer-style so each step updates the
// word by one scaled generator row. Returns false if fn asked to stop.
template <typename Fn>
bool for_each_projective_codeword(const Matrix& g, Fn&& fn) {
  const FieldCtx& f = g.field();
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  std::vector<Elem> coeff(k);
  Vec word(n);
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::fill(coeff.begin(), coeff.end(), 0);
    coeff[lead] = 1;
    std::copy(g.row(lead).begin(), g.row(lead).end(), word.begin());
    while (true) {
      if (!fn(std::span<const Elem>(word))) return false;
      bool advanced = false;
      for (std::size_t i = k; i-- > lead + 1;) {
        const Elem old = coeff[i];
        const Elem next = old + 1 < f.q() ? old + 1 : 0;
        axpy(f, f.sub(next, old), g.row(i), word);
        coeff[i] = next;
        if (next != 0) {
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return true;
}

std::size_t enumerate_min_weight(const Matrix& g) {
  std::size_t best = kInfinite;
  for_each_projective_codeword(g, [&](std::span<const Elem> w) {
    best = std::min(best, weight(w));
    return best > 1;
  });
  return best;
}

std::size_t sample_min_weight(const LinearCode& c) {
  const FieldCtx& f = c.field();
  const std::size_t n = c.n();
  const std::size_t k = c.k();
  std::mt19937_64 rng(0x5eed'c0deULL + n * 131 + k);
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  std::size_t best = kInfinite;
  for (int trial = 0; trial < 2000; ++trial) {
    std::shuffle(cols.begin(), cols.end(), rng);
    Matrix permuted = c.generator().select_columns(cols);
    rref_in_place(f, permuted.data(), k, n);
    for (std::size_t r = 0; r < k; ++r) best = std::min(best, weight(permuted.row(r)));
    for (std::size_t r = 0; r + 1 < k; ++r) {
      Vec w = permuted.row_vector(r);
      axpy(f, 1, permuted.row(r + 1), w);
      best = std::min(best, weight(w));
    }
  }
  return best;
}

}  // namespace

std::vector<BigInt> weight_distribution(const LinearCode& c) {
  const std::uint64_t q = c.field().q();
  if (pow_saturating(q, c.k()) > kExactEnumerationCap) {
    throw Error(ErrorCode::TooLargeExact, "code too large to enumerate");
  }
  std::vector<std::uint64_t> counts(c.n() + 1, 0);
  for_each_projective_codeword(c.generator(), [&](std::span<const Elem> w) {
    ++counts[weight(w)];
    return true;
  });
  std::vector<BigInt> out(c.n() + 1);
  out[0] = 1;
  for (std::size_t i = 1; i <= c.n(); ++i) out[i] = BigInt(counts[i]) * (q - 1);
  return out;
}

std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& a, std::size_t k, std::uint64_t q) {
  const std::size_t n = a.size() - 1;
  const auto choose = [](std::size_t m, std::size_t r) -> BigInt {
    if (r > m) return 0;
    BigInt v = 1;
    for (std::size_t i = 1; i <= r; ++i) v = v * (m - r + i) / i;
    return v;
  };
  BigInt size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= q;
  std::vector<BigInt> b(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    BigInt total = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (a[i] == 0) continue;
      // Krawtchouk polynomial K_j(i)
      BigInt kj = 0;
      for (std::size_t s = 0; s <= j; ++s) {
        BigInt term = choose(i, s) * choose(n - i, j - s);
        if (term == 0) continue;
        for (std::size_t r = 0; r < j - s; ++r) term *= (q - 1);
        kj += (s % 2 == 0) ? term : BigInt(-term);
      }
      total += a[i] * kj;
    }
    b[j] = total / size;
  }
  return b;
}

MinDistance min_distance(const LinearCode& c, DistanceMode mode) {
  if (c.k() == 0) return {kInfinite, true};
  const std::uint64_t q = c.field().q();
  if (pow_saturating(q, c.k()) <= kExactEnumerationCap) return {enumerate_min_weight(c.generator()), true};
  if (pow_saturating(q, c.n() - c.k()) <= kExactEnumerationCap) {
    const LinearCode d = dual(c);
    const auto b = macwilliams_transform(weight_distribution(d), d.k(), q);
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (b[j] != 0) return {j, true};
    }
    return {kInfinite, true};
  }
  if (mode == DistanceMode::Exact) {
    throw Error(ErrorCode::TooLargeExact, "both the code and its dual exceed the enumeration cap");
  }
  return {sample_min_weight(c), false};
}

LinearCode dual(const LinearCode& c) { return LinearCode(orthogonal(c.space())); }

std::size_t LinearCode::dual_min_distance() const {
  std::size_t d = dual_distance_.load(std::memory_order_acquire);
  if (d == kUnknown) {
    d = min_distance(dual(*this)).value;
    dual_distance_.store(d, std::memory_order_release);
  }
  return d;
}

std::size_t LinearCode::t_max() const {
  const std::size_t d = dual_min_distance();
  if (d == kInfinite) return k();
  return std::min(d - 1, k());
}

std::size_t classify_tmax(const LinearCode& c) { return c.t_max(); }

bool is_in_ct(const LinearCode& c, std::size_t t, CtCriterion criterion) {
  if (t < 1 || t > c.n()) throw Error(ErrorCode::BadT, "t must satisfy 1 <= t <= n");
  if (criterion == CtCriterion::DualDistance) {
    const std::size_t d = c.dual_min_distance();
    return d == kInfinite || d >= t + 1;
  }
  if (t > c.k()) return false;
  const FieldCtx& f = c.field();
  const std::size_t k = c.k();
  if (criterion == CtCriterion::ColumnsIndependent) {
    const Matrix& g = c.generator();
    std::vector<Elem> buf(k * t);
    return for_each_combination(c.n(), t, [&](std::span<const std::size_t> cols) {
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < t; ++j) buf[r * t + j] = g(r, cols[j]);
      }
      return rank_in_place(f, buf, k, t) == t;
    });
  }
  return for_each_combination(c.n(), t, [&](std::span<const std::size_t> idx) {
    return intersect(c.space(), coordinate_subspace(f, c.n(), idx)).dim() == k - t;
  });
}

Subspace coordinate_subspace(const FieldCtx& field, std::size_t n, std::span<const std::size_t> indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= n || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error(ErrorCode::BadIndices, "coordinate indices must be strictly increasing and below n");
    }
  }
  Matrix basis(field, n - indices.size(), n);
  std::size_t row = 0;
  std::size_t next = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (next < indices.size() && indices[next] == j) {
      ++next;
      continue;
    }
    basis(row++, j) = 1;
  }
  return Subspace::from_rref(std::move(basis));
}

// ---------------------------------------------------------------------------
// MonomialMap

MonomialMap::MonomialMap(const FieldCtx& field, std::vector<std::size_t> perm, std::vector<Elem> scalars)
    : field_(&field), perm_(std::move(perm)), scalars_(std::move(scalars)) {
  const std::size_t n = perm_.size();
  if (scalars_.size() != n) throw Error(ErrorCode::DimensionMismatch, "perm and scalars differ in length");
  std::vector<bool> seen(n, false);
  for (auto p : perm_) {
    if (p >= n || seen[p]) throw Error(ErrorCode::InvalidArgument, "perm is not a permutation");
    seen[p] = true;
  }
  for (auto s : scalars_) {
    if (s == 0 || !field.contains(s)) throw Error(ErrorCode::InvalidArgument, "scalars must be nonzero field elements");
  }
}

MonomialMap MonomialMap::identity(const FieldCtx& field, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return {field, std::move(perm), std::vector<Elem>(n, 1)};
}

MonomialMap MonomialMap::then(const MonomialMap& next) const {
  if (next.n() != n() || next.field_ != field_) throw Error(ErrorCode::DimensionMismatch, "incompatible monomial maps");
  std::vector<std::size_t> perm(n());
  std::vector<Elem> scalars(n());
  for (std::size_t j = 0; j < n(); ++j) {
    perm[j] = next.perm_[perm_[j]];
    scalars[j] = field_->mul(scalars_[j], next.scalars_[perm_[j]]);
  }
  return {*field_, std::move(perm), std::move(scalars)};
}

MonomialMap MonomialMap::inverse() const {
  std::vector<std::size_t> perm(n());
  std::vector<Elem> scalars(n());
  for (std::size_t j = 0; j < n(); ++j) {
    perm[perm_[j]] = j;
    scalars[perm_[j]] = field_->inv(scalars_[j]);
  }
  return {*field_, std::move(perm), std::move(scalars)};
}

Matrix MonomialMap::apply(const Matrix& g) const {
  if (g.cols() != n() || &g.field() != field_) throw Error(ErrorCode::DimensionMismatch, "matrix incompatible with map");
  Matrix out(*field_, g.rows(), n());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t j = 0; j < n(); ++j) out(r, perm_[j]) = field_->mul(scalars_[j], g(r, j));
  }
  return out;
}

Vec MonomialMap::apply(std::span<const Elem> v) const {
  if (v.size() != n()) throw Error(ErrorCode::DimensionMismatch, "vector incompatible with map");
  Vec out(n());
  for (std::size_t j = 0; j < n(); ++j) out[perm_[j]] = field_->mul(scalars_[j], v[j]);
  return out;
}

LinearCode apply_monomial(const MonomialMap& m, const LinearCode& c) {
  if (m.n() != c.n() || &m.field() != &c.field()) {
    throw Error(ErrorCode::DimensionMismatch, "monomial map and code disagree on n or field");
  }
  return LinearCode::from_generator(m.apply(c.generator()));
}

}  // namespace gcodes
