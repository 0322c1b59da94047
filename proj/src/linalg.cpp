#include <algorithm>
#include <numeric>

#include "gcodes/subspace.hpp"

namespace gcodes {

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::from_rows(const FieldCtx& field, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!field.contains(rows[r][c])) throw Error(ErrorCode::InvalidArgument, "entry outside the field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_rows(const FieldCtx& field, const std::vector<Vec>& rows) {
  if (rows.empty()) throw Error(ErrorCode::DimensionMismatch, "column count of an empty row list is unknown");
  return from_rows(field, rows, rows.front().size());
}

Matrix Matrix::identity(const FieldCtx& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec Matrix::column_vector(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::append_row(std::span<const Elem> values) {
  if (values.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row length differs from column count");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::stacked(const Matrix& below) const {
  if (below.cols_ != cols_) throw Error(ErrorCode::DimensionMismatch, "cannot stack matrices of different widths");
  Matrix m(*field_, rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> columns) const {
  Matrix m(*field_, rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < columns.size(); ++j) m(r, j) = (*this)(r, columns[j]);
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(*field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix m(*field_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols_; ++i) {
      const Elem a = (*this)(r, i);
      if (a != 0) axpy(*field_, a, rhs.row(i), m.row(r));
    }
  }
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

inline void swap_rows(std::span<Elem> data, std::size_t cols, std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data.begin() + static_cast<std::ptrdiff_t>(a * cols),
                   data.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols),
                   data.begin() + static_cast<std::ptrdiff_t>(b * cols));
}

}  // namespace

std::size_t rref_in_place(const FieldCtx& f, std::span<Elem> data, std::size_t rows, std::size_t cols,
                          std::size_t* pivots) noexcept {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && data[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    swap_rows(data, cols, sel, r);
    Elem* pr = data.data() + r * cols;
    const Elem scale = f.inv(pr[c]);
    for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], scale);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Elem* pi = data.data() + i * cols;
      const Elem factor = pi[c];
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (std::size_t j = c; j < cols; ++j) pi[j] = f.fma(pi[j], nf, pr[j]);
    }
    if (pivots != nullptr) pivots[r] = c;
    ++r;
  }
  return r;
}

std::size_t rank_in_place(const FieldCtx& f, std::span<Elem> data, std::size_t rows, std::size_t cols) noexcept {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && data[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    swap_rows(data, cols, sel, r);
    const Elem* pr = data.data() + r * cols;
    const Elem scale = f.neg(f.inv(pr[c]));
    for (std::size_t i = r + 1; i < rows; ++i) {
      Elem* pi = data.data() + i * cols;
      if (pi[c] == 0) continue;
      const Elem factor = f.mul(pi[c], scale);
      for (std::size_t j = c; j < cols; ++j) pi[j] = f.fma(pi[j], factor, pr[j]);
    }
    ++r;
  }
  return r;
}

RrefResult rref(Matrix m) {
  std::vector<std::size_t> pivots(std::min(m.rows(), m.cols()));
  const std::size_t rk = rref_in_place(m.field(), m.data(), m.rows(), m.cols(), pivots.data());
  pivots.resize(rk);
  return {std::move(m), rk, std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return rank_in_place(copy.field(), copy.data(), copy.rows(), copy.cols());
}

std::size_t weight(std::span<const Elem> v) noexcept {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

void axpy(const FieldCtx& f, Elem a, std::span<const Elem> x, std::span<Elem> y) noexcept {
  if (a == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) y[i] = f.fma(y[i], a, x[i]);
  }
}

Elem dot(const FieldCtx& f, std::span<const Elem> u, std::span<const Elem> v) noexcept {
  Elem s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s = f.fma(s, u[i], v[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const Matrix& generators) {
  auto [m, rk, pivots] = rref(generators);
  Matrix basis(m.field(), rk, m.cols());
  std::copy_n(m.data().begin(), rk * m.cols(), basis.data().begin());
  return Subspace(std::move(basis));
}

Subspace Subspace::full(const FieldCtx& field, std::size_t n) { return Subspace(Matrix::identity(field, n)); }

Subspace Subspace::from_rref(Matrix basis) { return Subspace(std::move(basis)); }

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    const auto row = basis_.row(r);
    out.push_back(static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](Elem x) { return x != 0; }) -
                                           row.begin()));
  }
  return out;
}

namespace {

// Reduces v against an RREF basis; v becomes zero iff it lies in the span.
void reduce_against(const Matrix& basis, const std::vector<std::size_t>& pivots, std::span<Elem> v) {
  const FieldCtx& f = basis.field();
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    const Elem c = v[pivots[r]];
    if (c != 0) axpy(f, f.neg(c), basis.row(r), v);
  }
}

}  // namespace

bool Subspace::contains(std::span<const Elem> v) const {
  if (v.size() != ambient()) throw Error(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  Vec w(v.begin(), v.end());
  reduce_against(basis_, pivots(), w);
  return std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient() != ambient() || &other.field() != &field()) {
    throw Error(ErrorCode::AmbientMismatch, "subspaces live in different spaces");
  }
  const auto piv = pivots();
  Vec w(ambient());
  for (std::size_t r = 0; r < other.dim(); ++r) {
    std::copy(other.basis_.row(r).begin(), other.basis_.row(r).end(), w.begin());
    reduce_against(basis_, piv, w);
    if (std::any_of(w.begin(), w.end(), [](Elem x) { return x != 0; })) return false;
  }
  return true;
}

std::size_t Subspace::hash() const noexcept {
  std::size_t h = 1469598103934665603ULL ^ (dim() * 131 + ambient());
  for (Elem x : basis_.data()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

void require_compatible(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || &a.field() != &b.field()) {
    throw Error(ErrorCode::AmbientMismatch, "subspaces live in different spaces");
  }
}

}  // namespace

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  const FieldCtx& f = a.field();
  const std::size_t n = a.ambient();
  // Zassenhaus: rows (a_i | a_i) and (b_j | 0); after reduction, the rows with
  // zero left half span a ∩ b and the others span a + b.
  Matrix z(f, a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      z(i, c) = a.basis()(i, c);
      z(i, n + c) = a.basis()(i, c);
    }
  }
  for (std::size_t j = 0; j < b.dim(); ++j) {
    for (std::size_t c = 0; c < n; ++c) z(a.dim() + j, c) = b.basis()(j, c);
  }
  const auto [m, rk, pivots] = rref(std::move(z));
  const auto sum_dim =
      static_cast<std::size_t>(std::count_if(pivots.begin(), pivots.end(), [n](std::size_t p) { return p < n; }));
  Matrix basis(f, rk - sum_dim, n);
  for (std::size_t r = sum_dim; r < rk; ++r) {
    for (std::size_t c = 0; c < n; ++c) basis(r - sum_dim, c) = m(r, n + c);
  }
  Subspace out = Subspace::span(basis);
  if (out.dim() + sum_dim != a.dim() + b.dim()) {
    throw Error(ErrorCode::InvalidArgument, "internal: Grassmann identity violated in intersect");
  }
  return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  return Subspace::span(a.basis().stacked(b.basis()));
}

std::size_t intersection_dim(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  Matrix s = a.basis().stacked(b.basis());
  return a.dim() + b.dim() - rank_in_place(s.field(), s.data(), s.rows(), s.cols());
}

Subspace kernel(const Matrix& m) {
  const FieldCtx& f = m.field();
  const auto [r, rk, pivots] = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis(f, n - rk, n);
  std::size_t row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(row, free) = 1;
    for (std::size_t i = 0; i < rk; ++i) basis(row, pivots[i]) = f.neg(r(i, free));
    ++row;
  }
  return Subspace::span(basis);
}

Subspace orthogonal(const Subspace& s) { return kernel(s.basis()); }

Matrix complement_basis(const Subspace& sub, const Subspace& super) {
  require_compatible(sub, super);
  const auto piv = sub.pivots();
  Matrix rest(super.field(), super.dim(), super.ambient());
  for (std::size_t r = 0; r < super.dim(); ++r) {
    std::copy(super.basis().row(r).begin(), super.basis().row(r).end(), rest.row(r).begin());
    reduce_against(sub.basis(), piv, rest.row(r));
  }
  const auto [m, rk, pivots] = rref(std::move(rest));
  if (rk + sub.dim() != super.dim() || !super.contains(sub)) {
    throw Error(ErrorCode::NotSubspace, "first argument is not contained in the second");
  }
  Matrix out(super.field(), rk, super.ambient());
  std::copy_n(m.data().begin(), rk * super.ambient(), out.data().begin());
  return out;
}

// ---------------------------------------------------------------------------
// Hyperplanes

HyperplaneEnumerator::HyperplaneEnumerator(const Subspace& x, const Subspace& u)
    : u_(u), complement_(x.field(), 0, x.ambient()), m_(0) {
  if (!x.contains(u)) throw Error(ErrorCode::NotSubspace, "u is not contained in x");
  if (u.dim() + 1 > x.dim()) throw Error(ErrorCode::NotSubspace, "u must have codimension at least 1 in x");
  complement_ = complement_basis(u, x);
  m_ = complement_.rows();
  tail_.assign(m_ - 1, 0);
  const auto n = q_number(m_, x.field().q());
  count_ = n > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(n);
}

std::optional<Subspace> HyperplaneEnumerator::next() {
  if (done_) return std::nullopt;
  const FieldCtx& f = u_.field();
  const std::size_t n = u_.ambient();
  // functional a = (0..0, 1, tail) with the leading 1 at position lead_;
  // its kernel on span(complement) is spanned by e_j (j < lead) and
  // e_j - a_j e_lead (j > lead).
  Matrix gens(f, u_.dim() + m_ - 1, n);
  for (std::size_t r = 0; r < u_.dim(); ++r) {
    std::copy(u_.basis().row(r).begin(), u_.basis().row(r).end(), gens.row(r).begin());
  }
  std::size_t row = u_.dim();
  for (std::size_t j = 0; j < m_; ++j) {
    if (j == lead_) continue;
    auto g = gens.row(row++);
    axpy(f, 1, complement_.row(j), g);
    if (j > lead_) {
      const Elem a = tail_[j - lead_ - 1];
      axpy(f, f.neg(a), complement_.row(lead_), g);
    }
  }
  Subspace h = Subspace::span(gens);

  // advance the odometer over the entries after the leading 1
  bool carried = true;
  for (std::size_t i = m_; i-- > lead_ + 1;) {
    auto& digit = tail_[i - lead_ - 1];
    if (++digit < f.q()) {
      carried = false;
      break;
    }
    digit = 0;
  }
  if (carried) {
    ++lead_;
    if (lead_ >= m_) {
      done_ = true;
    } else {
      tail_.assign(m_ - lead_ - 1, 0);
    }
  }
  return h;
}

std::vector<Subspace> hyperplanes_containing(const Subspace& x, const Subspace& u) {
  HyperplaneEnumerator it(x, u);
  std::vector<Subspace> out;
  while (auto h = it.next()) out.push_back(std::move(*h));
  return out;
}

Matrix merge_bases(const Subspace& s, const Matrix& b1, const Matrix& b2) {
  const auto check = [&](const Matrix& b) {
    if (b.cols() != s.ambient() || b.rows() + 1 != s.dim() || rank(b) != b.rows()) {
      throw Error(ErrorCode::NotSubspace, "basis does not describe a hyperplane of s");
    }
    Subspace h = Subspace::span(b);
    if (!s.contains(h)) throw Error(ErrorCode::NotSubspace, "hyperplane not contained in s");
    return h;
  };
  const Subspace h1 = check(b1);
  const Subspace h2 = check(b2);
  if (h1 == h2) throw Error(ErrorCode::EqualHyperplanes, "the two hyperplanes coincide");
  Matrix out = b1;
  for (std::size_t r = 0; r < b2.rows(); ++r) {
    if (!h1.contains(b2.row(r))) {
      out.append_row(b2.row(r));
      return out;
    }
  }
  throw Error(ErrorCode::EqualHyperplanes, "second basis lies inside the first hyperplane");
}

// ---------------------------------------------------------------------------
// Counting

BigInt q_number(std::size_t m, std::uint64_t q) {
  BigInt sum = 0;
  BigInt power = 1;
  for (std::size_t i = 0; i < m; ++i) {
    sum += power;
    power *= q;
  }
  return sum;
}

BigInt subspace_count(std::size_t n, std::size_t k, std::uint64_t q) {
  if (k > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= q_number(n - i, q);
    den *= q_number(i + 1, q);
  }
  return num / den;
}

}  // namespace gcodes
