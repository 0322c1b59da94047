#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "gcodes/gf.hpp"

namespace gcodes {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  using Storage = boost::container::small_vector<Elem, 40>;

  Matrix(const FieldCtx& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix from_rows(const FieldCtx& field, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_rows(const FieldCtx& field, const std::vector<Vec>& rows);
  static Matrix identity(const FieldCtx& field, std::size_t n);

  [[nodiscard]] const FieldCtx& field() const noexcept { return *field_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] Vec row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
  [[nodiscard]] Vec column_vector(std::size_t c) const;
  [[nodiscard]] std::span<const Elem> data() const noexcept { return {data_.data(), data_.size()}; }
  [[nodiscard]] std::span<Elem> data() noexcept { return {data_.data(), data_.size()}; }

  void append_row(std::span<const Elem> values);
  [[nodiscard]] Matrix stacked(const Matrix& below) const;
  [[nodiscard]] Matrix select_columns(std::span<const std::size_t> columns) const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix operator*(const Matrix& rhs) const;

  [[nodiscard]] bool is_zero() const noexcept;
  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  const FieldCtx* field_;
  std::size_t rows_;
  std::size_t cols_;
  Storage data_;
};

/// In-place reduction of a row-major buffer to reduced row echelon form.
/// Zero rows end up at the bottom. Writes the pivot columns to `pivots`
/// (if non-null, must have room for min(rows, cols) entries) and returns the rank.
std::size_t rref_in_place(const FieldCtx& field, std::span<Elem> data, std::size_t rows, std::size_t cols,
                          std::size_t* pivots = nullptr) noexcept;

/// Rank only; clobbers the buffer (forward elimination, no back substitution).
std::size_t rank_in_place(const FieldCtx& field, std::span<Elem> data, std::size_t rows, std::size_t cols) noexcept;

struct RrefResult {
  Matrix matrix;  // same shape as the input, zero rows at the bottom
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Number of nonzero coordinates.
std::size_t weight(std::span<const Elem> v) noexcept;

/// y += a * x
void axpy(const FieldCtx& field, Elem a, std::span<const Elem> x, std::span<Elem> y) noexcept;

/// Standard symmetric bilinear form sum(u_i v_i).
Elem dot(const FieldCtx& field, std::span<const Elem> u, std::span<const Elem> v) noexcept;

}  // namespace gcodes
