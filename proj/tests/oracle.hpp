#pragma once

// Brute-force reference computations for tiny parameters.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gcodes/codes.hpp"

namespace oracle {

using gcodes::Elem;
using gcodes::FieldCtx;
using gcodes::Matrix;
using VecSet = std::set<std::vector<Elem>>;

// All vectors of GF(q)^n.
inline std::vector<std::vector<Elem>> all_vectors(const FieldCtx& f, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == f.q()) v[i++] = 0;
    if (i == n) return out;
  }
}

// Every linear combination of the rows.
inline VecSet span(const Matrix& m) {
  const FieldCtx& f = m.field();
  VecSet out;
  for (const auto& c : all_vectors(f, m.rows())) {
    std::vector<Elem> w(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t j = 0; j < m.cols(); ++j) w[j] = f.add(w[j], f.mul(c[r], m(r, j)));
    }
    out.insert(w);
  }
  return out;
}

inline std::size_t log_q(std::size_t size, std::uint64_t q) {
  std::size_t d = 0;
  while (size > 1) {
    size /= q;
    ++d;
  }
  return d;
}

inline VecSet meet(const VecSet& a, const VecSet& b) {
  VecSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

inline std::size_t weight(const std::vector<Elem>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

// Minimum nonzero weight, SIZE_MAX for the zero space.
inline std::size_t min_weight(const VecSet& s) {
  std::size_t best = SIZE_MAX;
  for (const auto& v : s) {
    const std::size_t w = weight(v);
    if (w > 0) best = std::min(best, w);
  }
  return best;
}

// The dual by testing every vector.
inline VecSet dual(const VecSet& s, const FieldCtx& f, std::size_t n) {
  VecSet out;
  for (const auto& v : all_vectors(f, n)) {
    bool ok = true;
    for (const auto& c : s) {
      Elem d = 0;
      for (std::size_t j = 0; j < n; ++j) d = f.add(d, f.mul(v[j], c[j]));
      if (d != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(v);
  }
  return out;
}

inline Matrix random_matrix(const FieldCtx& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(f, rows, cols);
  std::uniform_int_distribution<Elem> pick(0, f.q() - 1);
  for (auto& v : m.data()) v = pick(rng);
  return m;
}

}  // namespace oracle
