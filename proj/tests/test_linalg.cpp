#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gcodes/subspace.hpp"
#include "oracle.hpp"

using namespace gcodes;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Rref, SpanAndShapeMatchOracle) {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const FieldCtx& f = field_of_order(q);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 3;
      const std::size_t cols = 1 + rng() % 4;
      const Matrix m = oracle::random_matrix(f, rows, cols, rng);
      const RrefResult r = rref(m);
      const auto s = oracle::span(m);
      ASSERT_EQ(r.rank, oracle::log_q(s.size(), q));
      ASSERT_EQ(oracle::span(r.matrix), s);
      ASSERT_EQ(rank(m), r.rank);
      for (std::size_t i = 0; i < r.rank; ++i) {
        const std::size_t p = r.pivots[i];
        ASSERT_EQ(r.matrix(i, p), 1U);
        for (std::size_t j = 0; j < p; ++j) ASSERT_EQ(r.matrix(i, j), 0U);
        for (std::size_t o = 0; o < r.matrix.rows(); ++o) {
          if (o != i) ASSERT_EQ(r.matrix(o, p), 0U);
        }
        if (i > 0) ASSERT_GT(p, r.pivots[i - 1]);
      }
    }
  }
}

TEST(Subspace, CanonicalFormIsUnique) {
  const FieldCtx& f = field_of_order(5);
  const Matrix a = Matrix::from_rows(f, {{1, 2, 3, 4}, {0, 1, 1, 1}});
  const Matrix b = Matrix::from_rows(f, {{1, 3, 4, 0}, {2, 4, 1, 3}});  // rows: a0 + a1, 2 a0
  EXPECT_EQ(Subspace::span(a), Subspace::span(b));
  EXPECT_EQ(Subspace::span(a).hash(), Subspace::span(b).hash());
}

TEST(Subspace, IntersectSumKernelMatchOracle) {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {2, 3, 4}) {
    const FieldCtx& f = field_of_order(q);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + rng() % 3;
      const Matrix ma = oracle::random_matrix(f, 1 + rng() % n, n, rng);
      const Matrix mb = oracle::random_matrix(f, 1 + rng() % n, n, rng);
      const Subspace a = Subspace::span(ma);
      const Subspace b = Subspace::span(mb);
      const auto sa = oracle::span(ma);
      const auto sb = oracle::span(mb);
      const Subspace m = intersect(a, b);
      ASSERT_EQ(oracle::span(m.basis()), oracle::meet(sa, sb));
      ASSERT_EQ(intersection_dim(a, b), m.dim());
      ASSERT_EQ(sum(a, b).dim() + m.dim(), a.dim() + b.dim());
      ASSERT_EQ(oracle::span(orthogonal(a).basis()), oracle::dual(sa, f, n));
      ASSERT_EQ(kernel(ma), orthogonal(a));
      ASSERT_TRUE(sum(a, b).contains(a));
      ASSERT_TRUE(a.contains(m));
    }
  }
}

TEST(Subspace, ComplementBasis) {
  const FieldCtx& f = field_of_order(3);
  const Subspace sub = Subspace::span(Matrix::from_rows(f, {{1, 1, 0, 0}}));
  const Subspace super = Subspace::span(Matrix::from_rows(f, {{1, 1, 0, 0}, {0, 0, 1, 2}, {0, 1, 0, 1}}));
  const Matrix c = complement_basis(sub, super);
  ASSERT_EQ(c.rows(), 2U);
  EXPECT_EQ(sum(sub, Subspace::span(c)), super);
  EXPECT_EQ(intersection_dim(sub, Subspace::span(c)), 0U);
  EXPECT_EQ(code_of([&] { (void)complement_basis(super, sub); }), ErrorCode::NotSubspace);
}

TEST(Subspace, AmbientMismatch) {
  const FieldCtx& f = field_of_order(2);
  const Subspace a = Subspace::full(f, 3);
  const Subspace b = Subspace::full(f, 4);
  EXPECT_EQ(code_of([&] { (void)intersect(a, b); }), ErrorCode::AmbientMismatch);
}

TEST(Hyperplanes, CountDistinctAndContainU) {
  for (std::uint64_t q : {2, 3, 4}) {
    const FieldCtx& f = field_of_order(q);
    const Subspace x = Subspace::span(Matrix::from_rows(f, {{1, 0, 0, 1, 0}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1}}));
    for (std::size_t udim = 0; udim < 4; ++udim) {
      Matrix ub(f, udim, 5);
      for (std::size_t r = 0; r < udim; ++r) {
        for (std::size_t j = 0; j < 5; ++j) ub(r, j) = x.basis()(r, j);
      }
      const Subspace u = Subspace::span(ub);
      const auto hs = hyperplanes_containing(x, u);
      ASSERT_EQ(BigInt(hs.size()), q_number(4 - udim, q));
      std::set<std::vector<Elem>> distinct;
      for (const auto& h : hs) {
        ASSERT_EQ(h.dim(), 3U);
        ASSERT_TRUE(x.contains(h));
        ASSERT_TRUE(h.contains(u));
        distinct.insert({h.basis().data().begin(), h.basis().data().end()});
      }
      ASSERT_EQ(distinct.size(), hs.size());
    }
  }
}

TEST(Hyperplanes, MergeBases) {
  const FieldCtx& f = field_of_order(3);
  const Subspace s = Subspace::full(f, 3);
  const Matrix b1 = Matrix::from_rows(f, {{1, 0, 0}, {0, 1, 0}});
  const Matrix b2 = Matrix::from_rows(f, {{1, 0, 0}, {0, 0, 1}});
  const Matrix m = merge_bases(s, b1, b2);
  EXPECT_EQ(m.rows(), 3U);
  EXPECT_EQ(rank(m), 3U);
  EXPECT_EQ(code_of([&] { (void)merge_bases(s, b1, b1); }), ErrorCode::EqualHyperplanes);
}

TEST(Counting, GaussianBinomials) {
  EXPECT_EQ(q_number(3, 2), 7);
  EXPECT_EQ(q_number(2, 5), 6);
  EXPECT_EQ(q_number(0, 7), 0);
  EXPECT_EQ(subspace_count(4, 2, 2), 35);
  EXPECT_EQ(subspace_count(4, 2, 9), 7462);
  EXPECT_EQ(subspace_count(5, 0, 3), 1);
  EXPECT_EQ(subspace_count(3, 4, 3), 0);
  // distinct spans of all 2 x 3 matrices over GF(3)
  const FieldCtx& f = field_of_order(3);
  std::set<std::vector<Elem>> spaces;
  for (const auto& flat : oracle::all_vectors(f, 6)) {
    Matrix m(f, 2, 3);
    std::copy(flat.begin(), flat.end(), m.data().begin());
    const Subspace s = Subspace::span(m);
    if (s.dim() == 2) spaces.insert({s.basis().data().begin(), s.basis().data().end()});
  }
  EXPECT_EQ(BigInt(spaces.size()), subspace_count(3, 2, 3));
}

TEST(ProjectivePoints, VisitsEachPointOnce) {
  const FieldCtx& f = field_of_order(4);
  std::set<std::vector<Elem>> seen;
  for_each_projective_point(f, 3, [&](std::span<const Elem> v) {
    std::vector<Elem> w(v.begin(), v.end());
    const auto lead = std::find_if(w.begin(), w.end(), [](Elem x) { return x != 0; });
    EXPECT_EQ(*lead, 1U);
    seen.insert(w);
  });
  EXPECT_EQ(BigInt(seen.size()), q_number(3, 4));
  int calls = 0;
  for_each_projective_point(f, 3, [&](std::span<const Elem>) { return ++calls < 5; });
  EXPECT_EQ(calls, 5);
}
