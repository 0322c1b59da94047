#include <gtest/gtest.h>

#include <map>

#include "gcodes/construct.hpp"
#include "gcodes/grassmann.hpp"
#include "oracle.hpp"

using namespace gcodes;

namespace {

LinearCode code(std::uint64_t q, const std::vector<Vec>& rows) {
  return LinearCode::from_generator(Matrix::from_rows(field_of_order(q), rows));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

std::vector<LinearCode> class_members(std::uint64_t q, std::size_t n, std::size_t k, std::size_t t) {
  const auto idx = std::make_shared<const SubspaceIndex>(field_of_order(q), n, k);
  const auto g = GrassmannGraph::delta(idx, t);
  std::vector<LinearCode> out;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) out.emplace_back(g.vertex(v));
  return out;
}

// Color of a vector from the definition: dimensions of explicit vector sets.
Color oracle_color(const Subspace& h, const Vec& p, std::size_t t) {
  const FieldCtx& f = h.field();
  const std::size_t n = h.ambient();
  const std::size_t k = h.dim() + 1;
  Matrix w = h.basis();
  w.append_row(p);
  const auto ws = oracle::span(w);
  Color best = Color::infinity();
  for_each_combination(n, t, [&](std::span<const std::size_t> idx) {
    const auto cs = oracle::span(coordinate_subspace(f, n, idx).basis());
    if (oracle::log_q(oracle::meet(ws, cs).size(), f.q()) == k - t + 1) {
      best = Color{{idx.begin(), idx.end()}, false};
      return false;
    }
    return true;
  });
  return best;
}

}  // namespace

TEST(Vandermonde, Examples) {
  const FieldCtx& f = field_of_order(5);
  const LinearCode c = vandermonde_mds(f, 4, 2, std::vector<Elem>{0, 1, 2, 3});
  EXPECT_EQ(c, code(5, {{1, 1, 1, 1}, {0, 1, 2, 3}}));
  EXPECT_EQ(c.t_max(), 2U);
  EXPECT_EQ(vandermonde_mds(f, 4, 2), c);
  EXPECT_EQ(vandermonde_mds(f, 3, 3).space(), Subspace::full(f, 3));
  EXPECT_EQ(code_of([] { (void)vandermonde_mds(field_of_order(2), 3, 2); }), ErrorCode::NotEnoughPoints);
  EXPECT_EQ(code_of([&] { (void)vandermonde_mds(f, 3, 2, std::vector<Elem>{1, 2, 1}); }), ErrorCode::DuplicatePoints);
}

TEST(Vandermonde, IsMdsOverExtensionFields) {
  for (std::uint64_t q : {4, 8, 9}) {
    const FieldCtx& f = field_of_order(q);
    for (std::size_t n = 1; n <= q; ++n) {
      for (std::size_t k = 1; k <= n; ++k) {
        const LinearCode c = vandermonde_mds(f, n, k);
        ASSERT_EQ(c.k(), k);
        ASSERT_EQ(c.t_max(), k);
        ASSERT_EQ(min_distance(c).value, n - k + 1);
      }
    }
  }
}

TEST(Coloring, MatchesDefinitionAndIsConstantOnCosets) {
  for (auto [q, n, k, t] : {std::tuple{3, 4, 2, 1}, {4, 4, 2, 2}, {2, 5, 3, 2}, {3, 5, 3, 2}}) {
    const auto members = class_members(q, n, k, t);
    const FieldCtx& f = field_of_order(q);
    int checked = 0;
    for (std::size_t i = 0; i < members.size() && checked < 40; i += 7) {
      for (std::size_t j = 1; j < members.size() && checked < 40; j += 11) {
        const LinearCode& x = members[i];
        const LinearCode& y = members[(i + j) % members.size()];
        if (x == y) continue;
        const Subspace m = intersect(x.space(), y.space());
        const auto hs = hyperplanes_containing(x.space(), m);
        const Subspace& h = hs.front();
        const Matrix reps = complement_basis(m, y.space());
        const Vec p = reps.row_vector(0);
        const Color c = psi_color(h, x, y, p, t);
        ASSERT_EQ(c, oracle_color(h, p, t));
        // p + h' for h' in h ∩ y, and scalar multiples
        if (m.dim() > 0) {
          Vec shifted = p;
          axpy(f, 1, m.basis().row(0), shifted);
          ASSERT_EQ(psi_color(h, x, y, shifted, t), c);
        }
        Vec scaled = p;
        for (auto& v : scaled) v = f.mul(v, f.generator());
        ASSERT_EQ(psi_color(h, x, y, scaled, t), c);
        ++checked;
      }
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(Coloring, InfinityWhenTheSpanIsInTheClass) {
  // y adjacent to x and h = x ∩ y: <h, p> = y is itself in the class
  const auto members = class_members(5, 4, 2, 1);
  const LinearCode& x = members[0];
  for (const auto& y : members) {
    const Subspace m = intersect(x.space(), y.space());
    if (m.dim() != 1) continue;
    EXPECT_TRUE(psi_color(m, x, y, complement_basis(m, y.space()).row_vector(0), 1).infinite);
    return;
  }
  FAIL();
}

TEST(Coloring, DegenerateSpanGetsTheZeroColumn) {
  // GF(3), n = 4, k = 2, t = 1: <h, p> = span{(1,1,1,0), (0,1,2,0)} vanishes on column 3
  const LinearCode x = code(3, {{1, 1, 1, 1}, {1, 1, 1, 0}});
  const LinearCode y = code(3, {{0, 1, 2, 0}, {1, 0, 1, 2}});
  ASSERT_TRUE(is_in_ct(x, 1));
  ASSERT_TRUE(is_in_ct(y, 1));
  ASSERT_EQ(intersection_dim(x.space(), y.space()), 0U);
  const Subspace h = Subspace::span(Matrix::from_rows(field_of_order(3), {{1, 1, 1, 0}}));
  const Color c = psi_color(h, x, y, Vec{0, 1, 2, 0}, 1);
  EXPECT_EQ(c, (Color{{3}, false}));
  EXPECT_EQ(c.str(), "(3)");
  EXPECT_EQ(code_of([&] { (void)psi_color(h, x, y, Vec{1, 1, 1, 0}, 1); }), ErrorCode::InvalidArgument);
  const Subspace not_in_x = Subspace::span(Matrix::from_rows(field_of_order(3), {{0, 1, 2, 0}}));
  EXPECT_EQ(code_of([&] { (void)psi_color(not_in_x, x, y, Vec{0, 1, 2, 0}, 1); }), ErrorCode::BadHyperplane);
}

TEST(Coloring, ColorOrder) {
  EXPECT_LT((Color{{0, 3}, false}), (Color{{1, 2}, false}));
  EXPECT_LT((Color{{2, 3}, false}), Color::infinity());
  EXPECT_EQ(Color::infinity().str(), "inf");
}

TEST(Coloring, MonochromaticBases) {
  const LinearCode x = code(3, {{1, 1, 1, 1}, {1, 1, 1, 0}});
  const LinearCode y = code(3, {{0, 1, 2, 0}, {1, 0, 1, 2}});
  const Subspace h = Subspace::span(Matrix::from_rows(field_of_order(3), {{1, 1, 1, 0}}));
  EXPECT_TRUE(is_monochromatic_basis(h, x, y, {Vec{0, 1, 2, 0}}, 1));
  // (1,0,1,2) spans with h a space with no zero column -> infinite color
  EXPECT_FALSE(is_monochromatic_basis(h, x, y, {Vec{0, 1, 2, 0}, Vec{1, 0, 1, 2}}, 1));
  EXPECT_EQ(code_of([&] { (void)is_monochromatic_basis(h, x, y, {Vec{0, 1, 2, 0}, Vec{0, 2, 1, 0}}, 1); }),
            ErrorCode::DependentVectors);
}

namespace {

std::vector<Vec> points_of(const Matrix& s) {
  const FieldCtx& f = s.field();
  std::vector<Vec> pts;
  for_each_projective_point(f, s.rows(), [&](std::span<const Elem> a) {
    Vec v(s.cols(), 0);
    for (std::size_t r = 0; r < s.rows(); ++r) axpy(f, a[r], s.row(r), v);
    pts.push_back(v);
  });
  return pts;
}

// Least color of a monochromatic basis of the plane s, by scanning all point pairs.
std::optional<Color> basis_scan_color(const Subspace& h, const LinearCode& x, const LinearCode& y, const Matrix& s,
                                      std::size_t t) {
  const auto points = points_of(s);
  std::optional<Color> best;
  for_each_combination(points.size(), 2, [&](std::span<const std::size_t> pick) {
    const std::vector<Vec> basis{points[pick[0]], points[pick[1]]};
    if (!is_monochromatic_basis(h, x, y, basis, t)) return;
    const Color c = psi_color(h, x, y, basis.front(), t);
    if (!best || c < *best) best = c;
  });
  return best;
}

}  // namespace

TEST(Coloring, SubspaceColorMatchesBasisScan) {
  int planes_total = 0;
  for (auto [q, n, k, t] : {std::tuple{3, 4, 2, 1}, {2, 5, 3, 1}, {3, 5, 3, 2}, {4, 5, 2, 2}, {7, 5, 3, 1}}) {
    const auto members = class_members(q, n, k, t);
    int planes = 0;
    for (std::size_t i = 0; i < members.size() && planes < 60; i += 13) {
      const LinearCode& x = members[i];
      for (std::size_t j = 0; j < members.size() && planes < 60; j += 5) {
        const LinearCode& y = members[j];
        const Subspace m = intersect(x.space(), y.space());
        if (k - m.dim() < 2) continue;
        const Subspace h = hyperplanes_containing(x.space(), m).back();
        const auto comp_points = points_of(complement_basis(m, y.space()));
        for (std::size_t a = 0; a + 1 < comp_points.size() && planes < 60; a += 3) {
          const Matrix s = Matrix::from_rows(field_of_order(q), {comp_points[a], comp_points[a + 1]});
          const SubspaceColor got = subspace_color(h, x, y, s, t);
          ASSERT_TRUE(got.exact);
          ASSERT_EQ(got.color, basis_scan_color(h, x, y, s, t));
          ++planes;
        }
      }
    }
    planes_total += planes;
  }
  EXPECT_GT(planes_total, 100);
}

TEST(Coloring, ColorablePlane) {
  // h and S both vanish on columns 0 and 5, so every point of S has color (0)
  const LinearCode x = code(3, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {1, 0, 0, 1, 1, 1}});
  const LinearCode y = code(3, {{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {1, 1, 1, 0, 0, 2}});
  ASSERT_TRUE(is_in_ct(x, 1));
  ASSERT_TRUE(is_in_ct(y, 1));
  ASSERT_EQ(intersection_dim(x.space(), y.space()), 0U);
  const FieldCtx& f = field_of_order(3);
  const Subspace h = Subspace::span(Matrix::from_rows(f, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}));
  const Matrix s = Matrix::from_rows(f, {{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}});
  const SubspaceColor got = subspace_color(h, x, y, s, 1);
  EXPECT_TRUE(got.exact);
  EXPECT_EQ(got.color, (Color{{0}, false}));
  EXPECT_EQ(got.color, basis_scan_color(h, x, y, s, 1));
  // replacing one direction with a point of infinite color breaks it
  const Matrix s2 = Matrix::from_rows(f, {{0, 0, 0, 1, 0, 0}, {1, 1, 1, 0, 0, 2}});
  EXPECT_EQ(subspace_color(h, x, y, s2, 1).color, basis_scan_color(h, x, y, s2, 1));
}

TEST(Step, AdjacentPairStepsOntoY) {
  const auto members = class_members(5, 4, 2, 1);
  const LinearCode& x = members[0];
  for (const auto& y : members) {
    if (intersection_dim(x.space(), y.space()) != 1) continue;
    const StepCertificate cert = step_toward(x, y, 1);
    EXPECT_EQ(cert.z_code, y);
    EXPECT_TRUE(verify_step(cert, x, y, 1));
    EXPECT_EQ(cert.hyperplane_rank, 0U);
    EXPECT_GE(count_step_codes(x, y, 1).total, 1);
    return;
  }
  FAIL();
}

TEST(Step, OppositeVandermondeCodesOverGf5) {
  // t = 2 is below the field bound C(4, 2) = 6 here, so success is not guaranteed;
  // pick the first pair whose step succeeds and check it against BFS.
  const FieldCtx& f = field_of_order(5);
  const LinearCode x = vandermonde_mds(f, 4, 2);
  const auto idx = std::make_shared<const SubspaceIndex>(f, 4, 2);
  const auto g = GrassmannGraph::delta(idx, 2);
  const auto dist = bfs_distances(g, g.vertex_of(x.space()));
  int found = 0;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const LinearCode y(g.vertex(v));
    if (intersection_dim(x.space(), y.space()) != 0) continue;
    try {
      const StepCertificate cert = step_toward(x, y, 2);
      ASSERT_TRUE(verify_step(cert, x, y, 2));
      EXPECT_EQ(cert.dim_x_meet_z, 1U);
      EXPECT_EQ(cert.dim_z_meet_y, 1U);
      const auto from_z = bfs_distances(g, g.vertex_of(cert.z_code.space()));
      EXPECT_EQ(from_z[v] + 1, dist[v]);
      ++found;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NoStepFound);
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Step, CountMatchesOracle) {
  // Z in C_t adjacent to x with d(Z, y) = d - 1, counted by scanning the class
  for (auto [q, n, k, t] : {std::tuple{5, 4, 2, 2}, {3, 4, 2, 2}, {4, 5, 3, 2}, {7, 4, 2, 1}}) {
    const auto members = class_members(q, n, k, t);
    ScanStats stats;
    int pairs = 0;
    for (std::size_t i = 0; i < members.size() && pairs < 12; i += 5) {
      for (std::size_t j = i + 1; j < members.size() && pairs < 12; j += 7) {
        const LinearCode& x = members[i];
        const LinearCode& y = members[j];
        const std::size_t d = k - intersection_dim(x.space(), y.space());
        if (d < 1 || d > t) continue;
        std::uint64_t expected = 0;
        for (const auto& z : members) {
          if (intersection_dim(x.space(), z.space()) + 1 == k &&
              k - intersection_dim(z.space(), y.space()) + 1 == d) {
            ++expected;
          }
        }
        const StepCount c = count_step_codes(x, y, t, &stats);
        ASSERT_EQ(c.total, expected);
        if (static_cast<std::uint64_t>(q) >= binomial(n, t)) ASSERT_GE(c.total, q_number(d, q));
        ++pairs;
      }
    }
    EXPECT_GT(pairs, 0);
    EXPECT_EQ(stats.bound_violations, 0U);
  }
}

TEST(Step, Preconditions) {
  const auto members = class_members(5, 4, 2, 1);
  const LinearCode& x = members[0];
  for (const auto& y : members) {
    if (intersection_dim(x.space(), y.space()) == 0) {
      EXPECT_EQ(code_of([&] { (void)step_toward(x, y, 1); }), ErrorCode::PreconditionDepth);
      break;
    }
  }
  EXPECT_EQ(code_of([&] { (void)step_toward(x, x, 1); }), ErrorCode::InvalidArgument);
  const LinearCode degenerate = code(5, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  EXPECT_EQ(code_of([&] { (void)step_toward(degenerate, x, 1); }), ErrorCode::NotInCt);
}

TEST(Step, NoStepFoundBelowTheBound) {
  // GF(4), C(5, 2) = 10 > 4: some pairs at distance 2 have no common neighbour in the class
  const auto members = class_members(4, 5, 2, 2);
  std::size_t blocked = 0;
  for (std::size_t i = 0; i < members.size() && blocked == 0; ++i) {
    for (std::size_t j = 0; j < members.size() && blocked == 0; ++j) {
      if (intersection_dim(members[i].space(), members[j].space()) != 0) continue;
      const StepCount c = count_step_codes(members[i], members[j], 2);
      if (c.total != 0) {
        ASSERT_TRUE(verify_step(step_toward(members[i], members[j], 2), members[i], members[j], 2));
        continue;
      }
      ++blocked;
      EXPECT_EQ(code_of([&] { (void)step_toward(members[i], members[j], 2); }), ErrorCode::NoStepFound);
    }
  }
  EXPECT_EQ(blocked, 1U);
}

TEST(Step, SomeHyperplanesFailButAnotherSucceeds) {
  const auto members = class_members(3, 5, 3, 2);
  for (std::size_t i = 0; i < members.size(); i += 3) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (intersection_dim(members[i].space(), members[j].space()) != 1) continue;
      const StepCount c = count_step_codes(members[i], members[j], 2);
      if (std::find(c.per_hyperplane.begin(), c.per_hyperplane.end(), 0U) == c.per_hyperplane.end()) continue;
      ASSERT_GT(c.total, 0);
      const StepCertificate cert = step_toward(members[i], members[j], 2);
      EXPECT_TRUE(verify_step(cert, members[i], members[j], 2));
      return;
    }
  }
  FAIL();
}

TEST(Shrink, Examples) {
  const FieldCtx& f = field_of_order(5);
  const LinearCode x = vandermonde_mds(f, 4, 3);
  const Subspace zero(f, 4);
  const LinearCode h = shrink(x, zero, 1);
  EXPECT_EQ(h.k(), 2U);
  EXPECT_TRUE(x.space().contains(h.space()));
  for (auto crit : {CtCriterion::DualDistance, CtCriterion::ColumnsIndependent, CtCriterion::CoordMeet}) {
    EXPECT_TRUE(is_in_ct(h, 1, crit));
  }
  // t = k - 1 with u = 0
  const LinearCode h2 = shrink(x, zero, 2);
  EXPECT_TRUE(is_in_ct(h2, 2));
  EXPECT_EQ(code_of([&] { (void)shrink(x, zero, 3); }), ErrorCode::BadU);
  const Subspace line = Subspace::span(Matrix::from_rows(f, {x.generator().row_vector(0)}));
  EXPECT_EQ(code_of([&] { (void)shrink(x, line, 2); }), ErrorCode::BadU);
  EXPECT_TRUE(shrink(x, line, 1).space().contains(line));
  const Subspace outside = Subspace::span(Matrix::from_rows(f, {{1, 0, 0, 0}}));
  EXPECT_EQ(code_of([&] { (void)shrink(x, outside, 1); }), ErrorCode::BadU);
}

TEST(Path, TrivialCases) {
  const auto members = class_members(5, 4, 2, 1);
  const LinearCode& x = members[0];
  EXPECT_EQ(geodesic_path(x, x, 1).codes.size(), 1U);
  for (const auto& y : members) {
    if (intersection_dim(x.space(), y.space()) == 1) {
      const GeodesicPath p = geodesic_path(x, y, 1);
      ASSERT_EQ(p.codes.size(), 2U);
      EXPECT_EQ(p.codes[1], y);
      break;
    }
  }
}

TEST(Path, OppositePairOverGf5) {
  const FieldCtx& f = field_of_order(5);
  const auto idx = std::make_shared<const SubspaceIndex>(f, 4, 2);
  const auto g = GrassmannGraph::delta(idx, 1);
  for (std::uint32_t s = 0; s < g.vertex_count(); s += 37) {
    const auto dist = bfs_distances(g, s);
    const LinearCode x(g.vertex(s));
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      const LinearCode y(g.vertex(v));
      const GeodesicPath p = geodesic_path(x, y, 1);
      ASSERT_EQ(p.length(), dist[v]);
      ASSERT_EQ(p.codes.front(), x);
      ASSERT_EQ(p.codes.back(), y);
      for (std::size_t i = 0; i + 1 < p.codes.size(); ++i) {
        ASSERT_EQ(intersection_dim(p.codes[i].space(), p.codes[i + 1].space()), 1U);
        ASSERT_TRUE(is_in_ct(p.codes[i + 1], 1));
      }
      ASSERT_EQ(p.stats.bound_violations, 0U);
    }
  }
}

TEST(Path, FailsWhereTheEmbeddingIsNotIsometric) {
  const auto idx = std::make_shared<const SubspaceIndex>(field_of_order(4), 5, 2);
  const auto g = GrassmannGraph::delta(idx, 2);
  const IsometryReport r = isometry_check(g, 1);
  ASSERT_FALSE(r.isometric);
  const LinearCode x(g.vertex(r.witnesses[0].x));
  const LinearCode y(g.vertex(r.witnesses[0].y));
  try {
    (void)geodesic_path(x, y, 2);
    FAIL() << "a path of Grassmann length cannot exist";
  } catch (const PathFailedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::PathFailed);
    ASSERT_FALSE(e.partial().empty());
    EXPECT_EQ(e.partial().front(), x);
  }
}

TEST(Opposite, Examples) {
  const FieldCtx& f5 = field_of_order(5);
  const LinearCode c = vandermonde_mds(f5, 4, 2);
  const OppositeResult r = opposite_code(c, 2);
  EXPECT_EQ(intersection_dim(c.space(), r.d.space()), 0U);
  EXPECT_TRUE(is_in_ct(r.d, 2));
  EXPECT_EQ(apply_monomial(r.witness, c), r.d);
  EXPECT_EQ(r.witness, r.rho.then(r.sigma).then(r.rho.inverse()));
  EXPECT_EQ(r.sigma, block_swap(f5, 4, 2, r.lambda));
  EXPECT_EQ(r.d.t_max(), c.t_max());

  const FieldCtx& f7 = field_of_order(7);
  const LinearCode c2 = code(7, {{1, 0, 1}, {0, 1, 3}});
  const OppositeResult r2 = opposite_code(c2, 1);
  EXPECT_EQ(intersection_dim(c2.space(), r2.d.space()), 1U);
  EXPECT_EQ(sum(c2.space(), r2.d.space()).dim(), 3U);
  EXPECT_EQ(r2.d.t_max(), c2.t_max());

  EXPECT_EQ(code_of([&] { (void)opposite_code(code(5, {{1, 0, 0, 0}, {0, 1, 1, 0}}), 1); }), ErrorCode::NotInCt);
}

TEST(Opposite, BlockSwapLayout) {
  const FieldCtx& f = field_of_order(7);
  // 2k <= n: (I A B) -> (λA I B)
  const MonomialMap s = block_swap(f, 5, 2, 3);
  EXPECT_EQ(s.perm(), (std::vector<std::size_t>{2, 3, 0, 1, 4}));
  EXPECT_EQ(s.scalars(), (std::vector<Elem>{1, 1, 3, 3, 1}));
  // 2k > n: (I 0 A1 / 0 I A2) -> (λA1 0 I / λA2 I 0)
  const MonomialMap s2 = block_swap(f, 5, 3, 3);
  EXPECT_EQ(s2.perm(), (std::vector<std::size_t>{3, 4, 2, 0, 1}));
  EXPECT_EQ(s2.scalars(), (std::vector<Elem>{1, 1, 1, 3, 3}));
}

TEST(Opposite, AllCodesOfSmallClasses) {
  for (auto [q, n, k, t] : {std::tuple{5, 4, 2, 1}, {5, 5, 3, 2}, {7, 4, 3, 3}, {7, 3, 1, 1}}) {
    for (const auto& c : class_members(q, n, k, t)) {
      const OppositeResult r = opposite_code(c, t);
      ASSERT_EQ(intersection_dim(c.space(), r.d.space()), 2 * k > n ? 2 * k - n : 0);
      ASSERT_TRUE(is_in_ct(r.d, t));
      ASSERT_EQ(apply_monomial(r.witness, c), r.d);
    }
  }
}
