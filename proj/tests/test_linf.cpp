#include <gtest/gtest.h>

#include "hyperball/error.hpp"
#include "hyperball/linf.hpp"
#include "support/fixtures.hpp"

using namespace hyperball;
using fixtures::point;
using fixtures::q;

namespace {

HPolyhedron unit_square() { return box_polyhedron(Box{{q(0), q(0)}, {q(1), q(1)}}); }

HPolyhedron random_polyhedron(Rng& rng, std::size_t dim, std::size_t rows) {
  HPolyhedron p{dim, {}};
  for (std::size_t i = 0; i < rows; ++i) {
    LinearRow r{std::vector<Scalar>(dim), fixtures::random_dyadic(rng, -2, 6)};
    for (auto& c : r.a) c = q(rng.between(-2, 2));
    p.rows.push_back(std::move(r));
  }
  return p;
}

}  // namespace

TEST(LinfDist, Examples) {
  EXPECT_EQ(linf_dist(point({0, 0}), point({0, 0})), 0);
  EXPECT_EQ(linf_dist(point({1, -1}), point({4, 0})), 3);
  EXPECT_EQ(linf_dist(point({0, 0, 0}), point({1, 2, -5})), 5);
  EXPECT_THROW(linf_dist(point({0}), point({0, 0})), Error);
}

TEST(BallFamilyIntersection, Examples) {
  auto r = ball_family_intersection({{point({0, 0}), q(2)}, {point({4, 0}), q(2)}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r.witness, point({2, -2}));
  auto empty = ball_family_intersection({{point({0, 0}), q(1)}, {point({4, 0}), q(2)}});
  EXPECT_FALSE(empty);
  EXPECT_EQ(empty.empty_coordinate, 0u);
  auto single = ball_family_intersection({{point({3, 5}), q(0)}});
  EXPECT_EQ(single.witness, point({3, 5}));
}

TEST(LpFeasible, Examples) {
  auto half = halfspace({q(1), q(1)}, q(-1));
  auto r = lp_feasible(half);
  ASSERT_TRUE(r);
  EXPECT_TRUE(half.contains(r.witness));
  HPolyhedron contradiction{1, {{{q(1)}, q(0)}, {{q(-1)}, q(-1)}}};
  EXPECT_FALSE(lp_feasible(contradiction));
  // x2 >= 0, x1 - x2 >= 0, x1 + x2 <= -1
  HPolyhedron helly2{2, {{{q(0), q(-1)}, q(0)}, {{q(-1), q(1)}, q(0)}, {{q(1), q(1)}, q(-1)}}};
  EXPECT_FALSE(lp_feasible(helly2));
  EXPECT_FALSE(lp_feasible(helly2, {}, LpMethod::simplex));
}

TEST(LpFeasible, AgreesWithBallIntersectionOnRandomFamilies) {
  Rng rng(1000);
  HPolyhedron whole{0, {}};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 1 + rng.below(4);
    std::vector<Ball> balls;
    const std::size_t m = 1 + rng.below(4);
    for (std::size_t i = 0; i < m; ++i) {
      balls.push_back({fixtures::random_point(rng, dim, -5, 5), fixtures::random_dyadic(rng, 0, 4)});
    }
    whole.dim = dim;
    auto a = ball_family_intersection(balls);
    auto b = lp_feasible(whole, balls, trial % 2 ? LpMethod::simplex : LpMethod::fourier_motzkin);
    ASSERT_EQ(a.feasible, b.feasible) << "trial " << trial;
    if (a) {
      for (const auto& ball : balls) {
        EXPECT_TRUE(ball.contains(a.witness));
        EXPECT_TRUE(ball.contains(b.witness));
      }
    }
  }
}

TEST(DistToPolyhedron, Examples) {
  auto inside = dist_to_polyhedron(point({0, 0}), unit_square());
  EXPECT_EQ(inside.distance, 0);
  EXPECT_EQ(inside.nearest, point({0, 0}));
  auto half = halfspace({q(1), q(1)}, q(-1));
  for (auto method : {LpMethod::automatic, LpMethod::fourier_motzkin, LpMethod::simplex}) {
    auto d = dist_to_polyhedron(point({1, -1}), half, method);
    EXPECT_EQ(d.distance, q(1, 2));
    EXPECT_TRUE(half.contains(d.nearest));
    EXPECT_EQ(linf_dist(d.nearest, point({1, -1})), q(1, 2));
  }
  auto clamp = dist_to_polyhedron(point({3, 0}), unit_square());
  EXPECT_EQ(clamp.distance, 2);
  EXPECT_EQ(clamp.nearest, point({1, 0}));
  HPolyhedron empty{1, {{{q(1)}, q(0)}, {{q(-1)}, q(-1)}}};
  EXPECT_THROW(dist_to_polyhedron(point({0}), empty), Error);
}

TEST(DistToPolyhedron, RoutesAgreeAndZeroIffMember) {
  Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng.below(3);
    auto p = random_polyhedron(rng, dim, 1 + rng.below(4));
    if (!lp_feasible(p)) continue;
    auto x = fixtures::random_point(rng, dim, -6, 6);
    auto fm = dist_to_polyhedron(x, p, LpMethod::fourier_motzkin);
    auto sx = dist_to_polyhedron(x, p, LpMethod::simplex);
    auto fast = dist_to_polyhedron(x, p);
    EXPECT_EQ(fm.distance, sx.distance);
    EXPECT_EQ(fm.distance, fast.distance);
    EXPECT_TRUE(p.contains(fast.nearest));
    EXPECT_EQ(linf_dist(x, fast.nearest), fast.distance);
    EXPECT_EQ(fast.distance == 0, lp_feasible(p, {{x, q(0)}}).feasible);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Sigma, ExamplesAndConicalInequality) {
  auto x = point({0, 0}), y = point({2, 4});
  EXPECT_EQ(sigma(x, y, q(0)), x);
  EXPECT_EQ(sigma(x, y, q(1)), y);
  EXPECT_EQ(sigma(x, y, q(1, 2)), point({1, 2}));
  EXPECT_THROW(sigma(x, y, q(3, 2)), Error);
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng.below(4);
    auto a = fixtures::random_point(rng, dim, -5, 5), b = fixtures::random_point(rng, dim, -5, 5);
    auto c = fixtures::random_point(rng, dim, -5, 5), d = fixtures::random_point(rng, dim, -5, 5);
    for (const auto& t : default_t_grid()) {
      EXPECT_EQ(sigma(b, a, t), sigma(a, b, 1 - t));
      EXPECT_LE(linf_dist(sigma(a, b, t), sigma(c, d, t)), (1 - t) * linf_dist(a, c) + t * linf_dist(b, d));
      for (const auto& s : {q(0), q(1, 3), q(1)}) {
        EXPECT_EQ(linf_dist(sigma(a, b, s), sigma(a, b, t)), abs(s - t) * linf_dist(a, b));
      }
    }
  }
}

TEST(SigmaConvexity, PolyhedraPassUnionsFail) {
  auto half = halfspace({q(1), q(1)}, q(-1));
  std::vector<std::pair<LinfPoint, LinfPoint>> pairs{{point({-1, 0}), point({0, -3})},
                                                     {point({-5, 4}), point({2, -9})}};
  EXPECT_TRUE(sigma_convexity_check(half, pairs, default_t_grid()).holds());
  auto vacuous = sigma_convexity_check(half, pairs, {});
  EXPECT_TRUE(vacuous.holds());
  EXPECT_FALSE(vacuous.warnings.empty());
  EXPECT_THROW(sigma_convexity_check(half, {{point({0, 0}), point({-1, 0})}}, default_t_grid()), Error);

  Region two_boxes(2, {box_polyhedron(Box{{q(0), q(0)}, {q(1), q(1)}}),
                       box_polyhedron(Box{{q(3), q(0)}, {q(4), q(1)}})});
  auto report = sigma_convexity_check(two_boxes, {{point({0, 0}), point({4, 0})}}, default_t_grid());
  ASSERT_TRUE(report.refuted());
  auto p = report.certificate["point"].get<LinfPoint>();
  EXPECT_FALSE(two_boxes.contains(p));
}

TEST(SigmaConvexity, RandomPolyhedraAlwaysPass) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + rng.below(3);
    auto p = random_polyhedron(rng, dim, 1 + rng.below(3));
    std::vector<std::pair<LinfPoint, LinfPoint>> pairs;
    for (int i = 0; i < 3; ++i) {
      auto a = lp_feasible(p, {{fixtures::random_point(rng, dim, -4, 4), q(3)}});
      auto b = lp_feasible(p, {{fixtures::random_point(rng, dim, -4, 4), q(3)}});
      if (a && b) pairs.push_back({a.witness, b.witness});
    }
    EXPECT_TRUE(sigma_convexity_check(p, pairs, default_t_grid()).holds());
  }
}

TEST(DistanceConvexity, Examples) {
  auto sq = unit_square();
  std::vector<Scalar> grid{q(0), q(1, 2), q(1)};
  auto x = point({-2, 0}), y = point({2, 0});
  EXPECT_EQ(dist_to_polyhedron(sigma(x, y, q(0)), sq).distance, 2);
  EXPECT_EQ(dist_to_polyhedron(sigma(x, y, q(1, 2)), sq).distance, 0);
  EXPECT_EQ(dist_to_polyhedron(sigma(x, y, q(1)), sq).distance, 1);
  EXPECT_TRUE(distance_convexity_check(sq, x, y, grid).holds());
  EXPECT_TRUE(distance_convexity_check(sq, point({0, 0}), point({1, 1}), default_t_grid()).holds());
  EXPECT_TRUE(distance_convexity_check(sq, point({5, 5}), point({5, 5}), default_t_grid()).holds());
}

TEST(BoxRetraction, ExamplesAndProperties) {
  Box sq{{q(0), q(0)}, {q(1), q(1)}};
  EXPECT_EQ(box_retraction(sq, point({3, -2})), point({1, 0}));
  EXPECT_EQ(box_retraction(sq, point({0, 1})), point({0, 1}));
  Box line{{q(0)}, {q(1)}};
  auto rx = box_retraction(line, point({5}));
  EXPECT_EQ(linf_dist(rx, point({-3})), 4);
  EXPECT_LE(linf_dist(rx, point({-3})), max(linf_dist(point({5}), point({-3})), dist_to_box(line, point({-3}))));
  EXPECT_THROW(box_retraction(Box{{q(1)}, {q(0)}}, point({0})), Error);
}

TEST(MinModulusSelection, Examples) {
  EXPECT_EQ(min_modulus_selection(q(1), q(2), q(-1), q(2)), 0);
  EXPECT_EQ(min_modulus_selection(q(5), q(1), q(3), q(1)), 4);
  EXPECT_EQ(min_modulus_selection(q(3), q(1), q(0), q(2)), 2);
  EXPECT_EQ(min_modulus_selection(q(-3), q(1), q(0), q(2)), -2);
  EXPECT_THROW(min_modulus_selection(q(0), q(1), q(5), q(1)), Error);
}

TEST(LpFeasible, BoxPlusOneRowFastPathAgreesWithSimplex) {
  Rng rng(77);
  int feasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + rng.below(4);
    HPolyhedron p = box_polyhedron(fixtures::random_box(rng, dim, -4, 4));
    if (trial % 3 == 0) p.rows.resize(rng.below(p.rows.size()));  // partly unbounded
    LinearRow row{std::vector<Scalar>(dim), fixtures::random_dyadic(rng, -8, 8)};
    for (auto& c : row.a) c = q(rng.between(-3, 3));
    p.rows.push_back(row);
    std::vector<Ball> balls;
    if (trial % 2) balls.push_back({fixtures::random_point(rng, dim, -4, 4), fixtures::random_dyadic(rng, 0, 3)});
    auto fast = lp_feasible(p, balls);
    auto slow = lp_feasible(p, balls, LpMethod::simplex);
    ASSERT_EQ(fast.feasible, slow.feasible) << "trial " << trial;
    if (fast) {
      ++feasible;
      EXPECT_TRUE(p.contains(fast.witness));
      for (const auto& b : balls) EXPECT_TRUE(b.contains(fast.witness));
    }
  }
  EXPECT_GT(feasible, 100);
}
