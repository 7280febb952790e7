#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "maximin/error.hpp"
#include "maximin/instances.hpp"
#include "maximin/solvers.hpp"
#include "oracles.hpp"

using namespace maximin;

namespace {

// The refined grid under-estimates a triangle maximum on sharp ridges of the objective.
constexpr double kGridSlack = 1e-5;

std::array<Point, 3> ccw(Point a, Point b, Point c) {
  if (doubled_signed_area(a, b, c) < 0) std::swap(b, c);
  return {a, b, c};
}

double triangle_max(std::span<const WeightedPoint> pts, const Triangle& t, std::size_t resolution) {
  const auto poly = ccw(t.v1(), t.v2(), t.v3());
  return oracle::grid_maximize(pts, poly, resolution, 1e-2).value;
}

Instance equilateral() {
  const double h = std::sqrt(3.0) / 2.0;
  return Instance({{1, {0, 0}, 1}, {2, {1, 0}, 1}, {3, {0.5, h}, 1}});
}

}  // namespace

TEST(Bounds, DemandPointAtCentroidGivesZeroLowerBound) {
  const Triangle t({0, 0}, {3, 0}, {0, 3});
  const std::vector<WeightedPoint> pts{{1, t.centroid(), 1.5}};
  const Objective f(pts);
  EXPECT_EQ(bounds_set1(t, pts, f).lb, 0.0);
}

TEST(Bounds, TinyFarTriangleBoundsCoincide) {
  const Triangle t({100, 100}, {100.001, 100}, {100, 100.001});
  const std::vector<WeightedPoint> pts{{1, {0, 0}, 2}};
  const Objective f(pts);
  const auto b = bounds_set1(t, pts, f);
  const double expected = 2.0 * std::hypot(100.0, 100.0);
  EXPECT_NEAR(b.lb, expected, 3e-3);
  EXPECT_NEAR(b.ub, expected, 3e-3);
  EXPECT_LE(b.lb, b.ub);
}

TEST(Bounds, ThreePointInstanceBoundsCoincide) {
  const auto inst = equilateral();
  const auto pts = inst.points();
  const auto b = bounds_set2(pts[0], pts[1], pts[2], inst);
  const auto s = solve_triangle(pts[0], pts[1], pts[2]);
  EXPECT_DOUBLE_EQ(b.lb, s.objective);
  EXPECT_DOUBLE_EQ(b.ub, s.objective);
}

TEST(Bounds, SandwichOnDelaunayTrianglesOfPrefixInstance) {
  const auto inst = generate({.n = 10});
  const auto pts = inst.points();
  const auto locations = inst.locations();
  const auto mesh = delaunay(std::span<const Point>(locations));
  const Objective f(inst);
  for (std::size_t i = 0; i < mesh.count(); ++i) {
    const auto& ids = mesh.triangles[i];
    const Triangle t = mesh.triangle(locations, i);
    const double grid = triangle_max(pts, t, 500);
    const auto b1 = bounds_set1(t, pts, f);
    const auto b2 = bounds_set2(pts[ids[0]], pts[ids[1]], pts[ids[2]], f);
    EXPECT_LE(b1.lb, grid + kGridSlack);
    EXPECT_LE(grid, b1.ub + 1e-9);
    EXPECT_LE(b2.lb, grid + kGridSlack);
    EXPECT_LE(grid, b2.ub + 1e-9);
  }
}

TEST(Bounds, SandwichOnRandomTriangles) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> pick(0, 7);
  for (int i = 0; i < 1000; ++i) {
    const auto pts = oracle::random_points(8, rng);
    const Objective f(pts);
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    if (std::abs(doubled_signed_area(pts[a].location, pts[b].location, pts[c].location)) < 1e-3) continue;
    const Triangle t(pts[a].location, pts[b].location, pts[c].location);
    const double grid = triangle_max(pts, t, 60);
    const auto b1 = bounds_set1(t, pts, f);
    const auto b2 = bounds_set2(pts[a], pts[b], pts[c], f);
    ASSERT_LE(b1.lb, grid + kGridSlack);
    ASSERT_LE(grid, b1.ub + 1e-9);
    ASSERT_LE(b2.lb, grid + kGridSlack);
    ASSERT_LE(grid, b2.ub + 1e-9);
  }
}

TEST(Bounds, UpperBoundMonotoneUnderSplit) {
  const auto inst = generate({.n = 50});
  const auto pts = inst.points();
  const Objective f(inst);
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    if (std::abs(doubled_signed_area(a, b, c)) < 1e-6) continue;
    const Triangle t(a, b, c);
    const double parent = bounds_set1(t, pts, f).ub;
    for (const auto& child : split_triangle(t)) ASSERT_LE(bounds_set1(child, pts, f).ub, parent + 1e-12);
  }
}

TEST(Btst, FirstBenchmarkSet1) {
  const auto inst = generate({.n = 100});
  const auto s = btst(inst, BtstVariant::Btst1, {.epsilon = 1e-10});
  EXPECT_NEAR(s.objective, 2.13972, 5e-6);
  EXPECT_NEAR(s.location.x, 8.04233, 5e-6);
  EXPECT_NEAR(s.location.y, 9.83530, 5e-6);
  EXPECT_NEAR(s.stats.phase1_lb, 1.65610, 5e-6);
  EXPECT_NEAR(s.stats.phase1_ub, 4.84069, 5e-6);
  EXPECT_EQ(s.stats.phase1_remaining, 84u);
  EXPECT_EQ(s.stats.initial_triangles, 189u);
}

TEST(Btst, FirstBenchmarkSet2) {
  const auto inst = generate({.n = 100});
  const auto s = btst(inst, BtstVariant::Btst2, {.epsilon = 1e-10});
  EXPECT_NEAR(s.objective, 2.13972, 5e-6);
  EXPECT_NEAR(s.stats.phase1_lb, 2.00742, 5e-6);
  EXPECT_NEAR(s.stats.phase1_ub, 3.63158, 5e-6);
  EXPECT_EQ(s.stats.phase1_remaining, 11u);
}

TEST(Btst, ThreePointInstanceMatchesTriangleSolver) {
  const auto inst = equilateral();
  const auto pts = inst.points();
  const auto exact = solve_triangle(pts[0], pts[1], pts[2]);
  for (auto v : {BtstVariant::Btst1, BtstVariant::Btst2}) {
    const auto s = btst(inst, v);
    EXPECT_NEAR(s.objective, exact.objective, 1e-9);
  }
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    auto r = oracle::random_points(3, rng);
    if (std::abs(doubled_signed_area(r[0].location, r[1].location, r[2].location)) < 1e-2) continue;
    const auto e = solve_triangle(r[0], r[1], r[2]);
    const Instance tri(r);
    EXPECT_NEAR(btst(tri, BtstVariant::Btst1).objective, e.objective, 1e-9);
    EXPECT_NEAR(btst(tri, BtstVariant::Btst2).objective, e.objective, 1e-9);
    EXPECT_NEAR(apollonius_global(tri).objective, e.objective, 1e-9);
  }
}

TEST(Btst, SquareRegionUnsupported) {
  const auto inst = generate({.n = 100, .region = RegionChoice::Square});
  EXPECT_THROW(btst(inst, BtstVariant::Btst1), UnsupportedCombination);
}

TEST(Btst, InvalidEpsilonRejected) {
  const auto inst = generate({.n = 10});
  EXPECT_THROW(btst(inst, BtstVariant::Btst1, {.epsilon = 0.0}), InvalidInstance);
}

TEST(Apollonius, FirstBenchmarkHull) {
  const auto inst = generate({.n = 100});
  const auto s = apollonius_global(inst);
  EXPECT_NEAR(s.objective, 2.13972, 5e-6);
  EXPECT_NEAR(s.location.x, 8.04233, 5e-6);
  EXPECT_NEAR(s.location.y, 9.83530, 5e-6);
  EXPECT_EQ(s.stats.boundary_candidates, 44550u);
  EXPECT_EQ(s.stats.triplets, 161700u);
  EXPECT_EQ(s.stats.objective_calls, 49951u);
  EXPECT_LE(s.stats.objective_calls, s.stats.boundary_candidates + s.stats.triplets);
  EXPECT_DOUBLE_EQ(evaluate(s.location, inst), s.objective);
}

TEST(Apollonius, FirstBenchmarkSquare) {
  const auto inst = generate({.n = 100, .region = RegionChoice::Square});
  const auto s = apollonius_global(inst);
  EXPECT_NEAR(s.objective, 2.25773, 5e-6);
  EXPECT_NEAR(s.location.x, 10.0, 5e-6);
  EXPECT_NEAR(s.location.y, 2.77952, 5e-6);
  EXPECT_EQ(s.stats.objective_calls, 49927u);
}

TEST(Apollonius, ThreadCountDoesNotChangeResult) {
  const auto inst = generate({.n = 150});
  const auto one = apollonius_global(inst, {.threads = 1});
  const auto four = apollonius_global(inst, {.threads = 4});
  EXPECT_EQ(one.location, four.location);
  EXPECT_EQ(one.objective, four.objective);
  EXPECT_EQ(one.stats.boundary_candidates, four.stats.boundary_candidates);
  EXPECT_EQ(one.stats.triplets, four.stats.triplets);
}

TEST(Apollonius, AgreesWithGridOracleOnSmallInstances) {
  std::mt19937_64 rng(54);
  std::uniform_int_distribution<std::size_t> size(5, 12);
  for (int i = 0; i < 5; ++i) {
    const Instance inst(oracle::random_points(size(rng), rng));
    const auto s = apollonius_global(inst);
    const auto ref = oracle::grid_maximize(inst.points(), inst.region().vertices(), 1000, 1e-2);
    EXPECT_NEAR(s.objective, ref.value, 1e-4) << "instance " << i;
    EXPECT_GE(s.objective, ref.value - 1e-9);
    const auto b1 = btst(inst, BtstVariant::Btst1);
    const auto b2 = btst(inst, BtstVariant::Btst2);
    EXPECT_NEAR(b1.objective, s.objective, 1e-10 * s.objective + 1e-9);
    EXPECT_NEAR(b2.objective, s.objective, 1e-10 * s.objective + 1e-9);
  }
}

TEST(Apollonius, CustomRegionAgreesWithGridOracle) {
  std::mt19937_64 rng(55);
  const auto box = ConvexPolygon::axis_aligned_box({-0.2, -0.1}, {1.1, 1.3});
  for (int i = 0; i < 5; ++i) {
    const Instance inst(oracle::random_points(8, rng), box);
    const auto s = apollonius_global(inst);
    const auto ref = oracle::grid_maximize(inst.points(), box.vertices(), 1000, 1e-2);
    EXPECT_NEAR(s.objective, ref.value, 1e-4) << "instance " << i;
    EXPECT_NE(in_region(s.location, box), Containment::Outside);
  }
}

TEST(Heuristic, StartAtOptimumStaysThere) {
  const auto inst = generate({.n = 100});
  const auto exact = apollonius_global(inst);
  const std::vector<Point> starts{exact.location};
  const auto h = multistart_heuristic(inst, {}, exact.objective, starts);
  EXPECT_NEAR(h.solution.objective, exact.objective, 1e-12);
  EXPECT_EQ(h.hits, 1u);
}

TEST(Heuristic, EquilateralMatchesExactSolver) {
  const auto inst = equilateral();
  const auto pts = inst.points();
  const auto exact = solve_triangle(pts[0], pts[1], pts[2]);
  const auto h = multistart_heuristic(inst, {.starts = 100});
  EXPECT_NEAR(h.solution.objective, exact.objective, 1e-6);
}

TEST(Heuristic, NeverExceedsOptimumAndIsReproducible) {
  const auto inst = generate({.n = 100});
  const double opt = apollonius_global(inst).objective;
  const auto a = multistart_heuristic(inst, {.starts = 300, .seed = 9}, opt);
  const auto b = multistart_heuristic(inst, {.starts = 300, .seed = 9, .threads = 3}, opt);
  EXPECT_LE(a.solution.objective, opt + 1e-9);
  for (double v : a.local_optima) ASSERT_LE(v, opt + 1e-9);
  EXPECT_EQ(a.solution.objective, b.solution.objective);
  EXPECT_EQ(a.local_optima, b.local_optima);
  EXPECT_EQ(a.solution.stats.starts, 300u);
  for (double v : a.local_optima) ASSERT_LE(v, opt + 1e-9);
}
