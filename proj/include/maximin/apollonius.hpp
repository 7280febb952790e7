#pragma once

// Weighted bisectors (Apollonius circles) and the exact three-point maximin solver.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>

#include "maximin/error.hpp"
#include "maximin/geometry.hpp"

namespace maximin {

struct WeightedPoint {
  std::size_t id = 0;
  Point location;
  double weight = 1.0;

  friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

inline double weighted_distance(const WeightedPoint& p, Point x) { return p.weight * distance(p.location, x); }

struct BisectorCircle {
  Point center;
  double radius = 0.0;
};

/// Perpendicular bisector; `direction` is a unit vector.
struct BisectorLine {
  Point point;
  Point direction;
};

/// Locus of points with w1*d1 == w2*d2.
using Bisector = std::variant<BisectorCircle, BisectorLine>;

/// Relative weight difference below which two weights are treated as equal.
inline constexpr double kEqualWeightTolerance = 1e-12;

inline Bisector apollonius_bisector(const WeightedPoint& p1, const WeightedPoint& p2) {
  const Point a = p1.location;
  const Point b = p2.location;
  if (a == b) throw DegenerateGeometry("apollonius_bisector: coincident demand points");
  const double w1 = p1.weight;
  const double w2 = p2.weight;
  const double d = distance(a, b);
  if (std::abs(w1 - w2) <= kEqualWeightTolerance * std::max(w1, w2)) {
    return BisectorLine{midpoint(a, b), Point{-(b.y - a.y) / d, (b.x - a.x) / d}};
  }
  const double w1s = w1 * w1;
  const double w2s = w2 * w2;
  const double denom = w1s - w2s;
  const Point center{(w1s * a.x - w2s * b.x) / denom, (w1s * a.y - w2s * b.y) / denom};
  return BisectorCircle{center, w1 * w2 / std::abs(denom) * d};
}

inline IntersectionSet intersect(const Bisector& first, const Bisector& second) {
  if (const auto* c1 = std::get_if<BisectorCircle>(&first)) {
    if (const auto* c2 = std::get_if<BisectorCircle>(&second)) {
      return circle_circle_intersections(c1->center, c1->radius, c2->center, c2->radius);
    }
    const auto& l2 = std::get<BisectorLine>(second);
    return circle_line_intersections(c1->center, c1->radius, l2.point, l2.direction);
  }
  const auto& l1 = std::get<BisectorLine>(first);
  if (const auto* c2 = std::get_if<BisectorCircle>(&second)) {
    return circle_line_intersections(c2->center, c2->radius, l1.point, l1.direction);
  }
  const auto& l2 = std::get<BisectorLine>(second);
  return line_line_intersection(l1.point, l1.direction, l2.point, l2.direction);
}

inline IntersectionSet intersect(const Bisector& bisector, const Segment& side) {
  if (const auto* c = std::get_if<BisectorCircle>(&bisector)) {
    return circle_segment_intersections(c->center, c->radius, side);
  }
  const auto& l = std::get<BisectorLine>(bisector);
  return line_segment_intersection(l.point, l.direction, side);
}

enum class SolutionKind { InteriorEquidistant, OnSide };

struct TriangleSolution {
  Point location;
  double objective = 0.0;
  SolutionKind kind = SolutionKind::OnSide;
};

namespace detail {

inline double min_weighted_distance(const std::array<const WeightedPoint*, 3>& v, Point x) {
  return std::min({weighted_distance(*v[0], x), weighted_distance(*v[1], x), weighted_distance(*v[2], x)});
}

// Index of the smallest weight; ties go to the lowest position.
inline std::size_t lightest_vertex(const std::array<const WeightedPoint*, 3>& v) {
  std::size_t s = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (v[k]->weight < v[s]->weight) s = k;
  }
  return s;
}

}  // namespace detail

/// Candidate optima on the sides of the triangle: each side crossed by the bisectors
/// that pair one of its end vertices with the opposite vertex.
template <typename Visitor>
void for_each_side_candidate(const WeightedPoint& p1, const WeightedPoint& p2, const WeightedPoint& p3, Visitor&& visit) {
  const std::array<const WeightedPoint*, 3> v{&p1, &p2, &p3};
  for (std::size_t k = 0; k < 3; ++k) {
    const WeightedPoint& u = *v[(k + 1) % 3];
    const WeightedPoint& w = *v[(k + 2) % 3];
    const WeightedPoint& opposite = *v[k];
    const Segment side(u.location, w.location);
    for (Point x : intersect(apollonius_bisector(u, opposite), side)) visit(x);
    for (Point x : intersect(apollonius_bisector(w, opposite), side)) visit(x);
  }
}

/// Maximizes min_k w_k d_k(X) over the closed triangle spanned by the three demand points.
inline TriangleSolution solve_triangle(const WeightedPoint& p1, const WeightedPoint& p2, const WeightedPoint& p3) {
  const Point a = p1.location;
  const Point b = p2.location;
  const Point c = p3.location;
  if (doubled_signed_area(a, b, c) == 0.0) throw DegenerateGeometry("solve_triangle: collinear vertices");

  const std::array<const WeightedPoint*, 3> v{&p1, &p2, &p3};
  const std::size_t s = detail::lightest_vertex(v);
  const WeightedPoint& hub = *v[s];
  const Bisector first = apollonius_bisector(hub, *v[(s + 1) % 3]);
  const Bisector second = apollonius_bisector(hub, *v[(s + 2) % 3]);

  TriangleSolution best{Point{}, -1.0, SolutionKind::InteriorEquidistant};
  for (Point x : intersect(first, second)) {
    if (point_in_triangle(x, a, b, c) != Containment::Inside) continue;
    const double value = detail::min_weighted_distance(v, x);
    if (value > best.objective) best = {x, value, SolutionKind::InteriorEquidistant};
  }
  if (best.objective >= 0.0) return best;

  best = {Point{}, -1.0, SolutionKind::OnSide};
  auto consider = [&](Point x) {
    const double value = detail::min_weighted_distance(v, x);
    if (value > best.objective) best = {x, value, SolutionKind::OnSide};
  };
  for_each_side_candidate(p1, p2, p3, consider);
  if (best.objective >= 0.0) return best;

  // Only reachable through rounding: fall back to the side-pair bisectors.
  for (std::size_t k = 0; k < 3; ++k) {
    const WeightedPoint& u = *v[(k + 1) % 3];
    const WeightedPoint& w = *v[(k + 2) % 3];
    for (Point x : intersect(apollonius_bisector(u, w), Segment(u.location, w.location))) consider(x);
  }
  return best;
}

}  // namespace maximin
