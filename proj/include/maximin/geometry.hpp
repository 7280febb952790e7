#pragma once

// Planar primitives: segment-aligned frames, circle/segment/line intersections,
// signed areas and point-in-triangle classification.
//
// Every intersection routine moves the problem into the frame where one object
// sits on the x-axis, solves there with a single square root and maps the
// result back. No trigonometric calls are made.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "maximin/error.hpp"

namespace maximin {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(dot(a, a)); }
inline constexpr double squared_distance(Point a, Point b) { return dot(a - b, a - b); }
inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }
inline constexpr Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Rigid motion taking `origin` to (0,0) and a second point to (separation, 0).
class FrameTransform {
 public:
  Point origin() const noexcept { return origin_; }
  double cosine() const noexcept { return cos_; }
  double sine() const noexcept { return sin_; }
  double separation() const noexcept { return separation_; }

  Point to_frame(Point p) const noexcept {
    const double dx = p.x - origin_.x;
    const double dy = p.y - origin_.y;
    return {cos_ * dx + sin_ * dy, -sin_ * dx + cos_ * dy};
  }

  Point from_frame(Point p) const noexcept {
    return {origin_.x + cos_ * p.x - sin_ * p.y, origin_.y + cos_ * p.y + sin_ * p.x};
  }

  friend FrameTransform make_frame(Point a1, Point a2);

 private:
  FrameTransform(Point origin, double c, double s, double d) : origin_(origin), cos_(c), sin_(s), separation_(d) {}

  Point origin_;
  double cos_;
  double sin_;
  double separation_;
};

inline FrameTransform make_frame(Point a1, Point a2) {
  const double d = distance(a1, a2);
  if (!(d > 0.0)) throw DegenerateGeometry("make_frame: coincident points");
  return FrameTransform(a1, (a2.x - a1.x) / d, (a2.y - a1.y) / d, d);
}

inline Point to_frame(const FrameTransform& t, Point p) { return t.to_frame(p); }
inline Point from_frame(const FrameTransform& t, Point p) { return t.from_frame(p); }

class Segment {
 public:
  Segment(Point a, Point b) : a_(a), b_(b) {
    if (a == b) throw DegenerateGeometry("Segment: zero length");
  }
  Point a() const noexcept { return a_; }
  Point b() const noexcept { return b_; }
  double length() const { return distance(a_, b_); }

 private:
  Point a_;
  Point b_;
};

/// Zero, one or two intersection points.
class IntersectionSet {
 public:
  constexpr IntersectionSet() = default;
  constexpr explicit IntersectionSet(Point p) : pts_{p, Point{}}, size_(1) {}
  constexpr IntersectionSet(Point p, Point q) : pts_{p, q}, size_(2) {}

  constexpr std::size_t size() const noexcept { return size_; }
  constexpr bool empty() const noexcept { return size_ == 0; }
  constexpr Point operator[](std::size_t i) const { return pts_[i]; }
  constexpr const Point* begin() const noexcept { return pts_.data(); }
  constexpr const Point* end() const noexcept { return pts_.data() + size_; }

  constexpr void push_back(Point p) { pts_[size_++] = p; }

 private:
  std::array<Point, 2> pts_{};
  std::size_t size_ = 0;
};

namespace detail {
inline constexpr double kTangencyTolerance = 1e-12;
inline constexpr double kSegmentParamTolerance = 1e-12;

// Circle (center, r) in frame coordinates against the x-axis. A discriminant that is
// negative by at most the tangency tolerance (relative to r^2) counts as a touch.
inline IntersectionSet circle_x_axis(Point center, double r) {
  const double disc = r * r - center.y * center.y;
  const double tol = kTangencyTolerance * r * r;
  if (disc < -tol) return {};
  if (disc <= 0.0) return IntersectionSet(Point{center.x, 0.0});
  const double h = std::sqrt(disc);
  return {Point{center.x - h, 0.0}, Point{center.x + h, 0.0}};
}
}  // namespace detail

/// Intersection points of two circles, in the original coordinates.
/// Concentric or disjoint circles yield an empty set.
inline IntersectionSet circle_circle_intersections(Point c1, double r1, Point c2, double r2) {
  if (c1 == c2) return {};
  const FrameTransform frame = make_frame(c1, c2);
  const double d = frame.separation();
  const double d2 = d * d;
  const double sum = r1 + r2;
  const double diff = r1 - r2;
  const double disc = (sum * sum - d2) * (d2 - diff * diff);
  if (disc < -detail::kTangencyTolerance * d2) return {};
  const double x = (r1 * r1 + d2 - r2 * r2) / (2.0 * d);
  if (disc <= 0.0) return IntersectionSet(frame.from_frame({x, 0.0}));
  const double y = std::sqrt(disc) / (2.0 * d);
  return {frame.from_frame({x, y}), frame.from_frame({x, -y})};
}

/// Intersection points of a circle with a closed segment.
inline IntersectionSet circle_segment_intersections(Point c, double r, const Segment& s) {
  const FrameTransform frame = make_frame(s.a(), s.b());
  const double d = frame.separation();
  const double slack = detail::kSegmentParamTolerance * d;
  IntersectionSet out;
  for (Point p : detail::circle_x_axis(frame.to_frame(c), r)) {
    if (p.x < -slack || p.x > d + slack) continue;
    p.x = std::clamp(p.x, 0.0, d);
    out.push_back(frame.from_frame(p));
  }
  return out;
}

/// Intersection points of a circle with the infinite line through `p` along unit `dir`.
inline IntersectionSet circle_line_intersections(Point c, double r, Point p, Point dir) {
  const FrameTransform frame = make_frame(p, p + dir);
  IntersectionSet out;
  for (Point q : detail::circle_x_axis(frame.to_frame(c), r)) out.push_back(frame.from_frame(q));
  return out;
}

/// Intersection of the infinite line (p, dir) with a closed segment. Parallel lines yield nothing.
inline IntersectionSet line_segment_intersection(Point p, Point dir, const Segment& s) {
  const FrameTransform frame = make_frame(s.a(), s.b());
  const Point q = frame.to_frame(p);
  const Point u = frame.to_frame(p + dir) - q;
  if (std::abs(u.y) <= 1e-15) return {};
  const double x = q.x - q.y * u.x / u.y;
  const double d = frame.separation();
  const double slack = detail::kSegmentParamTolerance * d;
  if (x < -slack || x > d + slack) return {};
  return IntersectionSet(frame.from_frame({std::clamp(x, 0.0, d), 0.0}));
}

/// Intersection of two infinite lines given by point + direction.
inline IntersectionSet line_line_intersection(Point p1, Point dir1, Point p2, Point dir2) {
  const double denom = cross(dir1, dir2);
  if (std::abs(denom) <= 1e-15 * norm(dir1) * norm(dir2)) return {};
  const double t = cross(p2 - p1, dir2) / denom;
  return IntersectionSet(p1 + t * dir1);
}

/// Twice the signed area of (a, b, c); positive when counterclockwise.
/// Summed as t1 + (t2 + t3) so that swapping b and c negates the result exactly.
inline double doubled_signed_area(Point a, Point b, Point c) {
  const double t1 = a.x * (b.y - c.y);
  const double t2 = b.x * (c.y - a.y);
  const double t3 = c.x * (a.y - b.y);
  return t1 + (t2 + t3);
}

inline double signed_area(Point a, Point b, Point c) { return 0.5 * doubled_signed_area(a, b, c); }

class Triangle {
 public:
  Triangle(Point v1, Point v2, Point v3) : v_{v1, v2, v3} {
    if (doubled_signed_area(v1, v2, v3) == 0.0) throw DegenerateGeometry("Triangle: collinear vertices");
  }

  Point v1() const noexcept { return v_[0]; }
  Point v2() const noexcept { return v_[1]; }
  Point v3() const noexcept { return v_[2]; }
  Point operator[](std::size_t i) const { return v_[i]; }
  std::span<const Point, 3> vertices() const noexcept { return v_; }

  Point centroid() const noexcept {
    return {(v_[0].x + v_[1].x + v_[2].x) / 3.0, (v_[0].y + v_[1].y + v_[2].y) / 3.0};
  }

 private:
  std::array<Point, 3> v_;
};

inline double signed_triangle_area(const Triangle& t) { return signed_area(t.v1(), t.v2(), t.v3()); }

enum class Containment { Inside, OnBoundary, Outside };

/// Classifies `p` by the signs of the three sub-triangle areas (p replacing each vertex).
inline Containment point_in_triangle(Point p, Point v1, Point v2, Point v3) {
  const double whole = doubled_signed_area(v1, v2, v3);
  const double orient = whole > 0.0 ? 1.0 : -1.0;
  const double tol = 1e-12 * (1.0 + 0.5 * std::abs(whole));
  const std::array<double, 3> terms{orient * doubled_signed_area(p, v2, v3), orient * doubled_signed_area(v1, p, v3),
                                    orient * doubled_signed_area(v1, v2, p)};
  bool boundary = false;
  for (double t : terms) {
    if (t < -tol) return Containment::Outside;
    if (t <= tol) boundary = true;
  }
  return boundary ? Containment::OnBoundary : Containment::Inside;
}

inline Containment point_in_triangle(Point p, const Triangle& t) { return point_in_triangle(p, t.v1(), t.v2(), t.v3()); }

}  // namespace maximin
