#pragma once

// Maximin objective L(X) = min_i w_i d_i(X), feasibility against the region, and
// incumbent-based early termination.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "maximin/apollonius.hpp"
#include "maximin/error.hpp"
#include "maximin/geometry.hpp"
#include "maximin/mesh.hpp"

namespace maximin {

enum class RegionKind { Hull, Custom };

/// Demand points plus a convex feasible region containing all of them.
class Instance {
 public:
  /// Region defaults to the convex hull of the points.
  explicit Instance(std::vector<WeightedPoint> points) : points_(validate(std::move(points))), region_(convex_hull(points_)) {}

  Instance(std::vector<WeightedPoint> points, ConvexPolygon region)
      : points_(validate(std::move(points))), region_(std::move(region)), kind_(RegionKind::Custom) {
    const double tol = 1e-12 * std::max(1.0, region_.diameter());
    for (const auto& p : points_) {
      for (const auto& side : region_.sides()) {
        const Point dir = side.b() - side.a();
        if (cross(dir, p.location - side.a()) / norm(dir) < -tol)
          throw InvalidInstance("Instance: demand point " + std::to_string(p.id) + " lies outside the region");
      }
    }
  }

  std::span<const WeightedPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const ConvexPolygon& region() const noexcept { return region_; }
  RegionKind region_kind() const noexcept { return kind_; }
  bool region_is_hull() const noexcept { return kind_ == RegionKind::Hull; }

  std::vector<Point> locations() const {
    std::vector<Point> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.location);
    return out;
  }

  double max_weight() const {
    double w = 0.0;
    for (const auto& p : points_) w = std::max(w, p.weight);
    return w;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  static std::vector<WeightedPoint> validate(std::vector<WeightedPoint> points) {
    if (points.size() < 3) throw InvalidInstance("Instance: at least three demand points are required");
    for (const auto& p : points) {
      if (!is_finite(p.location)) throw InvalidInstance("Instance: non-finite coordinate");
      if (!(p.weight > 0.0) || !std::isfinite(p.weight)) throw InvalidInstance("Instance: weights must be positive and finite");
    }
    return points;
  }

  std::vector<WeightedPoint> points_;
  ConvexPolygon region_;
  RegionKind kind_ = RegionKind::Hull;
};

/// Structure-of-arrays view of the demand points for repeated evaluation.
class Objective {
 public:
  explicit Objective(std::span<const WeightedPoint> points) {
    xs_.reserve(points.size());
    ys_.reserve(points.size());
    ws_.reserve(points.size());
    for (const auto& p : points) {
      xs_.push_back(p.location.x);
      ys_.push_back(p.location.y);
      ws_.push_back(p.weight);
    }
  }
  explicit Objective(const Instance& inst) : Objective(inst.points()) {}

  /// Exact min_i w_i d_i(x).
  double operator()(Point x) const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const double dx = x.x - xs_[i];
      const double dy = x.y - ys_[i];
      best = std::min(best, ws_[i] * std::sqrt(dx * dx + dy * dy));
    }
    return best;
  }

  /// std::nullopt (pruned) as soon as some w_i d_i(x) < incumbent; otherwise the exact value.
  std::optional<double> operator()(Point x, double incumbent) const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const double dx = x.x - xs_[i];
      const double dy = x.y - ys_[i];
      const double v = ws_[i] * std::sqrt(dx * dx + dy * dy);
      if (v < incumbent) return std::nullopt;
      best = std::min(best, v);
    }
    return best;
  }

  std::size_t size() const noexcept { return xs_.size(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> ws_;
};

/// Empty optional means the evaluation was pruned against the incumbent.
using Evaluation = std::optional<double>;

inline double evaluate(Point x, std::span<const WeightedPoint> points) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, weighted_distance(p, x));
  return best;
}

inline Evaluation evaluate(Point x, std::span<const WeightedPoint> points, std::optional<double> incumbent) {
  if (!incumbent) return evaluate(x, points);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double v = weighted_distance(p, x);
    if (v < *incumbent) return std::nullopt;
    best = std::min(best, v);
  }
  return best;
}

inline double evaluate(Point x, const Instance& inst) { return evaluate(x, inst.points()); }

inline Evaluation evaluate(Point x, const Instance& inst, std::optional<double> incumbent) {
  return evaluate(x, inst.points(), incumbent);
}

/// Half-plane test against every side with tolerance 1e-12 * diameter.
inline Containment in_region(Point x, const ConvexPolygon& poly) {
  const double tol = 1e-12 * poly.diameter();
  const auto verts = poly.vertices();
  bool boundary = false;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Point a = verts[i];
    const Point b = verts[(i + 1) % verts.size()];
    const double offset = cross(b - a, x - a) / distance(a, b);
    if (offset < -tol) return Containment::Outside;
    if (offset <= tol) boundary = true;
  }
  return boundary ? Containment::OnBoundary : Containment::Inside;
}

/// Closest point of the polygon to x (x itself when feasible).
inline Point project_onto(Point x, const ConvexPolygon& poly) {
  if (in_region(x, poly) != Containment::Outside) return x;
  const auto verts = poly.vertices();
  Point best = verts[0];
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Point a = verts[i];
    const Point ab = verts[(i + 1) % verts.size()] - a;
    const double t = std::clamp(dot(x - a, ab) / dot(ab, ab), 0.0, 1.0);
    const Point q = a + t * ab;
    const double d2 = squared_distance(q, x);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return best;
}

}  // namespace maximin
