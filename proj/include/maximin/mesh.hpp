#pragma once

// Convex hull, standard (unweighted) Delaunay triangulation and midpoint refinement.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "maximin/apollonius.hpp"
#include "maximin/error.hpp"
#include "maximin/geometry.hpp"
#include "maximin/predicates.hpp"

namespace maximin {

/// Convex polygon with counterclockwise vertices.
class ConvexPolygon {
 public:
  /// Validates counterclockwise convexity. Consecutive duplicates are rejected;
  /// collinear vertices are allowed (zero turn).
  explicit ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw DegenerateGeometry("ConvexPolygon: fewer than three vertices");
    bool any_turn = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = vertices_[i];
      const Point b = vertices_[(i + 1) % n];
      const Point c = vertices_[(i + 2) % n];
      if (!is_finite(a)) throw DegenerateGeometry("ConvexPolygon: non-finite vertex");
      if (a == b) throw DegenerateGeometry("ConvexPolygon: duplicate consecutive vertex");
      const int turn = predicates::orient(a, b, c);
      if (turn < 0) throw DegenerateGeometry("ConvexPolygon: vertices are not convex counterclockwise");
      any_turn = any_turn || turn > 0;
    }
    if (!any_turn) throw DegenerateGeometry("ConvexPolygon: all vertices collinear");
  }

  static ConvexPolygon axis_aligned_box(Point lo, Point hi) {
    return ConvexPolygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
  }

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  std::vector<Segment> sides() const {
    std::vector<Segment> out;
    out.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) out.emplace_back(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    return out;
  }

  double diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < vertices_.size(); ++j) best = std::max(best, distance(vertices_[i], vertices_[j]));
    return best;
  }

  double area() const {
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) twice += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    return 0.5 * twice;
  }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  std::vector<Point> vertices_;
};

/// Monotone chain over lexicographically sorted points (ties by index).
/// Points lying on a hull edge are not hull vertices.
inline ConvexPolygon convex_hull(std::span<const Point> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x < points[b].x || (points[a].x == points[b].x && points[a].y < points[b].y);
  });
  order.erase(std::unique(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
              order.end());
  if (order.size() < 3) throw DegenerateGeometry("convex_hull: fewer than three distinct points");

  std::vector<Point> hull(2 * order.size());
  std::size_t k = 0;
  for (std::size_t idx : order) {
    while (k >= 2 && predicates::orient(hull[k - 2], hull[k - 1], points[idx]) <= 0) --k;
    hull[k++] = points[idx];
  }
  for (std::size_t i = order.size() - 1, lower = k + 1; i-- > 0;) {
    const Point p = points[order[i]];
    while (k >= lower && predicates::orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateGeometry("convex_hull: all points collinear");
  return ConvexPolygon(std::move(hull));
}

inline ConvexPolygon convex_hull(std::span<const WeightedPoint> points) {
  std::vector<Point> locations;
  locations.reserve(points.size());
  for (const auto& p : points) locations.push_back(p.location);
  return convex_hull(std::span<const Point>(locations));
}

/// Delaunay triangles as counterclockwise index triples into the input sequence.
/// Each triple starts at its smallest index; triples are sorted.
struct Triangulation {
  std::vector<std::array<std::size_t, 3>> triangles;

  std::size_t count() const noexcept { return triangles.size(); }

  Triangle triangle(std::span<const Point> points, std::size_t i) const {
    const auto& t = triangles[i];
    return Triangle(points[t[0]], points[t[1]], points[t[2]]);
  }
};

namespace detail {

// Bowyer-Watson insertion over a triangulation closed by ghost triangles that share
// a single vertex at infinity. A ghost (u, w, inf) conflicts with p when p is strictly
// outside the hull edge u-w, or on its open segment.
class DelaunayBuilder {
 public:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  explicit DelaunayBuilder(std::span<const Point> points) : pts_(points) {}

  Triangulation build() {
    const std::size_t n = pts_.size();
    for (std::size_t i = 0; i < n; ++i)
      if (!is_finite(pts_[i])) throw DegenerateGeometry("delaunay: non-finite point");
    if (n < 3) throw DegenerateGeometry("delaunay: fewer than three points");

    std::size_t i1 = 1;
    while (i1 < n && pts_[i1] == pts_[0]) ++i1;
    std::size_t i2 = i1 + 1;
    while (i2 < n && predicates::orient(pts_[0], pts_[i1], pts_[i2]) == 0) ++i2;
    if (i2 >= n) throw DegenerateGeometry("delaunay: all points collinear");
    seed(0, i1, i2);
    for (std::size_t i = 1; i < n; ++i) {
      if (i != i1 && i != i2) insert(i);
    }
    return collect();
  }

 private:
  struct Tri {
    std::array<std::size_t, 3> v;
    std::array<std::size_t, 3> nbr{kNone, kNone, kNone};
    bool alive = true;
  };

  bool is_ghost(const Tri& t) const { return t.v[0] == kInf || t.v[1] == kInf || t.v[2] == kInf; }

  void seed(std::size_t a, std::size_t b, std::size_t c) {
    if (predicates::orient(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    tris_.push_back(Tri{{a, b, c}});
    const std::array<std::size_t, 3> v{a, b, c};
    for (std::size_t i = 0; i < 3; ++i) tris_.push_back(Tri{{v[(i + 2) % 3], v[(i + 1) % 3], kInf}});
    for (std::size_t t = 0; t < tris_.size(); ++t)
      for (std::size_t u = t + 1; u < tris_.size(); ++u) link_if_adjacent(t, u);
    last_ = 0;
  }

  void link_if_adjacent(std::size_t t, std::size_t u) {
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t a = tris_[t].v[(i + 1) % 3];
      const std::size_t b = tris_[t].v[(i + 2) % 3];
      for (std::size_t j = 0; j < 3; ++j) {
        if (tris_[u].v[(j + 1) % 3] == b && tris_[u].v[(j + 2) % 3] == a) {
          tris_[t].nbr[i] = u;
          tris_[u].nbr[j] = t;
        }
      }
    }
  }

  bool conflicts(const Tri& t, Point p) const {
    for (std::size_t g = 0; g < 3; ++g) {
      if (t.v[g] != kInf) continue;
      const Point u = pts_[t.v[(g + 1) % 3]];
      const Point w = pts_[t.v[(g + 2) % 3]];
      const int side = predicates::orient(u, w, p);
      if (side != 0) return side > 0;
      return dot(p - u, w - u) > 0.0 && dot(p - w, u - w) > 0.0;
    }
    return predicates::incircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0;
  }

  // Visibility walk from the last finite triangle. Returns a conflicting triangle,
  // or kNone when p duplicates an existing vertex.
  std::size_t locate(std::size_t pi) {
    const Point p = pts_[pi];
    std::size_t t = last_;
    const std::size_t limit = 4 * tris_.size() + 64;
    for (std::size_t step = 0; step < limit; ++step) {
      const Tri& tri = tris_[t];
      if (is_ghost(tri)) return t;
      bool moved = false;
      for (std::size_t k = 0; k < 3 && !moved; ++k) {
        const std::size_t i = (k + step) % 3;
        if (predicates::orient(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]], p) < 0) {
          t = tri.nbr[i];
          moved = true;
        }
      }
      if (!moved) {
        for (std::size_t v : tri.v)
          if (pts_[v] == p) return kNone;
        return t;
      }
    }
    for (std::size_t s = 0; s < tris_.size(); ++s) {
      const Tri& tri = tris_[s];
      if (!tri.alive) continue;
      for (std::size_t v : tri.v)
        if (v != kInf && pts_[v] == p) return kNone;
      if (conflicts(tri, p)) return s;
    }
    return kNone;
  }

  void insert(std::size_t pi) {
    const std::size_t start = locate(pi);
    if (start == kNone) return;  // duplicate location
    const Point p = pts_[pi];

    ++stamp_;
    if (mark_.size() < tris_.size()) mark_.resize(tris_.size(), 0);
    cavity_.clear();
    cavity_.push_back(start);
    mark_[start] = stamp_;
    for (std::size_t k = 0; k < cavity_.size(); ++k) {
      const Tri& t = tris_[cavity_[k]];
      for (std::size_t nb : t.nbr) {
        if (mark_[nb] == stamp_) continue;
        if (conflicts(tris_[nb], p)) {
          mark_[nb] = stamp_;
          cavity_.push_back(nb);
        }
      }
    }

    boundary_.clear();
    for (std::size_t c : cavity_) {
      const Tri& t = tris_[c];
      for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t nb = t.nbr[i];
        if (mark_[nb] == stamp_) continue;
        const Tri& o = tris_[nb];
        const std::size_t slot = o.nbr[0] == c ? 0 : (o.nbr[1] == c ? 1 : 2);
        boundary_.push_back({t.v[(i + 1) % 3], t.v[(i + 2) % 3], nb, slot});
      }
      tris_[c].alive = false;
    }

    const std::size_t first_new = tris_.size();
    for (const auto& e : boundary_) {
      Tri t{{e.u, e.w, pi}};
      t.nbr[2] = e.outer;
      tris_[e.outer].nbr[e.outer_slot] = tris_.size();
      tris_.push_back(t);
    }
    for (std::size_t a = first_new; a < tris_.size(); ++a) {
      for (std::size_t b = first_new; b < tris_.size(); ++b) {
        if (tris_[b].v[0] == tris_[a].v[1]) tris_[a].nbr[0] = b;
        if (tris_[b].v[1] == tris_[a].v[0]) tris_[a].nbr[1] = b;
      }
    }
    mark_.resize(tris_.size(), 0);
    for (std::size_t a = first_new; a < tris_.size(); ++a) {
      if (!is_ghost(tris_[a])) {
        last_ = a;
        break;
      }
    }
  }

  Triangulation collect() const {
    Triangulation out;
    for (const Tri& t : tris_) {
      if (!t.alive || is_ghost(t)) continue;
      std::array<std::size_t, 3> v = t.v;
      std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
      out.triangles.push_back(v);
    }
    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
  }

  std::span<const Point> pts_;
  std::vector<Tri> tris_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::vector<std::size_t> cavity_;
  struct BoundaryEdge {
    std::size_t u, w, outer, outer_slot;
  };
  std::vector<BoundaryEdge> boundary_;
  std::size_t last_ = 0;
};

}  // namespace detail

/// Incremental Bowyer-Watson triangulation. Points are inserted in index order; a
/// point strictly inside a circumcircle evicts the triangle, cocircular points do not,
/// so ties resolve in favour of triangles built from earlier points.
/// Points duplicating an earlier location are skipped.
inline Triangulation delaunay(std::span<const Point> points) { return detail::DelaunayBuilder(points).build(); }

inline Triangulation delaunay(std::span<const WeightedPoint> points) {
  std::vector<Point> locations;
  locations.reserve(points.size());
  for (const auto& p : points) locations.push_back(p.location);
  return delaunay(std::span<const Point>(locations));
}

/// Midpoint subdivision: three corner triangles followed by the medial triangle.
inline std::array<Triangle, 4> split_triangle(const Triangle& t) {
  const Point a = t.v1(), b = t.v2(), c = t.v3();
  const Point ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
  return {Triangle(a, ab, ca), Triangle(ab, b, bc), Triangle(ca, bc, c), Triangle(ab, bc, ca)};
}

}  // namespace maximin
