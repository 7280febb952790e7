#pragma once

// Static SVG rendering of an instance: demand points (radius grows with weight), the
// convex hull, the feasible region when it differs from the hull, optional Delaunay
// edges and an optimum marker.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <span>
#include <sstream>
#include <string>

#include "maximin/instances.hpp"
#include "maximin/mesh.hpp"
#include "maximin/objective.hpp"

namespace maximin {

struct SvgOptions {
  bool delaunay_edges = false;
  double pixels = 800.0;
};

namespace detail {
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
}  // namespace detail

inline std::string render_svg(const Instance& inst, std::optional<Point> optimum = std::nullopt, const SvgOptions& opt = {}) {
  const auto region = inst.region().vertices();
  Point lo = region[0];
  Point hi = region[0];
  for (Point v : region) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  const double span = std::max(hi.x - lo.x, hi.y - lo.y);
  const double margin = 0.05 * span;
  const double vx = lo.x - margin;
  const double vw = hi.x - lo.x + 2 * margin;
  const double vh = hi.y - lo.y + 2 * margin;
  // SVG y grows downwards: mirror about the middle of the bounding box.
  auto sy = [&](double y) { return lo.y + hi.y - y; };
  const double unit = span / 200.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::num(opt.pixels) << "\" height=\""
      << detail::num(opt.pixels * vh / vw) << "\" viewBox=\"" << detail::num(vx) << ' ' << detail::num(lo.y - margin) << ' '
      << detail::num(vw) << ' ' << detail::num(vh) << "\">\n";
  out << "<rect class=\"background\" x=\"" << detail::num(vx) << "\" y=\"" << detail::num(lo.y - margin) << "\" width=\""
      << detail::num(vw) << "\" height=\"" << detail::num(vh) << "\" fill=\"white\"/>\n";

  auto polygon = [&](const char* cls, std::span<const Point> verts, const char* style) {
    out << "<polygon class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < verts.size(); ++i) out << (i ? " " : "") << detail::num(verts[i].x) << ',' << detail::num(sy(verts[i].y));
    out << "\" " << style << "/>\n";
  };
  if (!inst.region_is_hull()) polygon("region", region, "fill=\"none\" stroke=\"#888\" stroke-dasharray=\"0.1 0.05\"");
  const ConvexPolygon hull = convex_hull(inst.points());
  polygon("hull", hull.vertices(), "fill=\"#f4f7fb\" stroke=\"#1f4e79\"");

  if (opt.delaunay_edges) {
    const auto locations = inst.locations();
    const Triangulation mesh = delaunay(std::span<const Point>(locations));
    for (const auto& t : mesh.triangles) {
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t a = t[k], b = t[(k + 1) % 3];
        if (a > b) continue;  // each interior edge once; hull edges drawn by the polygon anyway
        out << "<line class=\"delaunay\" x1=\"" << detail::num(locations[a].x) << "\" y1=\"" << detail::num(sy(locations[a].y))
            << "\" x2=\"" << detail::num(locations[b].x) << "\" y2=\"" << detail::num(sy(locations[b].y))
            << "\" stroke=\"#9bb\" stroke-width=\"" << detail::num(0.2 * unit) << "\"/>\n";
      }
    }
  }

  for (const auto& p : inst.points()) {
    out << "<circle class=\"demand\" cx=\"" << detail::num(p.location.x) << "\" cy=\"" << detail::num(sy(p.location.y))
        << "\" r=\"" << detail::num(unit * p.weight) << "\" fill=\"#333\"/>\n";
  }
  if (optimum) {
    out << "<circle class=\"optimum\" cx=\"" << detail::num(optimum->x) << "\" cy=\"" << detail::num(sy(optimum->y))
        << "\" r=\"" << detail::num(3 * unit) << "\" fill=\"none\" stroke=\"#c00\" stroke-width=\"" << detail::num(0.6 * unit)
        << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace maximin
