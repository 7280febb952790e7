#pragma once

// Orientation and in-circle predicates with a floating-point filter and an exact
// rational fallback. Inputs on a decimal lattice (such as generated instances)
// produce exact collinear and cocircular configurations often enough that the
// triangulation cannot rely on the sign of a rounded determinant.

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "maximin/geometry.hpp"

namespace maximin::predicates {

namespace detail {
using Exact = boost::multiprecision::cpp_rational;

inline constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
inline constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

inline int sign(const Exact& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline int orient_exact(Point a, Point b, Point c) {
  const Exact acx = Exact(a.x) - Exact(c.x);
  const Exact bcx = Exact(b.x) - Exact(c.x);
  const Exact acy = Exact(a.y) - Exact(c.y);
  const Exact bcy = Exact(b.y) - Exact(c.y);
  return sign(acx * bcy - acy * bcx);
}

inline int incircle_exact(Point a, Point b, Point c, Point d) {
  const Exact adx = Exact(a.x) - Exact(d.x), ady = Exact(a.y) - Exact(d.y);
  const Exact bdx = Exact(b.x) - Exact(d.x), bdy = Exact(b.y) - Exact(d.y);
  const Exact cdx = Exact(c.x) - Exact(d.x), cdy = Exact(c.y) - Exact(d.y);
  const Exact alift = adx * adx + ady * ady;
  const Exact blift = bdx * bdx + bdy * bdy;
  const Exact clift = cdx * cdx + cdy * cdy;
  return sign(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady));
}
}  // namespace detail

/// +1 if (a, b, c) turns counterclockwise, -1 if clockwise, 0 if collinear. Exact.
inline int orient(Point a, Point b, Point c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = detail::kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::orient_exact(a, b, c);
}

/// +1 if d lies strictly inside the circle through counterclockwise (a, b, c),
/// -1 if strictly outside, 0 if cocircular. Exact.
inline int incircle(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = detail::kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::incircle_exact(a, b, c, d);
}

}  // namespace maximin::predicates
