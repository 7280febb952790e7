#pragma once

// Global maximin solvers: BTST (big triangle small triangle) branch and bound in two
// variants, exhaustive Apollonius candidate enumeration, and a multistart local-search
// baseline.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "maximin/apollonius.hpp"
#include "maximin/error.hpp"
#include "maximin/geometry.hpp"
#include "maximin/mesh.hpp"
#include "maximin/objective.hpp"

namespace maximin {

struct SolverConfig {
  double epsilon = 1e-10;
  std::size_t starts = 1000;
  std::uint64_t seed = 1;
  /// Worker threads for the parallelizable loops; 0 or 1 runs single-threaded.
  unsigned threads = 0;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInstance("SolverConfig: epsilon must lie in (0, 1)");
  }
};

struct SolverStats {
  // BTST
  /// Best lower bound among the triangles that survive the first phase (the incumbent
  /// when none survive).
  double phase1_lb = 0.0;
  /// Largest upper bound over the initial triangles.
  double phase1_ub = 0.0;
  /// Incumbent objective after the first phase; drives the discard test.
  double phase1_incumbent = 0.0;
  std::size_t initial_triangles = 0;
  std::size_t phase1_remaining = 0;
  /// Largest list size, measured right after a split appends its four children.
  std::size_t max_queue = 0;
  /// Selection rounds of the second phase, including the final one on an empty list.
  std::size_t iterations = 0;
  // shared
  std::size_t objective_calls = 0;
  // Apollonius enumeration
  std::size_t boundary_candidates = 0;
  std::size_t vertex_candidates = 0;
  std::size_t triplets = 0;
  // heuristic
  std::size_t starts = 0;
  std::size_t hits = 0;

  double elapsed_seconds = 0.0;

  friend bool operator==(const SolverStats&, const SolverStats&) = default;
};

struct Solution {
  Point location;
  double objective = 0.0;
  SolverStats stats;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct Bounds {
  double lb = 0.0;
  double ub = 0.0;
  /// Feasible point whose objective is `lb`.
  Point witness;
};

/// Objective at the centroid, and min_i w_i * (largest distance from point i to a vertex).
inline Bounds bounds_set1(const Triangle& t, std::span<const WeightedPoint> points, const Objective& f) {
  const Point c = t.centroid();
  double ub = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double far2 = std::max({squared_distance(p.location, t.v1()), squared_distance(p.location, t.v2()),
                                  squared_distance(p.location, t.v3())});
    ub = std::min(ub, p.weight * std::sqrt(far2));
  }
  return {f(c), ub, c};
}

inline Bounds bounds_set1(const Triangle& t, const Instance& inst) { return bounds_set1(t, inst.points(), Objective(inst)); }

/// Three-point optimum of the vertices: its full objective is the lower bound and its
/// three-point objective the upper bound.
inline Bounds bounds_set2(const WeightedPoint& a, const WeightedPoint& b, const WeightedPoint& c, const Objective& f) {
  const TriangleSolution s = solve_triangle(a, b, c);
  return {f(s.location), s.objective, s.location};
}

inline Bounds bounds_set2(const WeightedPoint& a, const WeightedPoint& b, const WeightedPoint& c, const Instance& inst) {
  return bounds_set2(a, b, c, Objective(inst));
}

struct TriangleNode {
  Triangle triangle;
  double lb = 0.0;
  double ub = 0.0;
  bool demand_vertices = false;
  std::uint64_t sequence = 0;
};

enum class BtstVariant { Btst1, Btst2 };

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Max-heap order on ub; equal ub pops the earlier node first.
struct NodeOrder {
  bool operator()(const TriangleNode& a, const TriangleNode& b) const {
    return a.ub < b.ub || (a.ub == b.ub && a.sequence > b.sequence);
  }
};

template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(0u, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(w, i);
    });
  }
  for (auto& t : pool) t.join();
}

inline void raise_to(std::atomic<double>& target, double value) {
  double current = target.load(std::memory_order_relaxed);
  while (value > current && !target.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

}  // namespace detail

/// Branch and bound over triangles covering the convex hull. Returns a point whose
/// objective is within relative `cfg.epsilon` of the global optimum.
inline Solution btst(const Instance& inst, BtstVariant variant, const SolverConfig& cfg = {}) {
  cfg.validate();
  if (!inst.region_is_hull()) throw UnsupportedCombination("btst: the feasible region must be the convex hull of the demand points");
  const auto start_time = detail::Clock::now();
  const auto points = inst.points();
  const auto locations = inst.locations();
  const Objective f(inst);
  const Triangulation mesh = delaunay(std::span<const Point>(locations));

  Solution sol;
  SolverStats& st = sol.stats;
  double best = -std::numeric_limits<double>::infinity();
  Point best_at{};
  const double factor = 1.0 + cfg.epsilon;

  std::vector<TriangleNode> heap;
  std::uint64_t sequence = 0;
  double max_ub = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.count(); ++i) {
    const auto& ids = mesh.triangles[i];
    const Triangle t = mesh.triangle(locations, i);
    const Bounds b = variant == BtstVariant::Btst1 ? bounds_set1(t, points, f)
                                                   : bounds_set2(points[ids[0]], points[ids[1]], points[ids[2]], f);
    ++st.objective_calls;
    if (b.lb > best) {
      best = b.lb;
      best_at = b.witness;
    }
    max_ub = std::max(max_ub, b.ub);
    heap.push_back({t, b.lb, b.ub, true, sequence++});
  }
  st.initial_triangles = mesh.count();
  st.phase1_incumbent = best;
  st.phase1_ub = max_ub;
  std::erase_if(heap, [&](const TriangleNode& n) { return n.ub <= best * factor; });
  st.phase1_remaining = heap.size();
  st.phase1_lb = best;
  if (!heap.empty()) {
    st.phase1_lb = std::max_element(heap.begin(), heap.end(), [](const TriangleNode& a, const TriangleNode& b) {
                     return a.lb < b.lb;
                   })->lb;
  }
  std::make_heap(heap.begin(), heap.end(), detail::NodeOrder{});
  st.max_queue = heap.size();

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), detail::NodeOrder{});
    const TriangleNode big = heap.back();
    heap.pop_back();
    if (big.ub <= best * factor) continue;
    ++st.iterations;
    st.max_queue = std::max(st.max_queue, heap.size() + 4);

    bool improved = false;
    std::array<TriangleNode, 4> children{big, big, big, big};
    const auto small = split_triangle(big.triangle);
    for (std::size_t k = 0; k < 4; ++k) {
      const Bounds b = bounds_set1(small[k], points, f);
      ++st.objective_calls;
      children[k] = {small[k], b.lb, b.ub, false, sequence++};
      if (b.lb > best) {
        best = b.lb;
        best_at = b.witness;
        improved = true;
      }
    }
    if (improved) {
      std::erase_if(heap, [&](const TriangleNode& n) { return n.ub <= best * factor; });
      std::make_heap(heap.begin(), heap.end(), detail::NodeOrder{});
    }
    for (const auto& child : children) {
      if (child.ub > best * factor) {
        heap.push_back(child);
        std::push_heap(heap.begin(), heap.end(), detail::NodeOrder{});
      }
    }
  }
  ++st.iterations;  // the closing round that finds the list empty

  sol.location = best_at;
  sol.objective = best;
  st.elapsed_seconds = detail::seconds_since(start_time);
  return sol;
}

namespace detail {

// Enumeration order of a candidate; ties in objective go to the smallest key.
struct CandidateKey {
  int phase = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;

  friend auto operator<=>(const CandidateKey&, const CandidateKey&) = default;
};

struct WorkerBest {
  double value = -std::numeric_limits<double>::infinity();
  CandidateKey key;
  Point location;
  std::size_t calls = 0;

  void offer(double v, const CandidateKey& k, Point x) {
    if (v > value || (v == value && k < key)) {
      value = v;
      key = k;
      location = x;
    }
  }
};

}  // namespace detail

/// Evaluates every bisector/side intersection, every non-demand region vertex, and for
/// each triplet the bisector intersection lying strictly inside the triplet's triangle.
/// The best candidate is the global optimum. Evaluations abort early against the
/// incumbent.
inline Solution apollonius_global(const Instance& inst, const SolverConfig& cfg = {}) {
  const auto start_time = detail::Clock::now();
  const auto pts = inst.points();
  const std::size_t n = pts.size();
  const Objective f(inst);
  const ConvexPolygon& region = inst.region();
  const std::vector<Segment> sides = region.sides();
  const bool check_region = !inst.region_is_hull();

  auto pair_index = [n](std::size_t i, std::size_t j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };
  std::vector<Bisector> bisectors(n * (n - 1) / 2);
  std::vector<char> has_bisector(bisectors.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[i].location == pts[j].location) continue;
      bisectors[pair_index(i, j)] = apollonius_bisector(pts[i], pts[j]);
      has_bisector[pair_index(i, j)] = 1;
    }
  }

  const unsigned workers = std::max(1u, cfg.threads);
  std::vector<detail::WorkerBest> best(workers);
  std::atomic<double> incumbent{-std::numeric_limits<double>::infinity()};

  auto consider = [&](unsigned w, Point x, const detail::CandidateKey& key) {
    ++best[w].calls;
    const auto v = f(x, incumbent.load(std::memory_order_relaxed));
    if (!v) return;
    best[w].offer(*v, key, x);
    detail::raise_to(incumbent, *v);
  };

  detail::parallel_for(n, workers, [&](unsigned w, std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t pij = pair_index(i, j);
      if (!has_bisector[pij]) continue;
      for (std::size_t s = 0; s < sides.size(); ++s) {
        const IntersectionSet xs = intersect(bisectors[pij], sides[s]);
        for (std::size_t q = 0; q < xs.size(); ++q) consider(w, xs[q], {0, pij, s, q});
      }
    }
  });

  std::size_t vertex_candidates = 0;
  const auto corners = region.vertices();
  for (std::size_t v = 0; v < corners.size(); ++v) {
    const bool is_demand = std::any_of(pts.begin(), pts.end(), [&](const WeightedPoint& p) { return p.location == corners[v]; });
    if (is_demand) continue;
    ++vertex_candidates;
    consider(0, corners[v], {1, v, 0, 0});
  }

  detail::parallel_for(n, workers, [&](unsigned w, std::size_t i) {
    const Point pi = pts[i].location;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point pj = pts[j].location;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point pk = pts[k].location;
        // Bisectors through the lightest vertex of the triplet (lowest index on ties).
        std::size_t hub = i, a = j, b = k;
        if (pts[j].weight < pts[hub].weight) std::swap(hub, a);
        if (pts[k].weight < pts[hub].weight) std::swap(hub, b);
        if (a > b) std::swap(a, b);
        const std::size_t p1 = hub < a ? pair_index(hub, a) : pair_index(a, hub);
        const std::size_t p2 = hub < b ? pair_index(hub, b) : pair_index(b, hub);
        if (!has_bisector[p1] || !has_bisector[p2]) continue;
        const IntersectionSet xs = intersect(bisectors[p1], bisectors[p2]);
        for (std::size_t q = 0; q < xs.size(); ++q) {
          if (point_in_triangle(xs[q], pi, pj, pk) != Containment::Inside) continue;
          if (check_region && in_region(xs[q], region) == Containment::Outside) continue;
          consider(w, xs[q], {2, i, j, k * 2 + q});
        }
      }
    }
  });

  detail::WorkerBest overall;
  std::size_t calls = 0;
  for (const auto& b : best) {
    calls += b.calls;
    if (b.calls > 0 && b.value > -std::numeric_limits<double>::infinity()) overall.offer(b.value, b.key, b.location);
  }
  if (!(overall.value >= 0.0)) throw Error("apollonius_global: no feasible candidate found");

  Solution sol;
  sol.location = overall.location;
  sol.objective = overall.value;
  sol.stats.objective_calls = calls;
  sol.stats.boundary_candidates = n * (n - 1) / 2 * sides.size();
  sol.stats.vertex_candidates = vertex_candidates;
  sol.stats.triplets = n * (n - 1) * (n - 2) / 6;
  sol.stats.elapsed_seconds = detail::seconds_since(start_time);
  return sol;
}

struct HeuristicResult {
  Solution solution;
  /// Local optima within 1e-4 relative of the reference objective (0 without reference).
  std::size_t hits = 0;
  std::vector<double> local_optima;
};

namespace detail {

struct AscentResult {
  Point location;
  double value = 0.0;
  std::size_t calls = 0;
  std::size_t polls = 0;
};

// Pattern search with eight poll directions, rotated by a random angle on every poll,
// projected onto the region. The step halves after a failed poll.
inline AscentResult local_ascent(Point start, const Objective& f, const ConvexPolygon& region, double initial_step,
                                 std::mt19937_64& rng) {
  constexpr std::size_t kDirections = 8;
  constexpr double kMinStep = 1e-9;
  constexpr std::size_t kMaxPolls = 200000;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi / kDirections);

  AscentResult r{project_onto(start, region), 0.0, 1, 0};
  r.value = f(r.location);
  double step = initial_step;
  while (step >= kMinStep && r.polls < kMaxPolls) {
    ++r.polls;
    const double theta = angle(rng);
    bool improved = false;
    for (std::size_t k = 0; k < kDirections && !improved; ++k) {
      const double phi = theta + 2.0 * std::numbers::pi * static_cast<double>(k) / kDirections;
      const Point y = project_onto(r.location + step * Point{std::cos(phi), std::sin(phi)}, region);
      if (y == r.location) continue;
      ++r.calls;
      const auto v = f(y, r.value);
      if (v && *v > r.value) {
        r.location = y;
        r.value = *v;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return r;
}

inline Point sample_in_region(const ConvexPolygon& region, std::mt19937_64& rng) {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (Point v : region.vertices()) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  while (true) {
    const Point p{ux(rng), uy(rng)};
    if (in_region(p, region) != Containment::Outside) return p;
  }
}

}  // namespace detail

/// Multistart local ascent. Uses `explicit_starts` when given, otherwise `cfg.starts`
/// uniform random feasible starts. Start s draws from its own generator seeded by
/// (cfg.seed, s), so results do not depend on the thread count.
inline HeuristicResult multistart_heuristic(const Instance& inst, const SolverConfig& cfg,
                                            std::optional<double> reference = std::nullopt,
                                            std::span<const Point> explicit_starts = {}) {
  const auto start_time = detail::Clock::now();
  const Objective f(inst);
  const ConvexPolygon& region = inst.region();
  const double initial_step = region.diameter() / 10.0;
  const std::size_t count = explicit_starts.empty() ? cfg.starts : explicit_starts.size();
  if (count == 0) throw InvalidInstance("multistart_heuristic: at least one start is required");

  std::vector<detail::AscentResult> results(count);
  detail::parallel_for(count, std::max(1u, cfg.threads), [&](unsigned, std::size_t s) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(static_cast<std::uint64_t>(s) >> 32)};
    std::mt19937_64 rng(seq);
    const Point start = explicit_starts.empty() ? detail::sample_in_region(region, rng) : explicit_starts[s];
    results[s] = detail::local_ascent(start, f, region, initial_step, rng);
  });

  HeuristicResult out;
  out.local_optima.reserve(count);
  std::size_t best = 0;
  for (std::size_t s = 0; s < count; ++s) {
    const auto& r = results[s];
    out.local_optima.push_back(r.value);
    out.solution.stats.objective_calls += r.calls;
    out.solution.stats.iterations += r.polls;
    if (r.value > results[best].value) best = s;
    if (reference && std::abs(r.value - *reference) <= 1e-4 * std::abs(*reference)) ++out.hits;
  }
  out.solution.location = results[best].location;
  out.solution.objective = results[best].value;
  out.solution.stats.starts = count;
  out.solution.stats.hits = out.hits;
  out.solution.stats.elapsed_seconds = detail::seconds_since(start_time);
  return out;
}

}  // namespace maximin
