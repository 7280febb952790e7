// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero when any
// criterion fails. Soft targets are printed as "note" lines and never gate the result.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "maximin.hpp"
#include "oracles.hpp"
#include "reference_data.hpp"

using namespace maximin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned threads_from_env() {
  const char* v = std::getenv("MAXIMIN_THREADS");
  return v != nullptr ? static_cast<unsigned>(std::strtoul(v, nullptr, 10)) : 0u;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  const Outcome o = body();
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %2d  %-34s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void note(const std::string& text) {
  std::printf("       note: %s\n", text.c_str());
  std::fflush(stdout);
}

Instance benchmark(std::size_t n, RegionChoice region = RegionChoice::Hull) {
  InstanceSpec spec;
  spec.n = n;
  spec.region = region;
  return generate(spec);
}

struct WeightedTriangle {
  std::array<WeightedPoint, 3> v;
  std::array<Point, 3> ccw;
};

WeightedTriangle random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    WeightedTriangle t;
    for (std::size_t k = 0; k < 3; ++k) t.v[k] = {k + 1, {u(rng), u(rng)}, 1.0 + u(rng)};
    const double area = doubled_signed_area(t.v[0].location, t.v[1].location, t.v[2].location);
    if (std::abs(area) < 0.02) continue;
    t.ccw = {t.v[0].location, t.v[1].location, t.v[2].location};
    if (area < 0) std::swap(t.ccw[1], t.ccw[2]);
    return t;
  }
}

// Shared between criteria 3, 4 and 6.
std::array<Solution, 10> hull_optima;

}  // namespace

int main() {
  const unsigned threads = threads_from_env();
  std::printf("maximin acceptance suite (threads=%u)\n", threads);

  report(1, "generator fidelity", [] {
    const auto t0 = Clock::now();
    InstanceSpec spec;
    spec.n = 30;
    const auto pts = generate_points(spec);
    const double elapsed = seconds_since(t0);
    int matched = 0;
    for (std::size_t i = 0; i < 30; ++i) {
      const auto& ref = reference::kFirstPoints[i];
      matched += fmt("%.4f", pts[i].location.x) == ref.x;
      matched += fmt("%.4f", pts[i].location.y) == ref.y;
      matched += fmt("%.5f", pts[i].weight) == ref.w;
    }
    return Outcome{matched == 90 && elapsed < 1e-3, fmt("%d/90 values exact, %.3f ms (< 1 ms)", matched, elapsed * 1e3)};
  });

  report(2, "hull sides and Delaunay triangles", [] {
    int matched = 0;
    std::string mismatches;
    for (const auto& row : reference::kHull) {
      const auto inst = benchmark(row.n);
      const auto locations = inst.locations();
      const auto mesh = delaunay(std::span<const Point>(locations));
      const std::size_t sides = convex_hull(std::span<const Point>(locations)).size();
      if (sides == row.hull_sides && mesh.count() == row.triangles) {
        ++matched;
      } else {
        // A differing count is acceptable only with an empty-circumcircle certificate.
        bool empty = true;
        for (const auto& t : mesh.triangles)
          for (std::size_t i = 0; i < locations.size() && empty; ++i)
            if (i != t[0] && i != t[1] && i != t[2] && oracle::in_circumcircle(locations[t[0]], locations[t[1]], locations[t[2]], locations[i]))
              empty = false;
        mismatches += fmt(" n=%zu:%zu/%zu%s", row.n, sides, mesh.count(), empty ? "(certified)" : "(NOT Delaunay)");
      }
    }
    return Outcome{matched == 10, fmt("%d/10 instances match%s", matched, mismatches.c_str())};
  });

  report(3, "optimal values over the hull", [threads] {
    int matched = 0;
    double worst = 0.0;
    double t1000 = 0.0;
    for (std::size_t i = 0; i < reference::kHull.size(); ++i) {
      const auto& row = reference::kHull[i];
      const auto t0 = Clock::now();
      hull_optima[i] = apollonius_global(benchmark(row.n), {.threads = threads});
      if (row.n == 1000) t1000 = seconds_since(t0);
      const auto& s = hull_optima[i];
      const double err = std::max({std::abs(s.location.x - row.x), std::abs(s.location.y - row.y), std::abs(s.objective - row.objective)});
      worst = std::max(worst, err);
      if (err <= 1e-4) ++matched;
      note(fmt("n=%4zu  (%.5f, %.5f) %.5f  expected (%.5f, %.5f) %.5f", row.n, s.location.x, s.location.y, s.objective, row.x,
               row.y, row.objective));
    }
    return Outcome{matched == 10 && t1000 < 60.0,
                   fmt("%d/10 within 1e-4 (worst %.2e), n=1000 in %.1f s (< 60 s)", matched, worst, t1000)};
  });

  report(4, "BTST correctness", [threads] {
    constexpr double kEps = 1e-10;
    int objective_ok = 0;
    int bounds_ok = 0;
    int soft_remaining = 0, soft_queue = 0, soft_iterations = 0;
    double worst_bound = 0.0;
    for (std::size_t i = 0; i < reference::kBtst.size(); ++i) {
      const auto& row = reference::kBtst[i];
      const auto inst = benchmark(row.n);
      const double exact = hull_optima[i].objective;
      for (auto variant : {BtstVariant::Btst1, BtstVariant::Btst2}) {
        const auto& ref = variant == BtstVariant::Btst1 ? row.set1 : row.set2;
        const auto s = btst(inst, variant, {.epsilon = kEps, .threads = threads});
        if (std::abs(s.objective - exact) <= kEps * exact) ++objective_ok;
        const double err = std::max(std::abs(s.stats.phase1_lb - ref.lb), std::abs(s.stats.phase1_ub - ref.ub));
        worst_bound = std::max(worst_bound, err);
        if (err <= 1e-4) ++bounds_ok;
        soft_remaining += s.stats.phase1_remaining == ref.remaining;
        soft_queue += s.stats.max_queue == ref.max_queue;
        soft_iterations += s.stats.iterations == ref.iterations;
        note(fmt("n=%4zu %s  lb %.5f ub %.5f  remaining %zu (%zu)  max list %zu (%zu)  iterations %zu (%zu)", row.n,
                 variant == BtstVariant::Btst1 ? "set1" : "set2", s.stats.phase1_lb, s.stats.phase1_ub,
                 s.stats.phase1_remaining, ref.remaining, s.stats.max_queue, ref.max_queue, s.stats.iterations,
                 ref.iterations));
      }
    }
    note(fmt("soft targets: remaining %d/20, max list %d/20, iterations %d/20 equal to the published counts",
             soft_remaining, soft_queue, soft_iterations));
    return Outcome{objective_ok == 20 && bounds_ok == 20,
                   fmt("objective within rel 1e-10: %d/20; phase-1 lb/ub within 1e-4: %d/20 (worst %.2e)", objective_ok,
                       bounds_ok, worst_bound)};
  });

  report(5, "optimal values over [0,10]^2", [threads] {
    int matched = 0;
    double worst = 0.0;
    for (const auto& row : reference::kSquare) {
      const auto s = apollonius_global(benchmark(row.n, RegionChoice::Square), {.threads = threads});
      const double err = std::max({std::abs(s.location.x - row.x), std::abs(s.location.y - row.y), std::abs(s.objective - row.objective)});
      worst = std::max(worst, err);
      if (err <= 1e-4) ++matched;
      note(fmt("n=%4zu  (%.5f, %.5f) %.5f  expected (%.5f, %.5f) %.5f  objective calls %zu (%zu)", row.n, s.location.x,
               s.location.y, s.objective, row.x, row.y, row.objective, s.stats.objective_calls, row.objective_calls));
    }
    return Outcome{matched == 10, fmt("%d/10 within 1e-4 (worst %.2e)", matched, worst)};
  });

  report(6, "candidate-count arithmetic", [] {
    const auto& st = hull_optima[0].stats;
    const bool ok = st.boundary_candidates == 44550 && st.triplets == 161700 &&
                    st.objective_calls <= st.boundary_candidates + st.triplets;
    int calls_equal = 0;
    for (std::size_t i = 0; i < reference::kCandidates.size(); ++i)
      calls_equal += hull_optima[i].stats.objective_calls == reference::kCandidates[i].objective_calls;
    note(fmt("objective calls equal to the published counts on %d/10 instances", calls_equal));
    return Outcome{ok, fmt("n=100: boundary %zu (44550), triplets %zu (161700), objective calls %zu <= %zu",
                           st.boundary_candidates, st.triplets, st.objective_calls, st.boundary_candidates + st.triplets)};
  });

  report(7, "oracle equivalence at desk scale", [threads] {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(5, 12);
    int matched = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Instance inst(oracle::random_points(size(rng), rng));
      const auto s = apollonius_global(inst, {.threads = threads});
      const auto ref = oracle::grid_maximize(inst.points(), inst.region().vertices(), 2000, 1e-2);
      const double err = std::abs(s.objective - ref.value);
      worst = std::max(worst, err);
      if (err <= 1e-4) ++matched;
    }
    const double elapsed = seconds_since(t0);
    return Outcome{matched == 20 && elapsed < 120.0,
                   fmt("%d/20 within 1e-4 of a 2000x2000 refined grid (worst %.2e), %.1f s (< 120 s)", matched, worst, elapsed)};
  });

  report(8, "three-point solver properties", [] {
    std::mt19937_64 rng(808);
    int unique = 0, dominance_ok = 0, interior = 0, optimal = 0;
    double worst_gap = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto t = random_triangle(rng);
      const auto b12 = apollonius_bisector(t.v[0], t.v[1]);
      const auto b13 = apollonius_bisector(t.v[0], t.v[2]);
      int inside = 0;
      for (Point x : intersect(b12, b13))
        inside += point_in_triangle(x, t.v[0].location, t.v[1].location, t.v[2].location) == Containment::Inside;
      unique += inside <= 1;

      const auto s = solve_triangle(t.v[0], t.v[1], t.v[2]);
      if (s.kind == SolutionKind::InteriorEquidistant) {
        ++interior;
        double best_side = 0.0;
        for_each_side_candidate(t.v[0], t.v[1], t.v[2],
                                [&](Point x) { best_side = std::max(best_side, oracle::objective(t.v, x)); });
        dominance_ok += s.objective > best_side;
      }
      const double grid = oracle::grid_maximize(t.v, t.ccw, 200, 1e-2).value;
      worst_gap = std::max(worst_gap, grid - s.objective);
      optimal += s.objective >= grid - 1e-5;
    }
    return Outcome{unique == 1000 && dominance_ok == interior && optimal == 1000,
                   fmt("(a) <=1 interior intersection %d/1000; (b) dominance %d/%d; (c) >= grid - 1e-5 %d/1000 (worst %.1e)",
                       unique, dominance_ok, interior, optimal, worst_gap)};
  });

  report(9, "geometry property suite", [] {
    constexpr int kCases = 100000;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> uw(1.0, 2.0);
    double worst_round_trip = 0.0, worst_locus = 0.0;
    int antisymmetric = 0;
    for (int i = 0; i < kCases; ++i) {
      const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, p{u(rng), u(rng)};
      const auto f = make_frame(a, b);
      const Point back = from_frame(f, to_frame(f, p));
      worst_round_trip = std::max({worst_round_trip, std::abs(back.x - p.x), std::abs(back.y - p.y)});

      const WeightedPoint w1{1, a, uw(rng)};
      const WeightedPoint w2{2, b, i % 10 == 0 ? w1.weight : uw(rng)};
      const auto bis = apollonius_bisector(w1, w2);
      const double phi = 2.0 * std::numbers::pi * (i % 64) / 64.0;
      Point x;
      if (const auto* c = std::get_if<BisectorCircle>(&bis)) {
        x = {c->center.x + c->radius * std::cos(phi), c->center.y + c->radius * std::sin(phi)};
      } else {
        const auto& l = std::get<BisectorLine>(bis);
        x = l.point + (10.0 * std::cos(phi)) * l.direction;
      }
      const double d1 = weighted_distance(w1, x);
      worst_locus = std::max(worst_locus, std::abs(d1 - weighted_distance(w2, x)) / d1);

      antisymmetric += signed_area(a, b, p) == -signed_area(a, p, b);
    }
    return Outcome{worst_round_trip <= 1e-12 && worst_locus <= 1e-9 && antisymmetric == kCases,
                   fmt("round trip %.1e (<= 1e-12), locus residual %.1e (<= 1e-9), antisymmetry %d/%d exact",
                       worst_round_trip, worst_locus, antisymmetric, kCases)};
  });

  report(10, "heuristic sanity", [threads] {
    const auto inst = benchmark(100);
    const double exact = hull_optima[0].objective;
    const auto h = multistart_heuristic(inst, {.starts = 10000, .seed = 1, .threads = threads}, exact);
    const double best_local = *std::max_element(h.local_optima.begin(), h.local_optima.end());
    const bool bounded = best_local <= exact * (1 + 1e-12);
    return Outcome{bounded && h.hits >= 1,
                   fmt("best %.7f vs optimum %.7f, never above: %s, hits %zu/10000 (>= 1)", h.solution.objective, exact,
                       bounded ? "yes" : "no", h.hits)};
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
