#pragma once

// Run reports: JSON (full double precision, lossless) and CSV rows (5 decimals,
// matching the layout of the published benchmark tables).

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "maximin/error.hpp"
#include "maximin/instances.hpp"
#include "maximin/solvers.hpp"

namespace maximin {

enum class Method { Btst1, Btst2, Apollonius, Heuristic };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Btst1: return "btst1";
    case Method::Btst2: return "btst2";
    case Method::Apollonius: return "apollonius";
    case Method::Heuristic: return "heuristic";
  }
  return "unknown";
}

inline Method parse_method(std::string_view s) {
  if (s == "btst1") return Method::Btst1;
  if (s == "btst2") return Method::Btst2;
  if (s == "apollonius") return Method::Apollonius;
  if (s == "heuristic") return Method::Heuristic;
  throw ParseError(0, "unknown method '" + std::string(s) + "'");
}

inline std::string_view to_string(RegionChoice r) { return r == RegionChoice::Square ? "square" : "hull"; }

inline RegionChoice parse_region(std::string_view s) {
  if (s == "hull") return RegionChoice::Hull;
  if (s == "square") return RegionChoice::Square;
  throw ParseError(0, "unknown region '" + std::string(s) + "'");
}

struct RunReport {
  std::string instance;  // file path or "generated:n=<n>"
  std::size_t n = 0;
  RegionChoice region = RegionChoice::Hull;
  Method method = Method::Apollonius;
  SolverConfig config;
  Solution solution;
  double wall_seconds = 0.0;

  friend bool operator==(const RunReport& a, const RunReport& b) {
    return a.instance == b.instance && a.n == b.n && a.region == b.region && a.method == b.method &&
           a.config.epsilon == b.config.epsilon && a.config.starts == b.config.starts && a.config.seed == b.config.seed &&
           a.config.threads == b.config.threads && a.solution == b.solution && a.wall_seconds == b.wall_seconds;
  }
};

/// Solves `inst` with `method`. Heuristic hits are counted against `reference` when given.
inline Solution run_method(const Instance& inst, Method method, const SolverConfig& cfg,
                           std::optional<double> reference = std::nullopt) {
  switch (method) {
    case Method::Btst1: return btst(inst, BtstVariant::Btst1, cfg);
    case Method::Btst2: return btst(inst, BtstVariant::Btst2, cfg);
    case Method::Apollonius: return apollonius_global(inst, cfg);
    case Method::Heuristic: return multistart_heuristic(inst, cfg, reference).solution;
  }
  throw Error("run_method: unknown method");
}

inline nlohmann::json to_json(const RunReport& r) {
  const SolverStats& s = r.solution.stats;
  return {
      {"instance", r.instance},
      {"n", r.n},
      {"region", to_string(r.region)},
      {"method", to_string(r.method)},
      {"config", {{"epsilon", r.config.epsilon}, {"starts", r.config.starts}, {"seed", r.config.seed}, {"threads", r.config.threads}}},
      {"solution",
       {{"x", r.solution.location.x},
        {"y", r.solution.location.y},
        {"objective", r.solution.objective},
        {"stats",
         {{"phase1_lb", s.phase1_lb},
          {"phase1_ub", s.phase1_ub},
          {"phase1_incumbent", s.phase1_incumbent},
          {"initial_triangles", s.initial_triangles},
          {"phase1_remaining", s.phase1_remaining},
          {"max_queue", s.max_queue},
          {"iterations", s.iterations},
          {"objective_calls", s.objective_calls},
          {"boundary_candidates", s.boundary_candidates},
          {"vertex_candidates", s.vertex_candidates},
          {"triplets", s.triplets},
          {"starts", s.starts},
          {"hits", s.hits},
          {"elapsed_seconds", s.elapsed_seconds}}}}},
      {"wall_seconds", r.wall_seconds},
  };
}

inline RunReport report_from_json(const nlohmann::json& j) {
  try {
    RunReport r;
    r.instance = j.at("instance").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.region = parse_region(j.at("region").get<std::string>());
    r.method = parse_method(j.at("method").get<std::string>());
    const auto& c = j.at("config");
    r.config.epsilon = c.at("epsilon").get<double>();
    r.config.starts = c.at("starts").get<std::size_t>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.threads = c.at("threads").get<unsigned>();
    const auto& sol = j.at("solution");
    r.solution.location = {sol.at("x").get<double>(), sol.at("y").get<double>()};
    r.solution.objective = sol.at("objective").get<double>();
    const auto& s = sol.at("stats");
    SolverStats& st = r.solution.stats;
    st.phase1_lb = s.at("phase1_lb").get<double>();
    st.phase1_ub = s.at("phase1_ub").get<double>();
    st.phase1_incumbent = s.at("phase1_incumbent").get<double>();
    st.initial_triangles = s.at("initial_triangles").get<std::size_t>();
    st.phase1_remaining = s.at("phase1_remaining").get<std::size_t>();
    st.max_queue = s.at("max_queue").get<std::size_t>();
    st.iterations = s.at("iterations").get<std::size_t>();
    st.objective_calls = s.at("objective_calls").get<std::size_t>();
    st.boundary_candidates = s.at("boundary_candidates").get<std::size_t>();
    st.vertex_candidates = s.at("vertex_candidates").get<std::size_t>();
    st.triplets = s.at("triplets").get<std::size_t>();
    st.starts = s.at("starts").get<std::size_t>();
    st.hits = s.at("hits").get<std::size_t>();
    st.elapsed_seconds = s.at("elapsed_seconds").get<double>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed report: ") + e.what());
  }
}

inline RunReport parse_report(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  return report_from_json(j);
}

inline constexpr std::string_view kReportCsvHeader =
    "n,method,region,x,y,objective,phase1_lb,phase1_ub,phase1_remaining,max_queue,iterations,"
    "boundary_candidates,triplets,objective_calls,starts,hits,seconds";

/// One CSV row; locations, objectives and bounds printed to 5 decimals.
inline std::string report_csv_row(const RunReport& r) {
  const SolverStats& s = r.solution.stats;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%zu,%s,%s,%.5f,%.5f,%.5f,%.5f,%.5f,%zu,%zu,%zu,%zu,%zu,%zu,%zu,%zu,%.3f", r.n,
                std::string(to_string(r.method)).c_str(), std::string(to_string(r.region)).c_str(), r.solution.location.x,
                r.solution.location.y, r.solution.objective, s.phase1_lb, s.phase1_ub, s.phase1_remaining, s.max_queue,
                s.iterations, s.boundary_candidates, s.triplets, s.objective_calls, s.starts, s.hits, r.wall_seconds);
  return buf;
}

}  // namespace maximin
