#pragma once

// Reproducible benchmark instances (multiplicative congruential streams modulo 100000)
// and the "id,x,y,w" CSV instance format.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "maximin/error.hpp"
#include "maximin/mesh.hpp"
#include "maximin/objective.hpp"

namespace maximin {

inline constexpr std::uint64_t kGeneratorModulus = 100000;
inline constexpr std::uint64_t kDefaultMultiplier = 12219;

struct GeneratorState {
  std::uint64_t r = 1;
  std::uint64_t multiplier = kDefaultMultiplier;

  friend bool operator==(const GeneratorState&, const GeneratorState&) = default;
};

inline bool is_valid(const GeneratorState& s) {
  return s.r > 0 && s.r < kGeneratorModulus && s.multiplier % 2 == 1 && s.multiplier % 5 != 0;
}

inline GeneratorState lcg_next(GeneratorState s) {
  if (!is_valid(s)) throw InvalidInstance("lcg_next: invalid generator state");
  const std::uint64_t next = (s.multiplier * s.r) % kGeneratorModulus;
  // Unreachable for a valid state: r and the multiplier are both units modulo 10^5.
  if (next == 0) throw InvalidInstance("lcg_next: stream collapsed to zero");
  return {next, s.multiplier};
}

enum class RegionChoice { Hull, Square };

struct InstanceSpec {
  std::size_t n = 100;
  std::uint64_t x_seed = 97;
  std::uint64_t y_seed = 367;
  std::uint64_t w_seed = 12347;
  std::uint64_t multiplier = kDefaultMultiplier;
  RegionChoice region = RegionChoice::Hull;
};

/// The square [0,10]^2 used for the square-region experiments.
inline ConvexPolygon benchmark_square() { return ConvexPolygon::axis_aligned_box({0.0, 0.0}, {10.0, 10.0}); }

/// Raw demand points for `n` (no minimum), point i carrying id i+1. The seed is the
/// first value of each stream.
inline std::vector<WeightedPoint> generate_points(const InstanceSpec& spec) {
  std::vector<WeightedPoint> pts;
  pts.reserve(spec.n);
  GeneratorState xs{spec.x_seed, spec.multiplier};
  GeneratorState ys{spec.y_seed, spec.multiplier};
  GeneratorState ws{spec.w_seed, spec.multiplier};
  if (!is_valid(xs) || !is_valid(ys) || !is_valid(ws)) throw InvalidInstance("generate: invalid seed or multiplier");
  for (std::size_t i = 0; i < spec.n; ++i) {
    if (i > 0) {
      xs = lcg_next(xs);
      ys = lcg_next(ys);
      ws = lcg_next(ws);
    }
    pts.push_back({i + 1,
                   {static_cast<double>(xs.r) / 10000.0, static_cast<double>(ys.r) / 10000.0},
                   1.0 + static_cast<double>(ws.r) / 100000.0});
  }
  return pts;
}

inline Instance generate(const InstanceSpec& spec) {
  if (spec.n < 3) throw InvalidInstance("generate: n must be at least 3");
  auto pts = generate_points(spec);
  if (spec.region == RegionChoice::Square) return Instance(std::move(pts), benchmark_square());
  return Instance(std::move(pts));
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ParseError(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
  return value;
}

}  // namespace detail

inline constexpr std::string_view kInstanceHeader = "id,x,y,w";

inline void write_instance(const Instance& inst, std::ostream& out) {
  out << kInstanceHeader << '\n';
  for (const auto& p : inst.points()) {
    out << p.id << ',' << detail::format_double(p.location.x) << ',' << detail::format_double(p.location.y) << ','
        << detail::format_double(p.weight) << '\n';
  }
}

inline void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_instance(inst, out);
  if (!out) throw Error("failed writing '" + path + "'");
}

/// Parses one data row "id,x,y,w".
inline WeightedPoint parse_instance_row(std::string_view row, std::size_t line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = row.find(',', start);
    fields.push_back(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 4) throw ParseError(line, "expected 4 columns, found " + std::to_string(fields.size()));
  WeightedPoint p;
  p.id = detail::parse_field<std::size_t>(fields[0], line, "id");
  p.location.x = detail::parse_field<double>(fields[1], line, "x");
  p.location.y = detail::parse_field<double>(fields[2], line, "y");
  p.weight = detail::parse_field<double>(fields[3], line, "w");
  if (!is_finite(p.location)) throw ParseError(line, "non-finite coordinate");
  if (!(p.weight > 0.0) || !std::isfinite(p.weight)) throw ParseError(line, "weight must be positive");
  return p;
}

/// Reads the demand points; the header row is optional. Blank lines are skipped.
inline std::vector<WeightedPoint> read_points(std::istream& in) {
  std::vector<WeightedPoint> pts;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view row = detail::trim(line);
    if (row.empty()) continue;
    if (pts.empty() && row == kInstanceHeader) continue;
    pts.push_back(parse_instance_row(row, number));
  }
  return pts;
}

inline Instance read_instance(std::istream& in, RegionChoice region = RegionChoice::Hull) {
  auto pts = read_points(in);
  if (pts.size() < 3) throw ParseError(0, "instance needs at least 3 demand points, found " + std::to_string(pts.size()));
  if (region == RegionChoice::Square) return Instance(std::move(pts), benchmark_square());
  return Instance(std::move(pts));
}

inline Instance read_instance(const std::string& path, RegionChoice region = RegionChoice::Hull) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_instance(in, region);
}

}  // namespace maximin
