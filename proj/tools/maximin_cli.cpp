// maximin: generate benchmark instances, solve them with any method, reproduce the
// benchmark tables and render SVG plots.
//
// Exit codes: 0 success, 2 usage error, 3 input/parse error, 4 unsupported combination.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maximin.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitUnsupported = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned threads_from_env() {
  const char* v = std::getenv("MAXIMIN_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    const long t = std::stol(v);
    return t > 0 ? static_cast<unsigned>(t) : 0;
  } catch (const std::exception&) {
    throw UsageError(std::string("MAXIMIN_THREADS must be a non-negative integer, got '") + v + "'");
  }
}

/// Writes to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw maximin::Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw maximin::Error("failed writing '" + path + "'");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw maximin::ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "100..1000" (stepped by `step`), "100,200,300" or a single value.
std::vector<std::size_t> parse_sizes(const std::string& text, std::size_t step) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw UsageError("invalid instance size '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = number(text.substr(0, dots));
    const std::size_t hi = number(text.substr(dots + 2));
    if (step == 0) throw UsageError("--step must be positive");
    if (lo > hi) throw UsageError("empty size range '" + text + "'");
    for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item));
  }
  if (out.empty()) throw UsageError("no instance sizes given");
  for (std::size_t n : out)
    if (n < 3) throw UsageError("instance size must be at least 3");
  return out;
}

maximin::RunReport run(const maximin::Instance& inst, std::string descriptor, maximin::RegionChoice region,
                       maximin::Method method, const maximin::SolverConfig& cfg, std::optional<double> reference) {
  maximin::RunReport report;
  report.instance = std::move(descriptor);
  report.n = inst.size();
  report.region = region;
  report.method = method;
  report.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  report.solution = maximin::run_method(inst, method, cfg, reference);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar single weighted obnoxious facility location (maximin) solver"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a reproducible benchmark instance as CSV");
  std::size_t gen_n = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of demand points (>= 3)")->required();
  gen->add_option("--out", gen_out, "Output CSV path (stdout when omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance and print a run report");
  std::string solve_path;
  std::string solve_method = "apollonius";
  std::string solve_region = "hull";
  std::string solve_format = "json";
  std::string solve_out;
  std::optional<double> solve_reference;
  maximin::SolverConfig solve_cfg;
  const std::vector<std::string> methods{"btst1", "btst2", "apollonius", "heuristic"};
  const std::vector<std::string> regions{"hull", "square"};
  solve->add_option("instance", solve_path, "Instance CSV (id,x,y,w)")->required();
  solve->add_option("--method", solve_method, "btst1 | btst2 | apollonius | heuristic")->check(CLI::IsMember(methods));
  solve->add_option("--region", solve_region, "hull | square ([0,10]^2)")->check(CLI::IsMember(regions));
  solve->add_option("--epsilon", solve_cfg.epsilon, "BTST relative optimality tolerance");
  solve->add_option("--starts", solve_cfg.starts, "Heuristic start count");
  solve->add_option("--seed", solve_cfg.seed, "Heuristic random seed");
  solve->add_option("--reference", solve_reference, "Known optimum used to count heuristic hits");
  solve->add_option("--format", solve_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--out", solve_out, "Output path (stdout when omitted)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run generated instances through several methods, one CSV row each");
  std::string bench_sizes = "100..1000";
  std::size_t bench_step = 100;
  std::vector<std::string> bench_methods{"apollonius"};
  std::string bench_region = "hull";
  std::string bench_out;
  maximin::SolverConfig bench_cfg;
  bench->add_option("--n", bench_sizes, "Sizes: 'lo..hi' (with --step), a list '100,200' or one value");
  bench->add_option("--step", bench_step, "Step for a 'lo..hi' range");
  bench->add_option("--method", bench_methods, "Comma-separated methods")->delimiter(',');
  bench->add_option("--region", bench_region, "hull | square")->check(CLI::IsMember(regions));
  bench->add_option("--epsilon", bench_cfg.epsilon, "BTST relative optimality tolerance");
  bench->add_option("--starts", bench_cfg.starts, "Heuristic start count");
  bench->add_option("--seed", bench_cfg.seed, "Heuristic random seed");
  bench->add_option("--out", bench_out, "Output CSV path (stdout when omitted)");

  // plot
  auto* plot = app.add_subcommand("plot", "Render an instance (and optionally its optimum) as SVG");
  std::string plot_path;
  std::string plot_solution;
  std::string plot_region = "hull";
  std::string plot_out;
  bool plot_delaunay = false;
  plot->add_option("instance", plot_path, "Instance CSV (id,x,y,w)")->required();
  plot->add_option("--solution", plot_solution, "JSON run report whose location is marked");
  plot->add_option("--region", plot_region, "hull | square")->check(CLI::IsMember(regions));
  plot->add_flag("--delaunay", plot_delaunay, "Draw the Delaunay edges");
  plot->add_option("--out", plot_out, "Output SVG path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const unsigned threads = threads_from_env();
    if (*gen) {
      if (gen_n < 3) throw UsageError("--n must be at least 3");
      maximin::InstanceSpec spec;
      spec.n = gen_n;
      std::ostringstream out;
      maximin::write_instance(maximin::generate(spec), out);
      emit(gen_out, out.str());
    } else if (*solve) {
      solve_cfg.threads = threads;
      solve_cfg.validate();
      const auto region = maximin::parse_region(solve_region);
      const auto inst = maximin::read_instance(solve_path, region);
      const auto report = run(inst, solve_path, region, maximin::parse_method(solve_method), solve_cfg, solve_reference);
      if (solve_format == "json") {
        emit(solve_out, maximin::to_json(report).dump(2) + "\n");
      } else {
        emit(solve_out, std::string(maximin::kReportCsvHeader) + "\n" + maximin::report_csv_row(report) + "\n");
      }
    } else if (*bench) {
      if (bench_methods.empty() || (bench_methods.size() == 1 && bench_methods[0].empty()))
        throw UsageError("--method needs at least one method");
      std::vector<maximin::Method> parsed;
      for (const auto& m : bench_methods) {
        try {
          parsed.push_back(maximin::parse_method(m));
        } catch (const maximin::ParseError& e) {
          throw UsageError(e.what());
        }
      }
      bench_cfg.threads = threads;
      bench_cfg.validate();
      const auto region = maximin::parse_region(bench_region);
      const auto sizes = parse_sizes(bench_sizes, bench_step);
      std::string text = std::string(maximin::kReportCsvHeader) + "\n";
      for (std::size_t n : sizes) {
        maximin::InstanceSpec spec;
        spec.n = n;
        spec.region = region;
        const auto inst = maximin::generate(spec);
        for (auto m : parsed) {
          std::optional<double> reference;
          if (m == maximin::Method::Heuristic) reference = maximin::apollonius_global(inst, bench_cfg).objective;
          const auto report = run(inst, "generated:n=" + std::to_string(n), region, m, bench_cfg, reference);
          text += maximin::report_csv_row(report) + "\n";
          std::cerr << "n=" << n << ' ' << maximin::to_string(m) << " done\n";
        }
      }
      emit(bench_out, text);
    } else if (*plot) {
      const auto inst = maximin::read_instance(plot_path, maximin::parse_region(plot_region));
      std::optional<maximin::Point> optimum;
      if (!plot_solution.empty()) optimum = maximin::parse_report(slurp(plot_solution)).solution.location;
      maximin::SvgOptions opt;
      opt.delaunay_edges = plot_delaunay;
      emit(plot_out, maximin::render_svg(inst, optimum, opt));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const maximin::UnsupportedCombination& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const maximin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
