// hausdorff-lab: generate fractal sets, sweep Hausdorff pre-measures,
// estimate dimensions and run the property suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
// malformed input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hausdorff_lab/hausdorff_lab.hpp"

namespace hl = hausdorff_lab;
namespace io = hausdorff_lab::io;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// shared options
// ---------------------------------------------------------------------------

struct ScheduleOptions {
  double start = 0.0;
  double ratio = 0.0;
  std::size_t count = 0;
  std::vector<double> list;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--eps-start", start, "Largest scale of the geometric schedule");
    cmd->add_option("--eps-ratio", ratio, "Ratio between consecutive scales, in (0,1)");
    cmd->add_option("--count", count, "Number of scales");
    cmd->add_option("--eps-list", list, "Explicit decreasing scales (comma separated)")->delimiter(',');
  }

  hl::ScaleSchedule build(std::size_t min_count) const {
    hl::ScaleSchedule schedule;
    if (!list.empty()) {
      if (start != 0.0 || ratio != 0.0 || count != 0) {
        throw UsageError("--eps-list cannot be combined with --eps-start/--eps-ratio/--count");
      }
      schedule = hl::ScaleSchedule(list);
    } else {
      if (start == 0.0 || ratio == 0.0 || count == 0) {
        throw UsageError("a schedule needs --eps-start, --eps-ratio and --count (or --eps-list)");
      }
      schedule = hl::ScaleSchedule::geometric(start, ratio, count);
    }
    if (schedule.size() < min_count) {
      throw UsageError("at least " + std::to_string(min_count) + " scales are required");
    }
    return schedule;
  }
};

struct Output {
  std::string path;
  bool json = false;

  /// Data goes to --out when given (summary on stdout), otherwise data on
  /// stdout and the summary on stderr.
  void emit(const std::string& data, const std::string& summary) const {
    if (!path.empty()) {
      io::write_atomic(path, data);
      if (!summary.empty()) std::cout << summary << '\n';
    } else {
      std::cout << data;
      std::cout.flush();
      if (!summary.empty()) std::cerr << summary << '\n';
    }
  }
};

std::string fmt(double x) { return io::format_double(x); }

std::string read_input(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  return io::read_file(path);
}

/// Parses an s-grid given as "a,b,c" or "a:step:b".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto number = [](const std::string& field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number in --s-grid: " + field);
    }
    if (used != field.size()) throw UsageError("bad number in --s-grid: " + field);
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--s-grid range must be a:step:b");
    const double a = number(parts[0]);
    const double step = number(parts[1]);
    const double b = number(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError("--s-grid range needs step > 0 and a <= b");
    for (std::size_t k = 0;; ++k) {
      const double s = a + static_cast<double>(k) * step;
      if (s > b + 1e-9 * step) break;
      out.push_back(s);
    }
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw UsageError("empty --s-grid");
  return out;
}

json row_json(const io::SweepRow& r) {
  return {{"eps", r.eps}, {"s", r.s}, {"value", r.value}, {"method", hl::to_string(r.method)},
          {"is_exact", r.is_exact}};
}

/// Reads a set file as a sweep target. `as` is intervals, points or metric.
hl::SweepTarget load_target(const std::string& path, const std::string& as, bool box, std::size_t dim) {
  const std::string text = read_input(path);
  if (box) {
    if (as != "points") throw UsageError("--method box needs --as points");
    return hl::BoxTarget{io::parse_point_cloud(text, dim)};
  }
  if (as == "intervals") return io::parse_interval_set(text);
  if (as == "points") {
    const auto cloud = io::parse_point_cloud(text, dim);
    if (cloud.size() > hl::kMaxExactPoints) {
      throw UsageError("exact construction limited to 20 points; use --method box");
    }
    return hl::finite_target(cloud);
  }
  if (as == "metric") {
    auto space = io::parse_metric_space(text);
    if (space.size() > hl::kMaxExactPoints) throw UsageError("exact construction limited to 20 points");
    const hl::Mask all = space.full_mask();
    return hl::FiniteTarget{std::move(space), all};
  }
  throw UsageError("--as must be intervals, points or metric");
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateConfig {
  std::string preset;
  std::string ifs;
  int depth = 0;
  std::string as;
  std::size_t chaos = 0;
  std::uint64_t seed = 1;
  int burn_in = hl::kDefaultBurnIn;
  Output out;
};

hl::IFS resolve_ifs(const std::string& name) {
  const auto& names = hl::preset_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return hl::IFS::preset(name);
  if (std::filesystem::exists(name)) return io::parse_ifs(io::read_file(name));
  throw UsageError("unknown preset: " + name);
}

int cmd_generate(const GenerateConfig& c) {
  if (c.preset.empty() == c.ifs.empty()) throw UsageError("give exactly one of --preset or --ifs");
  const std::string name = c.preset.empty() ? c.ifs : c.preset;
  const bool cantor = name == "cantor";
  const std::string as = c.as.empty() ? (cantor && c.chaos == 0 ? "intervals" : "points") : c.as;
  if (as != "intervals" && as != "points") throw UsageError("--as must be intervals or points");

  if (as == "intervals") {
    if (!cantor || c.chaos != 0) throw UsageError("--as intervals is only available for the cantor preset");
    const auto exact = hl::cantor_prefractal_exact(c.depth);
    const auto set = hl::cantor_prefractal(c.depth);
    const auto len = exact.length();
    std::string summary = "intervals=" + std::to_string(set.size()) + " length=" + std::to_string(len.num) +
                          "/" + std::to_string(len.den) + " hull=[" + fmt(set.lower()) + "," +
                          fmt(set.upper()) + "]";
    c.out.emit(io::to_csv(set), summary);
    return kExitOk;
  }

  hl::PointCloud cloud;
  if (cantor && c.chaos == 0 && c.ifs.empty()) {
    cloud = hl::cantor_endpoints(c.depth);
  } else {
    const auto ifs = resolve_ifs(name);
    if (c.chaos > 0) {
      cloud = hl::chaos_game(ifs, c.chaos, c.seed, c.burn_in);
    } else {
      const auto fp = ifs.maps().front().fixed_point();
      cloud = hl::ifs_deterministic(ifs, hl::PointCloud(ifs.dim(), fp), c.depth);
    }
  }
  std::string hull;
  for (std::size_t k = 0; k < cloud.dim(); ++k) {
    double lo = hl::kInfinity;
    double hi = -hl::kInfinity;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      lo = std::min(lo, cloud.point(i)[k]);
      hi = std::max(hi, cloud.point(i)[k]);
    }
    hull += (k ? "x[" : "[") + fmt(lo) + "," + fmt(hi) + "]";
  }
  c.out.emit(io::to_csv(cloud), "points=" + std::to_string(cloud.size()) + " dim=" +
                                    std::to_string(cloud.dim()) + " hull=" + hull);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureConfig {
  std::string in;
  std::string as = "intervals";
  std::size_t dim = 1;
  std::vector<double> s;
  std::string method = "exact";
  ScheduleOptions schedule;
  Output out;
};

int cmd_measure(const MeasureConfig& c) {
  if (c.s.empty()) throw UsageError("--s is required");
  if (c.method != "exact" && c.method != "box") throw UsageError("--method must be exact or box");
  const auto schedule = c.schedule.build(3);
  const auto target = load_target(c.in, c.as, c.method == "box", c.dim);
  std::vector<io::SweepRow> rows;
  std::string summary;
  for (double s : c.s) {
    const auto sweep = hl::scale_sweep(target, s, schedule, {}, hl::thread_limit());
    const auto r = io::rows_of(sweep);
    rows.insert(rows.end(), r.begin(), r.end());
    if (!summary.empty()) summary += "; ";
    summary += "s=" + fmt(s) + " trend=" + hl::to_string(sweep.trend) + " last=" + fmt(sweep.values().back());
  }
  if (c.out.json) {
    json doc{{"rows", json::array()}};
    for (const auto& r : rows) doc["rows"].push_back(row_json(r));
    c.out.emit(doc.dump(2) + "\n", summary);
  } else {
    c.out.emit(io::sweep_csv(rows), summary);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dimension
// ---------------------------------------------------------------------------

struct DimensionConfig {
  std::vector<double> moran;
  bool box = false;
  bool scan = false;
  std::string in;
  std::string as;
  std::size_t dim = 1;
  std::string s_grid;
  ScheduleOptions schedule;
  hl::TrendThresholds thresholds;
  std::string scales_out;
  Output out;
};

int cmd_dimension(const DimensionConfig& c) {
  const int chosen = static_cast<int>(!c.moran.empty()) + static_cast<int>(c.box) + static_cast<int>(c.scan);
  if (chosen != 1) throw UsageError("choose exactly one of --moran, --box, --scan");
  hl::DimensionEstimate est;
  if (!c.moran.empty()) {
    est = hl::moran_dimension(c.moran);
  } else if (c.box) {
    if (!c.as.empty() && c.as != "points") throw UsageError("--box needs a point cloud");
    const auto schedule = c.schedule.build(3);
    est = hl::box_counting_dimension(io::parse_point_cloud(read_input(c.in), c.dim), schedule,
                                     hl::thread_limit());
  } else {
    if (c.s_grid.empty()) throw UsageError("--scan needs --s-grid");
    const auto grid = parse_grid(c.s_grid);
    const auto schedule = c.schedule.build(3);
    const auto target = load_target(c.in, c.as.empty() ? "intervals" : c.as, false, c.dim);
    est = hl::critical_exponent_scan(target, grid, schedule, c.thresholds, hl::thread_limit());
  }
  const auto rep = io::make_report(est);

  std::string summary = std::string(hl::to_string(est.method)) + " dimension " + fmt(est.value);
  if (const auto* d = std::get_if<hl::RegressionDiagnostics>(&est.diagnostics)) {
    summary += " (r_squared=" + fmt(d->fit.r_squared) + ", scales=" + std::to_string(d->eps_used.size()) + ")";
    for (const auto& w : d->warnings) std::cerr << "warning: " << w << '\n';
  } else if (const auto* d = std::get_if<hl::ScanDiagnostics>(&est.diagnostics)) {
    summary += " (" + std::string(hl::to_string(d->status)) + " in [" + fmt(d->lo) + "," + fmt(d->hi) + "])";
    for (double s : d->skipped) std::cerr << "warning: s=" << fmt(s) << " outside (0,1] skipped\n";
  } else if (const auto* d = std::get_if<hl::MoranDiagnostics>(&est.diagnostics)) {
    summary += " (residual=" + fmt(d->residual) + ")";
  }

  if (!c.scales_out.empty()) io::write_atomic(c.scales_out, io::sweep_csv(rep.scales));
  if (c.out.json) {
    json doc{{"method", rep.method}, {"value", rep.value}, {"lo", rep.lo}, {"hi", rep.hi},
             {"r_squared", std::isnan(rep.r_squared) ? json(nullptr) : json(rep.r_squared)},
             {"n_scales", rep.n_scales}, {"scales", json::array()}};
    for (const auto& r : rep.scales) doc["scales"].push_back(row_json(r));
    c.out.emit(doc.dump(2) + "\n", summary);
  } else {
    c.out.emit(io::report_csv(rep), summary);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyConfig {
  std::string suite;
  hl::verify::SuiteOptions options;
  std::string table;
  std::string gauge;
  Output out;
};

int cmd_verify(const VerifyConfig& c) {
  const auto& names = hl::verify::suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
    throw UsageError("unknown suite: " + c.suite);
  }
  std::vector<hl::verify::PropertyResult> results;
  if (!c.table.empty() || !c.gauge.empty()) {
    if (c.suite != "axioms" && c.suite != "caratheodory") {
      throw UsageError("--table/--gauge apply to the axioms and caratheodory suites");
    }
    std::optional<hl::OuterMeasureTable> table;
    if (!c.table.empty()) table = io::parse_outer_measure_table(io::read_file(c.table));
    if (!c.gauge.empty()) table = hl::construct_outer_measure(io::parse_gauge(io::read_file(c.gauge)));
    results = hl::verify::check_table_axioms(*table);
    if (c.suite == "caratheodory") {
      const auto fam = hl::measurable_family(*table);
      results.push_back({"measurable sets form a sigma-algebra", fam.sigma_algebra_ok, 1, ""});
      results.push_back({"measure is additive on measurable sets", fam.additive_ok, 1, ""});
    }
  } else {
    results = hl::verify::run_suite(c.suite, c.options);
  }

  bool all = true;
  std::string text;
  json doc{{"suite", c.suite}, {"properties", json::array()}};
  for (const auto& r : results) {
    all = all && r.passed;
    text += std::string(r.passed ? "PASS " : "FAIL ") + r.name + " [" + std::to_string(r.cases) + " cases]";
    if (!r.passed) text += "\n  counterexample: " + r.counterexample;
    text += '\n';
    doc["properties"].push_back(
        {{"name", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"counterexample", r.counterexample}});
  }
  doc["passed"] = all;
  const std::string summary = "suite " + c.suite + ": " + (all ? "PASS" : "FAIL");
  if (c.out.json) {
    c.out.emit(doc.dump(2) + "\n", summary);
  } else if (!c.out.path.empty()) {
    c.out.emit(text, summary);
  } else {
    std::cout << text << summary << '\n';
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff measure and dimension laboratory"};
  app.require_subcommand(1);

  GenerateConfig gen;
  auto* g = app.add_subcommand("generate", "Write a Cantor prefractal or an IFS attractor sample");
  g->add_option("--preset", gen.preset, "cantor, sierpinski-triangle, sierpinski-carpet, koch-points");
  g->add_option("--ifs", gen.ifs, "Preset name or IFS file");
  g->add_option("--depth", gen.depth, "Prefractal depth / deterministic iterations")->check(CLI::NonNegativeNumber);
  g->add_option("--as", gen.as, "intervals or points");
  g->add_option("--chaos", gen.chaos, "Sample this many points with the chaos game");
  g->add_option("--seed", gen.seed, "Chaos game seed");
  g->add_option("--burn-in", gen.burn_in, "Discarded chaos game iterates")->check(CLI::NonNegativeNumber);
  g->add_option("--out", gen.out.path, "Output file");

  MeasureConfig mea;
  auto* m = app.add_subcommand("measure", "Sweep the Hausdorff pre-measure over a scale schedule");
  m->add_option("--in", mea.in, "Set file")->required();
  m->add_option("--as", mea.as, "intervals, points or metric");
  m->add_option("--dim", mea.dim, "Ambient dimension of an empty point file");
  m->add_option("--s", mea.s, "Exponent(s)")->delimiter(',')->required();
  m->add_option("--method", mea.method, "exact or box");
  mea.schedule.add_to(m);
  m->add_option("--out", mea.out.path, "Output file");
  m->add_flag("--json", mea.out.json, "JSON instead of CSV");

  DimensionConfig dim;
  auto* d = app.add_subcommand("dimension", "Estimate a dimension");
  d->add_option("--moran", dim.moran, "Similarity ratios")->delimiter(',');
  d->add_flag("--box", dim.box, "Box-counting regression on a point cloud");
  d->add_flag("--scan", dim.scan, "Critical exponent scan");
  d->add_option("--in", dim.in, "Set file");
  d->add_option("--as", dim.as, "intervals, points or metric");
  d->add_option("--dim", dim.dim, "Ambient dimension of an empty point file");
  d->add_option("--s-grid", dim.s_grid, "Exponents: a,b,c or a:step:b");
  dim.schedule.add_to(d);
  d->add_option("--vanish", dim.thresholds.vanish, "Vanishing threshold");
  d->add_option("--diverge-ratio", dim.thresholds.diverge_ratio, "Diverging growth ratio");
  d->add_option("--converge-rel", dim.thresholds.converge_rel, "Converging relative change");
  d->add_option("--scales-out", dim.scales_out, "Per-scale CSV");
  d->add_option("--out", dim.out.path, "Report file");
  d->add_flag("--json", dim.out.json, "JSON instead of CSV");

  VerifyConfig ver;
  auto* v = app.add_subcommand("verify", "Run a property suite");
  v->add_option("--suite", ver.suite, "axioms, caratheodory, metric, hausdorff-props, dimension-props, cantor")
      ->required();
  v->add_option("--n", ver.options.n, "Ground set size for random gauges")->check(CLI::Range(1, 16));
  v->add_option("--trials", ver.options.trials, "Random instances per property");
  v->add_option("--seed", ver.options.seed, "Seed");
  v->add_option("--depth", ver.options.depth, "Cantor depth")->check(CLI::Range(0, 20));
  v->add_option("--table", ver.table, "Check this outer measure table instead");
  v->add_option("--gauge", ver.gauge, "Check the measure constructed from this gauge instead");
  v->add_option("--out", ver.out.path, "Report file");
  v->add_flag("--json", ver.out.json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*m) return cmd_measure(mea);
    if (*d) return cmd_dimension(dim);
    if (*v) return cmd_verify(ver);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
