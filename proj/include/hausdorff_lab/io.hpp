#pragma once

// Text formats: interval sets, point clouds, distance matrices, gauges,
// outer-measure tables, IFS configs, sweep CSVs and dimension reports.
// Numbers are written with 17 significant digits so values survive a round
// trip exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <unistd.h>

#include "hausdorff_lab/core_sets.hpp"
#include "hausdorff_lab/dimension.hpp"
#include "hausdorff_lab/fractals.hpp"
#include "hausdorff_lab/gauge_measure.hpp"
#include "hausdorff_lab/hausdorff.hpp"

namespace hausdorff_lab::io {

/// Malformed input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                         : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_number(std::string_view field, std::size_t line) {
  if (field == "inf" || field == "+inf" || field == "Infinity") {
    return std::numeric_limits<double>::infinity();
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  }
  return v;
}

inline Mask parse_mask(std::string_view field, std::size_t line) {
  if (field.size() > 2 && field[0] == '0' && (field[1] == 'x' || field[1] == 'X')) field.remove_prefix(2);
  Mask m = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), m, 16);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "not a hex mask: '" + std::string(field) + "'");
  }
  return m;
}

/// Calls fn(line_number, fields) for every non-blank line that is not a
/// '#' comment.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                       : end - start);
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() != '#') fn(line_no, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Writes to a temporary sibling and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

// ---------------------------------------------------------------------------
// IntervalSet: lines "a,b"
// ---------------------------------------------------------------------------

inline std::string to_csv(const IntervalSet& set) {
  std::string out;
  for (const auto& iv : set.intervals()) out += format_double(iv.lo) + "," + format_double(iv.hi) + "\n";
  return out;
}

inline IntervalSet parse_interval_set(std::string_view text) {
  std::vector<Interval> ivs;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    const auto f = detail::split(rec);
    if (f.size() != 2) throw ParseError(line, "expected 'a,b'");
    const double a = detail::parse_number(f[0], line);
    const double b = detail::parse_number(f[1], line);
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) throw ParseError(line, "invalid interval");
    ivs.push_back({a, b});
  });
  return IntervalSet(std::move(ivs));
}

// ---------------------------------------------------------------------------
// PointCloud: one point per line
// ---------------------------------------------------------------------------

inline std::string to_csv(const PointCloud& cloud) {
  std::string out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out += ',';
      out += format_double(p[k]);
    }
    out += '\n';
  }
  return out;
}

/// `dim_if_empty` is the dimension reported for a file with no points.
inline PointCloud parse_point_cloud(std::string_view text, std::size_t dim_if_empty = 1) {
  std::size_t dim = 0;
  std::vector<double> coords;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    const auto f = detail::split(rec);
    if (dim == 0) dim = f.size();
    if (f.size() != dim) throw ParseError(line, "expected " + std::to_string(dim) + " coordinates");
    for (auto field : f) {
      const double v = detail::parse_number(field, line);
      if (!std::isfinite(v)) throw ParseError(line, "coordinates must be finite");
      coords.push_back(v);
    }
  });
  return PointCloud(dim == 0 ? dim_if_empty : dim, std::move(coords));
}

// ---------------------------------------------------------------------------
// FiniteMetricSpace: n rows of n distances
// ---------------------------------------------------------------------------

inline std::string to_csv(const FiniteMetricSpace& space) {
  std::string out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (j) out += ',';
      out += format_double(space.distance(i, j));
    }
    out += '\n';
  }
  return out;
}

inline FiniteMetricSpace parse_metric_space(std::string_view text) {
  std::vector<double> dist;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t last_line = 0;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    const auto f = detail::split(rec);
    if (rows == 0) cols = f.size();
    if (f.size() != cols) throw ParseError(line, "ragged distance matrix");
    for (auto field : f) dist.push_back(detail::parse_number(field, line));
    ++rows;
    last_line = line;
  });
  if (rows != cols) throw ParseError(last_line, "distance matrix is not square");
  try {
    return FiniteMetricSpace(rows, std::move(dist));
  } catch (const std::invalid_argument& e) {
    throw ParseError(last_line, e.what());
  }
}

// ---------------------------------------------------------------------------
// Gauge: "n=<int>" then "mask_hex,weight"
// ---------------------------------------------------------------------------

inline std::string to_text(const Gauge& gauge) {
  std::string out = "n=" + std::to_string(gauge.ground_size()) + "\n";
  for (const auto& b : gauge.blocks()) out += mask_to_hex(b.members) + "," + format_double(b.weight) + "\n";
  return out;
}

inline Gauge parse_gauge(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<GaugeBlock> blocks;
  std::size_t last_line = 0;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    last_line = line;
    if (!n) {
      if (rec.substr(0, 2) != "n=") throw ParseError(line, "expected header 'n=<int>'");
      const auto v = rec.substr(2);
      std::size_t value = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
      if (ec != std::errc{} || ptr != v.data() + v.size()) throw ParseError(line, "bad ground size");
      n = value;
      return;
    }
    const auto f = detail::split(rec);
    if (f.size() != 2) throw ParseError(line, "expected 'mask_hex,weight'");
    blocks.push_back({detail::parse_mask(f[0], line), detail::parse_number(f[1], line)});
  });
  if (!n) throw ParseError(last_line + 1, "missing header 'n=<int>'");
  try {
    return Gauge(*n, std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw ParseError(last_line, e.what());
  }
}

// ---------------------------------------------------------------------------
// OuterMeasureTable: "mask_hex,value", inf for +infinity
// ---------------------------------------------------------------------------

inline std::string to_csv(const OuterMeasureTable& table) {
  std::string out;
  for (std::size_t s = 0; s < table.subset_count(); ++s) {
    out += mask_to_hex(static_cast<Mask>(s)) + "," + format_double(table[static_cast<Mask>(s)]) + "\n";
  }
  return out;
}

inline OuterMeasureTable parse_outer_measure_table(std::string_view text) {
  std::map<Mask, double> rows;
  std::size_t last_line = 0;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    last_line = line;
    const auto f = detail::split(rec);
    if (f.size() != 2) throw ParseError(line, "expected 'mask_hex,value'");
    const Mask m = detail::parse_mask(f[0], line);
    if (!rows.emplace(m, detail::parse_number(f[1], line)).second) {
      throw ParseError(line, "duplicate mask " + mask_to_hex(m));
    }
  });
  std::size_t n = 0;
  while ((std::size_t{1} << n) < rows.size()) ++n;
  if ((std::size_t{1} << n) != rows.size() || n > kMaxExactPoints) {
    throw ParseError(last_line, "table must list all 2^n subsets");
  }
  std::vector<double> values(rows.size());
  for (const auto& [m, v] : rows) {
    if (m >= values.size()) throw ParseError(last_line, "mask " + mask_to_hex(m) + " out of range");
    values[m] = v;
  }
  return OuterMeasureTable(n, std::move(values));
}

// ---------------------------------------------------------------------------
// IFS config: "r, q11..qdd, t1..td" per line
// ---------------------------------------------------------------------------

inline std::string to_text(const IFS& ifs) {
  std::string out = "# r, q11..qdd (row-major), t1..td\n";
  for (const auto& f : ifs.maps()) {
    out += format_double(f.ratio());
    for (double q : f.orthogonal()) out += ", " + format_double(q);
    for (double t : f.translation()) out += ", " + format_double(t);
    out += '\n';
  }
  return out;
}

inline IFS parse_ifs(std::string_view text) {
  std::vector<Similarity> maps;
  std::size_t last_line = 0;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    last_line = line;
    const auto f = detail::split(rec);
    // 1 + d^2 + d fields.
    std::size_t d = 1;
    while (1 + d * d + d < f.size()) ++d;
    if (1 + d * d + d != f.size()) throw ParseError(line, "expected 1 + d^2 + d fields");
    std::vector<double> v;
    for (auto field : f) v.push_back(detail::parse_number(field, line));
    try {
      maps.emplace_back(v[0], std::vector<double>(v.begin() + 1, v.begin() + 1 + d * d),
                        std::vector<double>(v.begin() + 1 + d * d, v.end()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  });
  try {
    return IFS(std::move(maps));
  } catch (const std::invalid_argument& e) {
    throw ParseError(last_line, e.what());
  }
}

// ---------------------------------------------------------------------------
// Sweep CSV: eps,s,value,method,is_exact
// ---------------------------------------------------------------------------

inline constexpr std::string_view kSweepHeader = "eps,s,value,method,is_exact";

struct SweepRow {
  double eps = 0.0;
  double s = 0.0;
  double value = 0.0;
  Method method = Method::kExactDp;
  bool is_exact = true;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline std::vector<SweepRow> rows_of(const ScaleSweep& sweep) {
  std::vector<SweepRow> rows;
  for (const auto& e : sweep.entries) {
    rows.push_back({e.eps, e.estimate.exponent_s, e.estimate.value, e.estimate.method, e.estimate.is_exact});
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows, bool header = true) {
  std::string out;
  if (header) out += std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += format_double(r.eps) + "," + format_double(r.s) + "," + format_double(r.value) + "," +
           to_string(r.method) + "," + (r.is_exact ? "true" : "false") + "\n";
  }
  return out;
}

inline std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  bool first = true;
  detail::for_each_record(text, [&](std::size_t line, std::string_view rec) {
    if (first) {
      first = false;
      if (rec == kSweepHeader) return;
    }
    const auto f = detail::split(rec);
    if (f.size() != 5) throw ParseError(line, "expected 5 sweep fields");
    SweepRow r;
    r.eps = detail::parse_number(f[0], line);
    r.s = detail::parse_number(f[1], line);
    r.value = detail::parse_number(f[2], line);
    try {
      r.method = method_from_string(std::string(f[3]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
    if (f[4] != "true" && f[4] != "false") throw ParseError(line, "is_exact must be true/false");
    r.is_exact = f[4] == "true";
    rows.push_back(r);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Dimension report: method,value,lo,hi,r_squared,n_scales
// ---------------------------------------------------------------------------

inline constexpr std::string_view kReportHeader = "method,value,lo,hi,r_squared,n_scales";

struct DimensionReport {
  std::string method;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// NaN where not applicable (written as an empty field).
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  std::size_t n_scales = 0;
  std::vector<SweepRow> scales;
};

inline DimensionReport make_report(const DimensionEstimate& est) {
  DimensionReport rep;
  rep.method = to_string(est.method);
  rep.value = est.value;
  if (const auto* m = std::get_if<MoranDiagnostics>(&est.diagnostics)) {
    rep.lo = m->bracket_lo;
    rep.hi = m->bracket_hi;
  } else if (const auto* r = std::get_if<RegressionDiagnostics>(&est.diagnostics)) {
    rep.lo = rep.hi = est.value;
    rep.r_squared = r->fit.r_squared;
    rep.n_scales = r->eps_used.size();
    for (std::size_t i = 0; i < r->eps_used.size(); ++i) {
      // Box counts are the s = 0 grid pre-measure.
      rep.scales.push_back({r->eps_used[i], 0.0, static_cast<double>(r->counts[i]), Method::kBoxCover, false});
    }
  } else if (const auto* s = std::get_if<ScanDiagnostics>(&est.diagnostics)) {
    rep.lo = s->lo;
    rep.hi = s->hi;
    if (!s->sweeps.empty()) rep.n_scales = s->sweeps.front().entries.size();
    for (const auto& sw : s->sweeps) {
      const auto rows = rows_of(sw);
      rep.scales.insert(rep.scales.end(), rows.begin(), rows.end());
    }
  }
  return rep;
}

inline std::string report_csv(const DimensionReport& rep) {
  return std::string(kReportHeader) + "\n" + rep.method + "," + format_double(rep.value) + "," +
         format_double(rep.lo) + "," + format_double(rep.hi) + "," +
         (std::isnan(rep.r_squared) ? std::string() : format_double(rep.r_squared)) + "," +
         std::to_string(rep.n_scales) + "\n";
}

}  // namespace hausdorff_lab::io
