#pragma once

// Hausdorff dimension estimation: the similarity (Moran) equation, box-count
// regression, and the critical-exponent scan over (s, eps).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hausdorff_lab/core_sets.hpp"
#include "hausdorff_lab/grid_cover.hpp"
#include "hausdorff_lab/hausdorff.hpp"
#include "hausdorff_lab/parallel.hpp"

namespace hausdorff_lab {

enum class DimensionMethod { kMoran, kBoxRegression, kCriticalScan };

inline const char* to_string(DimensionMethod m) {
  switch (m) {
    case DimensionMethod::kMoran: return "moran";
    case DimensionMethod::kBoxRegression: return "box-regression";
    case DimensionMethod::kCriticalScan: return "critical-scan";
  }
  return "?";
}

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

/// Ordinary least squares y = slope * x + intercept. When y has no spread
/// the fit is reported with r_squared = 0.
inline RegressionResult least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least squares needs at least 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least squares needs distinct x values");
  RegressionResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.r_squared = syy == 0.0 ? 0.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  r.n_points = x.size();
  return r;
}

struct MoranDiagnostics {
  /// |sum r_i^s - 1| at the returned root.
  double residual = 0.0;
  /// Final bisection bracket: sum r_i^lo - 1 >= 0 >= sum r_i^hi - 1.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

struct RegressionDiagnostics {
  RegressionResult fit;
  std::vector<double> eps_used;
  std::vector<std::size_t> counts;
  std::vector<std::string> warnings;
  /// Every count equal: slope 0 and no usable R^2.
  bool degenerate = false;
};

enum class ScanStatus {
  /// Diverging below, vanishing at hi.
  kBracketed,
  /// A converging sweep was found; value is that exponent.
  kCritical,
  /// Nothing diverges; the dimension is at most the first grid exponent.
  kVanishingEverywhere,
  /// Everything diverges; the dimension is at least the last grid exponent.
  kDivergingEverywhere,
  /// The first non-diverging sweep has no clear verdict.
  kUndetermined,
};

inline const char* to_string(ScanStatus s) {
  switch (s) {
    case ScanStatus::kBracketed: return "bracketed";
    case ScanStatus::kCritical: return "critical";
    case ScanStatus::kVanishingEverywhere: return "vanishing-everywhere";
    case ScanStatus::kDivergingEverywhere: return "diverging-everywhere";
    case ScanStatus::kUndetermined: return "undetermined";
  }
  return "?";
}

struct ScanDiagnostics {
  double lo = 0.0;
  double hi = 0.0;
  ScanStatus status = ScanStatus::kUndetermined;
  std::optional<double> converging_at;
  std::vector<double> s_values;
  std::vector<ScaleSweep> sweeps;
  /// Grid exponents outside the valid range of the target's estimator.
  std::vector<double> skipped;
};

struct DimensionEstimate {
  double value = 0.0;
  DimensionMethod method = DimensionMethod::kMoran;
  std::variant<MoranDiagnostics, RegressionDiagnostics, ScanDiagnostics> diagnostics;
};

// ---------------------------------------------------------------------------
// moran_dimension
// ---------------------------------------------------------------------------

inline constexpr double kMoranUpper = 64.0;
inline constexpr int kMoranMaxIterations = 200;
inline constexpr double kMoranResidual = 1e-12;

/// The unique s >= 0 with sum r_i^s = 1, by bisection on [0, 64].
inline DimensionEstimate moran_dimension(std::span<const double> ratios) {
  if (ratios.empty()) throw std::invalid_argument("moran_dimension needs at least one ratio");
  for (double r : ratios) {
    if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("similarity ratios must lie in (0,1)");
  }
  auto excess = [&](double s) {
    double sum = 0.0;
    for (double r : ratios) sum += std::pow(r, s);
    return sum - 1.0;
  };
  MoranDiagnostics diag;
  if (ratios.size() == 1) {
    diag.residual = std::abs(excess(0.0));
    return {0.0, DimensionMethod::kMoran, diag};
  }
  double lo = 0.0;
  double hi = kMoranUpper;
  if (!(excess(hi) < 0.0)) throw std::domain_error("similarity dimension exceeds 64");
  int it = 0;
  for (; it < kMoranMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  diag.residual = std::abs(excess(root));
  diag.bracket_lo = lo;
  diag.bracket_hi = hi;
  diag.iterations = it;
  if (diag.residual > kMoranResidual) throw std::runtime_error("moran bisection did not converge");
  return {root, DimensionMethod::kMoran, diag};
}

// ---------------------------------------------------------------------------
// box counting
// ---------------------------------------------------------------------------

/// Occupied origin-anchored grid cells of side eps.
inline std::size_t box_count(const PointCloud& cloud, double eps) {
  return occupied_cell_count(cloud, eps);
}

/// Least-squares slope of log N(eps) against log(1/eps) over the given
/// scales. Scales with no occupied cell are dropped with a warning.
inline DimensionEstimate box_counting_dimension(const PointCloud& cloud,
                                                const ScaleSchedule& schedule,
                                                std::size_t threads = 1) {
  if (schedule.size() < 3) throw std::invalid_argument("box counting needs at least 3 scales");
  auto counts = parallel_map(
      schedule.size(), [&](std::size_t i) { return box_count(cloud, schedule[i]); }, threads);
  RegressionDiagnostics diag;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (counts[i] == 0) {
      diag.warnings.push_back("eps=" + std::to_string(schedule[i]) + " has no occupied cells; dropped");
      continue;
    }
    diag.eps_used.push_back(schedule[i]);
    diag.counts.push_back(counts[i]);
    x.push_back(-std::log(schedule[i]));
    y.push_back(std::log(static_cast<double>(counts[i])));
  }
  if (x.size() < 3) throw std::invalid_argument("fewer than 3 usable scales for box counting");
  diag.fit = least_squares(x, y);
  diag.degenerate = std::all_of(diag.counts.begin(), diag.counts.end(),
                                [&](std::size_t c) { return c == diag.counts.front(); });
  if (diag.degenerate) diag.warnings.push_back("all counts equal; R^2 undefined");
  const double value = diag.degenerate ? 0.0 : std::max(0.0, diag.fit.slope);
  return {value, DimensionMethod::kBoxRegression, std::move(diag)};
}

// ---------------------------------------------------------------------------
// critical_exponent_scan
// ---------------------------------------------------------------------------

/// Sweeps each grid exponent and locates the switch from diverging sweeps to
/// non-diverging ones.
///
/// With i the first grid index whose sweep does not diverge: a converging
/// sweep gives the value s_i itself; a vanishing sweep gives the midpoint of
/// [s_{i-1}, s_i], or 0 when no sweep diverged at all. Exponents the target's
/// estimator cannot evaluate (s outside (0,1] on interval sets) are skipped
/// and listed in the diagnostics.
inline DimensionEstimate critical_exponent_scan(const SweepTarget& target,
                                                std::span<const double> s_grid,
                                                const ScaleSchedule& schedule,
                                                const TrendThresholds& thresholds = {},
                                                std::size_t threads = 1) {
  if (s_grid.empty()) throw std::invalid_argument("empty exponent grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] >= 0.0)) throw std::invalid_argument("grid exponents must be non-negative");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw std::invalid_argument("exponent grid must be ascending");
    }
  }
  ScanDiagnostics diag;
  const bool intervals = std::holds_alternative<IntervalSet>(target);
  for (double s : s_grid) {
    if (intervals && !(s > 0.0 && s <= 1.0)) {
      diag.skipped.push_back(s);
    } else {
      diag.s_values.push_back(s);
    }
  }
  if (diag.s_values.empty()) throw std::invalid_argument("no usable exponent in the grid");
  diag.sweeps = parallel_map(
      diag.s_values.size(),
      [&](std::size_t i) { return scale_sweep(target, diag.s_values[i], schedule, thresholds); },
      threads);

  const auto& s = diag.s_values;
  std::size_t i = 0;
  while (i < s.size() && diag.sweeps[i].trend == Trend::kDiverging) ++i;
  double value = 0.0;
  if (i == s.size()) {
    diag.status = ScanStatus::kDivergingEverywhere;
    diag.lo = s.back();
    diag.hi = std::numeric_limits<double>::infinity();
    value = s.back();
  } else {
    diag.lo = i > 0 ? s[i - 1] : 0.0;
    diag.hi = s[i];
    switch (diag.sweeps[i].trend) {
      case Trend::kConverging:
        diag.status = ScanStatus::kCritical;
        diag.converging_at = s[i];
        value = s[i];
        break;
      case Trend::kVanishing:
        if (i == 0) {
          diag.status = ScanStatus::kVanishingEverywhere;
          value = 0.0;
        } else {
          diag.status = ScanStatus::kBracketed;
          value = 0.5 * (diag.lo + diag.hi);
        }
        break;
      default:
        diag.status = ScanStatus::kUndetermined;
        value = 0.5 * (diag.lo + diag.hi);
        break;
    }
  }
  return {value, DimensionMethod::kCriticalScan, std::move(diag)};
}

}  // namespace hausdorff_lab
