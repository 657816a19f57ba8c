#pragma once

// Hausdorff pre-measures H^s_eps: exact on finite metric spaces and on 1-D
// interval sets, grid-cover upper bounds on point clouds, and scale sweeps
// that classify the eps -> 0 behaviour.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hausdorff_lab/core_sets.hpp"
#include "hausdorff_lab/gauge_measure.hpp"
#include "hausdorff_lab/grid_cover.hpp"
#include "hausdorff_lab/parallel.hpp"

namespace hausdorff_lab {

/// diam^s with 0^0 = 1 (so H^0 counts points) and 0^s = 0 for s > 0.
inline double power_diam(double diam, double s) {
  if (diam == 0.0) return s == 0.0 ? 1.0 : 0.0;
  if (s == 0.0) return 1.0;
  return std::pow(diam, s);
}

enum class Method { kExactDp, kIntervalDp, kBoxCover };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::kExactDp: return "exact-dp";
    case Method::kIntervalDp: return "interval-dp";
    case Method::kBoxCover: return "box-cover";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  if (s == "exact-dp") return Method::kExactDp;
  if (s == "interval-dp") return Method::kIntervalDp;
  if (s == "box-cover") return Method::kBoxCover;
  throw std::invalid_argument("unknown measure method: " + s);
}

struct MeasureEstimate {
  double value = 0.0;
  double exponent_s = 0.0;
  /// Scale of the pre-measure; empty for a limit value.
  std::optional<double> scale_eps;
  Method method = Method::kExactDp;
  /// False for upper bounds (box covers).
  bool is_exact = true;
};

namespace detail {

inline void require_scale(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
}

inline void require_exponent(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("s must be non-negative");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite metric spaces
// ---------------------------------------------------------------------------

/// The gauge {X : diam X <= eps} with weight diam(X)^s on a finite space.
inline Gauge hausdorff_gauge(const FiniteMetricSpace& space, double s, double eps) {
  detail::require_exponent(s);
  detail::require_scale(eps);
  detail::require_exact_size(space.size());
  const auto diam = all_subset_diameters(space);
  std::vector<GaugeBlock> blocks;
  blocks.push_back({0, 0.0});
  for (std::size_t m = 1; m < diam.size(); ++m) {
    if (diam[m] <= eps) blocks.push_back({static_cast<Mask>(m), power_diam(diam[m], s)});
  }
  return Gauge(space.size(), std::move(blocks));
}

/// Exact H^s_eps(A) on a finite metric space.
///
/// Blocks are restricted to subsets of A, which is lossless because the
/// diameter can only shrink under intersection. Singletons always qualify,
/// so the value is finite.
inline MeasureEstimate premeasure_finite(const FiniteMetricSpace& space, Mask subset, double s,
                                         double eps) {
  detail::require_exponent(s);
  detail::require_scale(eps);
  if (space.size() <= kMaxMaskBits && (subset & ~space.full_mask())) {
    throw std::invalid_argument("subset outside the ground set");
  }
  std::vector<std::size_t> idx;
  for (Mask m = subset; m; m &= m - 1) idx.push_back(lowest_index(m));
  if (idx.size() > kMaxExactPoints) {
    throw std::invalid_argument("exact construction limited to 20 points");
  }
  MeasureEstimate est{0.0, s, eps, Method::kExactDp, true};
  const std::size_t m = idx.size();
  if (m == 0) return est;

  const std::size_t count = std::size_t{1} << m;
  // Weight of each local subset as a block, +inf when too wide.
  std::vector<double> weight(count, 0.0);
  std::vector<double> diam(count, 0.0);
  for (std::size_t x = 1; x < count; ++x) {
    const Mask mask = static_cast<Mask>(x);
    const int low = lowest_index(mask);
    const Mask rest = mask & (mask - 1);
    double d = diam[rest];
    for (Mask r = rest; r; r &= r - 1) d = std::max(d, space.distance(idx[low], idx[lowest_index(r)]));
    diam[x] = d;
    weight[x] = d <= eps ? power_diam(d, s) : kInfinity;
  }
  std::vector<double> best(count, kInfinity);
  best[0] = 0.0;
  for (std::size_t x = 1; x < count; ++x) {
    const Mask set = static_cast<Mask>(x);
    const Mask low = set & (~set + 1);
    const Mask others = set & ~low;
    double value = kInfinity;
    for (Mask t = others;; t = (t - 1) & others) {
      const Mask block = t | low;
      if (weight[block] != kInfinity) value = std::min(value, weight[block] + best[set & ~block]);
      if (t == 0) break;
    }
    best[x] = value;
  }
  est.value = best[count - 1];
  return est;
}

inline MeasureEstimate premeasure_finite(const PointCloud& cloud, double s, double eps) {
  if (cloud.size() > kMaxExactPoints) {
    throw std::invalid_argument("exact construction limited to 20 points");
  }
  const auto space = FiniteMetricSpace::from_cloud(cloud);
  return premeasure_finite(space, space.full_mask(), s, eps);
}

// ---------------------------------------------------------------------------
// Interval sets
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr double kEndpointSnap = 1e-12;

/// Tolerance used when deciding whether a block reaches an endpoint; the
/// scale follows the coordinates so dilated inputs behave the same way.
inline double reach_tolerance(double a, double b, double eps) {
  return kEndpointSnap * std::max({std::abs(a), std::abs(b), eps});
}

}  // namespace detail

/// Exact H^s_eps of a finite union of closed intervals for 0 < s <= 1.
///
/// Left-to-right dynamic program over the leftmost uncovered material point
/// p. One block starts at p and either runs the full length eps or stops at a
/// right endpoint within reach. Since x^s is increasing and concave, a block
/// stopping anywhere else can be stretched or trimmed without loss. States
/// are processed in increasing position order, which is a topological order
/// of the transition graph. Runs of forced full-length blocks inside one long
/// interval are skipped in a single step.
inline MeasureEstimate premeasure_intervals(const IntervalSet& set, double s, double eps) {
  if (!(s > 0.0) || !(s <= 1.0)) throw std::invalid_argument("interval DP valid for s in (0,1]");
  detail::require_scale(eps);
  MeasureEstimate est{0.0, s, eps, Method::kIntervalDp, true};
  const auto iv = set.intervals();
  const std::size_t r = iv.size();
  if (r == 0) return est;

  const double full_cost = power_diam(eps, s);
  auto block_cost = [&](double len) { return power_diam(std::clamp(len, 0.0, eps), s); };

  using State = std::pair<std::size_t, double>;  // (interval index, position)
  std::map<State, double> open;
  auto relax = [&open](State st, double c) {
    auto [it, inserted] = open.try_emplace(st, c);
    if (!inserted) it->second = std::min(it->second, c);
  };
  open.emplace(State{0, iv[0].lo}, 0.0);
  double answer = kInfinity;

  while (!open.empty()) {
    auto node = open.begin();
    const std::size_t j = node->first.first;
    double p = node->first.second;
    double base = node->second;
    open.erase(node);

    const double b = iv[j].hi;
    const double tol = detail::reach_tolerance(p, b, eps);
    if (p + eps < b - tol) {
      // Smallest q with p + q*eps + eps >= b - tol.
      double q = std::max(0.0, std::ceil((b - tol - p) / eps) - 1.0);
      while (p + q * eps + eps < b - tol) q += 1.0;
      while (q > 0.0 && p + (q - 1.0) * eps + eps >= b - tol) q -= 1.0;
      p += q * eps;
      base += q * full_cost;
    }

    const double reach = p + eps;
    for (std::size_t k = j; k < r; ++k) {
      if (iv[k].hi > reach + detail::reach_tolerance(reach, iv[k].hi, eps)) {
        // A full-length block ending inside interval k leaves (reach, b_k].
        if (iv[k].lo <= reach) relax({k, reach}, base + full_cost);
        break;
      }
      const double c = base + block_cost(iv[k].hi - p);
      if (k + 1 == r) {
        answer = std::min(answer, c);
      } else {
        relax({k + 1, iv[k + 1].lo}, c);
      }
    }
  }
  est.value = answer;
  return est;
}

// ---------------------------------------------------------------------------
// Counting and grid covers
// ---------------------------------------------------------------------------

/// Number of distinct points (H^0 cannot see multiplicity).
inline double counting_measure(const PointCloud& cloud) {
  std::vector<std::vector<double>> pts;
  pts.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    pts.emplace_back(p.begin(), p.end());
  }
  std::sort(pts.begin(), pts.end());
  return static_cast<double>(std::unique(pts.begin(), pts.end()) - pts.begin());
}

inline double counting_measure(const FiniteMetricSpace& space, Mask subset) {
  if (space.size() <= kMaxMaskBits && (subset & ~space.full_mask())) {
    throw std::invalid_argument("subset outside the ground set");
  }
  return popcount(subset);
}

/// Upper bound sum over occupied grid cells of side eps of (eps*sqrt(d))^s.
/// The cells form an admissible cover at scale eps*sqrt(d).
inline MeasureEstimate box_premeasure(const PointCloud& cloud, double s, double eps) {
  detail::require_exponent(s);
  detail::require_scale(eps);
  const double cell_diam = eps * std::sqrt(static_cast<double>(cloud.dim()));
  const double n = static_cast<double>(occupied_cell_count(cloud, eps));
  return MeasureEstimate{n * power_diam(cell_diam, s), s, eps, Method::kBoxCover, false};
}

// ---------------------------------------------------------------------------
// Scale schedules and sweeps
// ---------------------------------------------------------------------------

/// Strictly decreasing list of positive scales.
class ScaleSchedule {
 public:
  ScaleSchedule() = default;

  explicit ScaleSchedule(std::vector<double> eps) : eps_(std::move(eps)) {
    if (eps_.empty()) throw std::invalid_argument("empty eps schedule");
    for (std::size_t i = 0; i < eps_.size(); ++i) {
      detail::require_scale(eps_[i]);
      if (i > 0 && !(eps_[i] < eps_[i - 1])) {
        throw std::invalid_argument("eps schedule must be strictly decreasing");
      }
    }
  }

  /// start, start*ratio, ..., start*ratio^(count-1).
  static ScaleSchedule geometric(double start, double ratio, std::size_t count) {
    if (!(ratio > 0.0) || !(ratio < 1.0)) throw std::invalid_argument("eps ratio must be in (0,1)");
    if (count == 0) throw std::invalid_argument("eps count must be positive");
    std::vector<double> eps(count);
    for (std::size_t k = 0; k < count; ++k) eps[k] = start * std::pow(ratio, static_cast<double>(k));
    return ScaleSchedule(std::move(eps));
  }

  std::span<const double> values() const { return eps_; }
  std::size_t size() const { return eps_.size(); }
  double operator[](std::size_t i) const { return eps_[i]; }

 private:
  std::vector<double> eps_;
};

enum class Trend { kDiverging, kConverging, kVanishing, kUndetermined };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::kDiverging: return "diverging";
    case Trend::kConverging: return "converging";
    case Trend::kVanishing: return "vanishing";
    case Trend::kUndetermined: return "undetermined";
  }
  return "?";
}

/// Limits are not computable; these thresholds turn a finite sweep into a
/// verdict.
struct TrendThresholds {
  /// Last value below this: vanishing.
  double vanish = 1e-9;
  /// Last/first above this while still growing: diverging.
  double diverge_ratio = 1e3;
  /// Relative change of the last step below this: converging.
  double converge_rel = 1e-3;
};

/// Classify values ordered by decreasing eps.
///
/// vanishing: last value < vanish. diverging: either last/first exceeds
/// diverge_ratio and the last step still grows, or every step grows by more
/// than converge_rel (geometric growth). converging: the last step changes by
/// less than converge_rel. Otherwise undetermined.
inline Trend classify_trend(std::span<const double> values, const TrendThresholds& th = {}) {
  if (values.size() < 2) return Trend::kUndetermined;
  const double first = values.front();
  const double last = values.back();
  const double prev = values[values.size() - 2];
  if (last < th.vanish) return Trend::kVanishing;
  if (std::isinf(last)) return Trend::kDiverging;
  const bool last_grows = last > prev * (1.0 + th.converge_rel);
  if (first > 0.0 && last / first > th.diverge_ratio && last_grows) return Trend::kDiverging;
  bool geometric = first > 0.0;
  for (std::size_t i = 1; i < values.size() && geometric; ++i) {
    geometric = values[i] > values[i - 1] * (1.0 + th.converge_rel);
  }
  if (geometric) return Trend::kDiverging;
  if (std::abs(last - prev) < th.converge_rel * std::max(std::abs(prev), th.vanish)) {
    return Trend::kConverging;
  }
  return Trend::kUndetermined;
}

struct FiniteTarget {
  FiniteMetricSpace space;
  Mask subset = 0;
};

struct BoxTarget {
  PointCloud cloud;
};

/// What a sweep evaluates: interval DP, exact finite DP, or grid covers.
using SweepTarget = std::variant<IntervalSet, FiniteTarget, BoxTarget>;

inline SweepTarget finite_target(const PointCloud& cloud) {
  auto space = FiniteMetricSpace::from_cloud(cloud);
  const Mask all = space.full_mask();
  return FiniteTarget{std::move(space), all};
}

inline MeasureEstimate premeasure(const SweepTarget& target, double s, double eps) {
  return std::visit(
      [&](const auto& t) -> MeasureEstimate {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, IntervalSet>) {
          return premeasure_intervals(t, s, eps);
        } else if constexpr (std::is_same_v<T, FiniteTarget>) {
          return premeasure_finite(t.space, t.subset, s, eps);
        } else {
          return box_premeasure(t.cloud, s, eps);
        }
      },
      target);
}

struct SweepEntry {
  double eps = 0.0;
  MeasureEstimate estimate;
};

struct ScaleSweep {
  std::vector<SweepEntry> entries;
  Trend trend = Trend::kUndetermined;

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.estimate.value);
    return v;
  }

  /// Values never decrease as eps decreases.
  bool is_monotone(double tol = kTolerance) const {
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (!approx_leq(entries[i - 1].estimate.value, entries[i].estimate.value, tol)) return false;
    }
    return true;
  }
};

inline ScaleSweep scale_sweep(const SweepTarget& target, double s, const ScaleSchedule& schedule,
                              const TrendThresholds& thresholds = {}, std::size_t threads = 1) {
  if (schedule.size() < 3) throw std::invalid_argument("a sweep needs at least 3 scales");
  auto estimates = parallel_map(
      schedule.size(), [&](std::size_t i) { return premeasure(target, s, schedule[i]); }, threads);
  ScaleSweep sweep;
  for (std::size_t i = 0; i < schedule.size(); ++i) sweep.entries.push_back({schedule[i], estimates[i]});
  const auto v = sweep.values();
  sweep.trend = classify_trend(v, thresholds);
  return sweep;
}

}  // namespace hausdorff_lab
