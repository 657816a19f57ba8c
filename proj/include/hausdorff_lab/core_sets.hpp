#pragma once

// Geometric set representations: 1-D interval sets, point clouds in R^d,
// explicit finite metric spaces, and similarity maps.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hausdorff_lab {

/// Absolute tolerance for comparisons on unit-scale data.
inline constexpr double kTolerance = 1e-12;

/// Subset of a finite ground set {0..n-1}, bit i set iff point i is a member.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxMaskBits = 32;

inline int popcount(Mask m) { return std::popcount(m); }
inline int lowest_index(Mask m) { return std::countr_zero(m); }

inline bool is_finite_number(double x) { return std::isfinite(x); }

// ---------------------------------------------------------------------------
// IntervalSet
// ---------------------------------------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A compact subset of R stored as sorted, strictly disjoint closed intervals.
/// Overlapping or touching input intervals are merged on construction.
class IntervalSet {
 public:
  IntervalSet() = default;

  explicit IntervalSet(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
      if (!is_finite_number(iv.lo) || !is_finite_number(iv.hi)) {
        throw std::invalid_argument("interval endpoints must be finite");
      }
      if (iv.lo > iv.hi) {
        throw std::invalid_argument("interval with lo > hi");
      }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) {
                return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    for (const auto& iv : intervals) {
      if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
        intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
      } else {
        intervals_.push_back(iv);
      }
    }
  }

  IntervalSet(std::initializer_list<Interval> intervals)
      : IntervalSet(std::vector<Interval>(intervals)) {}

  std::span<const Interval> intervals() const { return intervals_; }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  double lower() const { return intervals_.front().lo; }
  double upper() const { return intervals_.back().hi; }

  bool contains(double x) const {
    auto it = std::upper_bound(
        intervals_.begin(), intervals_.end(), x,
        [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return x <= it->hi;
  }

  /// True iff every interval of `other` lies inside one interval of *this.
  bool contains(const IntervalSet& other) const {
    for (const auto& iv : other.intervals_) {
      auto it = std::upper_bound(
          intervals_.begin(), intervals_.end(), iv.lo,
          [](double v, const Interval& x) { return v < x.lo; });
      if (it == intervals_.begin()) return false;
      --it;
      if (iv.hi > it->hi) return false;
    }
    return true;
  }

  IntervalSet united(const IntervalSet& other) const {
    std::vector<Interval> all(intervals_);
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return IntervalSet(std::move(all));
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

// ---------------------------------------------------------------------------
// PointCloud
// ---------------------------------------------------------------------------

/// Finite list of points in R^d, stored row-major.
class PointCloud {
 public:
  explicit PointCloud(std::size_t ambient_dim = 1) : dim_(ambient_dim) {
    if (dim_ == 0) throw std::invalid_argument("ambient dimension must be positive");
  }

  PointCloud(std::size_t ambient_dim, std::vector<double> coords)
      : dim_(ambient_dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw std::invalid_argument("ambient dimension must be positive");
    if (coords_.size() % dim_ != 0) {
      throw std::invalid_argument("coordinate count is not a multiple of the dimension");
    }
    for (double c : coords_) {
      if (!is_finite_number(c)) throw std::invalid_argument("point coordinates must be finite");
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  std::span<const double> coordinates() const { return coords_; }

  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  void push_back(std::span<const double> p) {
    if (p.size() != dim_) throw std::invalid_argument("point dimension mismatch");
    for (double c : p) {
      if (!is_finite_number(c)) throw std::invalid_argument("point coordinates must be finite");
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
  }
  void push_back(std::initializer_list<double> p) {
    push_back(std::span<const double>(p.begin(), p.size()));
  }

  /// Append all points of `other` (same dimension).
  void append(const PointCloud& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("point dimension mismatch");
    coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

inline double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// FiniteMetricSpace
// ---------------------------------------------------------------------------

/// Finite set {0..n-1} with an explicit distance matrix. The metric axioms
/// (zero diagonal, symmetry, non-negativity, triangle inequality) are checked
/// on construction.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  FiniteMetricSpace(std::size_t n, std::vector<double> dist) : n_(n), dist_(std::move(dist)) {
    if (dist_.size() != n_ * n_) throw std::invalid_argument("distance matrix must be n x n");
    for (std::size_t i = 0; i < n_; ++i) {
      if (at(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
      for (std::size_t j = 0; j < n_; ++j) {
        const double d = at(i, j);
        if (!is_finite_number(d) || d < 0.0) {
          throw std::invalid_argument("distances must be finite and non-negative");
        }
        if (d != at(j, i)) throw std::invalid_argument("distance matrix must be symmetric");
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
          if (at(i, k) > at(i, j) + at(j, k) + kTolerance * std::max(1.0, at(i, k))) {
            throw std::invalid_argument("triangle inequality violated at (" + std::to_string(i) +
                                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
          }
        }
      }
    }
  }

  static FiniteMetricSpace from_cloud(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = euclidean_distance(cloud.point(i), cloud.point(j));
        dist[i * n + j] = d;
        dist[j * n + i] = d;
      }
    }
    return FiniteMetricSpace(n, std::move(dist));
  }

  std::size_t size() const { return n_; }
  double distance(std::size_t i, std::size_t j) const { return at(i, j); }
  std::span<const double> matrix() const { return dist_; }

  Mask full_mask() const {
    if (n_ > kMaxMaskBits) throw std::out_of_range("space too large for mask subsets");
    return n_ == kMaxMaskBits ? ~Mask{0} : ((Mask{1} << n_) - 1);
  }

 private:
  double at(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

  std::size_t n_ = 0;
  std::vector<double> dist_;
};

// ---------------------------------------------------------------------------
// Similarity
// ---------------------------------------------------------------------------

/// f(x) = ratio * Q x + translation with Q orthogonal.
class Similarity {
 public:
  Similarity(double ratio, std::vector<double> orthogonal, std::vector<double> translation)
      : ratio_(ratio), q_(std::move(orthogonal)), t_(std::move(translation)) {
    const std::size_t d = t_.size();
    if (!(ratio_ > 0.0) || !is_finite_number(ratio_)) {
      throw std::invalid_argument("similarity ratio must be positive");
    }
    if (d == 0 || q_.size() != d * d) {
      throw std::invalid_argument("orthogonal part must be d x d with d = translation length");
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += q_[k * d + i] * q_[k * d + j];
        const double expected = (i == j) ? 1.0 : 0.0;
        if (std::abs(dot - expected) > kTolerance) {
          throw std::invalid_argument("orthogonal part is not orthogonal (Q^T Q != I)");
        }
      }
    }
  }

  /// x -> ratio * x + translation.
  static Similarity scaling(double ratio, std::vector<double> translation) {
    const std::size_t d = translation.size();
    std::vector<double> q(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) q[i * d + i] = 1.0;
    return Similarity(ratio, std::move(q), std::move(translation));
  }

  /// Planar rotation by `angle` radians, then scaling, then translation.
  static Similarity rotation2d(double ratio, double angle, double tx, double ty) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Similarity(ratio, {c, -s, s, c}, {tx, ty});
  }

  double ratio() const { return ratio_; }
  std::size_t dim() const { return t_.size(); }
  std::span<const double> orthogonal() const { return q_; }
  std::span<const double> translation() const { return t_; }

  void apply(std::span<const double> x, std::span<double> out) const {
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += q_[i * d + k] * x[k];
      out[i] = ratio_ * acc + t_[i];
    }
  }

  std::vector<double> operator()(std::span<const double> x) const {
    std::vector<double> out(dim());
    apply(x, out);
    return out;
  }

  /// The unique fixed point, solved by iteration (valid for ratio < 1).
  std::vector<double> fixed_point() const {
    if (!(ratio_ < 1.0)) throw std::domain_error("fixed point requires a contraction");
    std::vector<double> x(dim(), 0.0);
    std::vector<double> next(dim());
    for (int it = 0; it < 4096; ++it) {
      apply(x, next);
      if (euclidean_distance(x, next) == 0.0) break;
      x.swap(next);
    }
    return x;
  }

 private:
  double ratio_;
  std::vector<double> q_;
  std::vector<double> t_;
};

// ---------------------------------------------------------------------------
// diameter
// ---------------------------------------------------------------------------

inline double diameter(const IntervalSet& s) {
  return s.empty() ? 0.0 : s.upper() - s.lower();
}

inline double diameter(const PointCloud& c) {
  double best = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      best = std::max(best, euclidean_distance(c.point(i), c.point(j)));
    }
  }
  return best;
}

inline double diameter(const FiniteMetricSpace& space, Mask subset) {
  double best = 0.0;
  for (Mask a = subset; a; a &= a - 1) {
    const int i = lowest_index(a);
    for (Mask b = a & (a - 1); b; b &= b - 1) {
      best = std::max(best, space.distance(i, lowest_index(b)));
    }
  }
  return best;
}

/// Diameters of all 2^|ground| subsets of a finite space, indexed by mask.
inline std::vector<double> all_subset_diameters(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n > 24) throw std::out_of_range("subset diameter table limited to 24 points");
  std::vector<double> diam(std::size_t{1} << n, 0.0);
  for (std::size_t m = 1; m < diam.size(); ++m) {
    const Mask mask = static_cast<Mask>(m);
    const int low = lowest_index(mask);
    const Mask rest = mask & (mask - 1);
    double d = diam[rest];
    for (Mask r = rest; r; r &= r - 1) d = std::max(d, space.distance(low, lowest_index(r)));
    diam[m] = d;
  }
  return diam;
}

// ---------------------------------------------------------------------------
// set_distance
// ---------------------------------------------------------------------------

namespace detail {
[[noreturn]] inline void throw_empty_distance() {
  throw std::invalid_argument("undefined distance to empty set");
}
}  // namespace detail

inline double set_distance(const IntervalSet& e, const IntervalSet& f) {
  if (e.empty() || f.empty()) detail::throw_empty_distance();
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < e.size() && j < f.size()) {
    const Interval& a = e[i];
    const Interval& b = f[j];
    if (a.hi < b.lo) {
      best = std::min(best, b.lo - a.hi);
      ++i;
    } else if (b.hi < a.lo) {
      best = std::min(best, a.lo - b.hi);
      ++j;
    } else {
      return 0.0;
    }
  }
  return best;
}

inline double set_distance(const PointCloud& e, const PointCloud& f) {
  if (e.empty() || f.empty()) detail::throw_empty_distance();
  if (e.dim() != f.dim()) throw std::invalid_argument("point dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      best = std::min(best, euclidean_distance(e.point(i), f.point(j)));
    }
  }
  return best;
}

inline double set_distance(const FiniteMetricSpace& space, Mask e, Mask f) {
  if (e == 0 || f == 0) detail::throw_empty_distance();
  if (e & f) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (Mask a = e; a; a &= a - 1) {
    for (Mask b = f; b; b &= b - 1) {
      best = std::min(best, space.distance(lowest_index(a), lowest_index(b)));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// translate / scale / apply_similarity
// ---------------------------------------------------------------------------

inline IntervalSet translate(const IntervalSet& s, double v) {
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& iv : s.intervals()) out.push_back({iv.lo + v, iv.hi + v});
  return IntervalSet(std::move(out));
}

inline PointCloud translate(const PointCloud& c, std::span<const double> v) {
  if (v.size() != c.dim()) throw std::invalid_argument("translation dimension mismatch");
  std::vector<double> coords(c.coordinates().begin(), c.coordinates().end());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += v[i % c.dim()];
  return PointCloud(c.dim(), std::move(coords));
}

inline void require_positive_scale(double lambda) {
  if (!(lambda > 0.0) || !is_finite_number(lambda)) {
    throw std::invalid_argument("scale factor must be positive");
  }
}

inline IntervalSet scale(const IntervalSet& s, double lambda) {
  require_positive_scale(lambda);
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& iv : s.intervals()) out.push_back({lambda * iv.lo, lambda * iv.hi});
  return IntervalSet(std::move(out));
}

inline PointCloud scale(const PointCloud& c, double lambda) {
  require_positive_scale(lambda);
  std::vector<double> coords(c.coordinates().begin(), c.coordinates().end());
  for (double& x : coords) x *= lambda;
  return PointCloud(c.dim(), std::move(coords));
}

inline PointCloud apply_similarity(const PointCloud& c, const Similarity& f) {
  if (f.dim() != c.dim()) throw std::invalid_argument("similarity dimension mismatch");
  std::vector<double> coords(c.coordinates().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    f.apply(c.point(i), std::span<double>(coords).subspan(i * c.dim(), c.dim()));
  }
  return PointCloud(c.dim(), std::move(coords));
}

// ---------------------------------------------------------------------------
// lebesgue_length
// ---------------------------------------------------------------------------

/// Neumaier-compensated sum of the lengths.
inline double lebesgue_length(const IntervalSet& s) {
  double total = 0.0;
  double carry = 0.0;
  for (const auto& iv : s.intervals()) {
    const double x = iv.length();
    const double t = total + x;
    carry += std::abs(total) >= std::abs(x) ? (total - t) + x : (x - t) + total;
    total = t;
  }
  return total + carry;
}

}  // namespace hausdorff_lab
