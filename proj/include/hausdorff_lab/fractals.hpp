#pragma once

// Middle-thirds Cantor prefractals with exact triadic bookkeeping, iterated
// function systems of similarities, and attractor sampling.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hausdorff_lab/core_sets.hpp"

namespace hausdorff_lab {

// ---------------------------------------------------------------------------
// Exact rationals for triadic quantities
// ---------------------------------------------------------------------------

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline std::int64_t pow_int(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline constexpr int kMaxCantorDepth = 30;
inline constexpr int kMaxEndpointDepth = 20;

/// K_n as integer left endpoints over the common denominator 3^n; every
/// interval is [k / 3^n, (k + 1) / 3^n].
struct TriadicIntervals {
  int depth = 0;
  std::vector<std::int64_t> left;

  std::int64_t denominator() const { return pow_int(3, depth); }

  /// Total length, exactly.
  Rational length() const {
    return Rational::reduced(static_cast<std::int64_t>(left.size()), denominator());
  }
};

inline TriadicIntervals cantor_prefractal_exact(int n) {
  if (n < 0 || n > kMaxCantorDepth) {
    throw std::invalid_argument("cantor depth must be in [0, 30]");
  }
  TriadicIntervals k{0, {0}};
  for (int level = 0; level < n; ++level) {
    std::vector<std::int64_t> next;
    next.reserve(k.left.size() * 2);
    for (std::int64_t x : k.left) {
      next.push_back(3 * x);
      next.push_back(3 * x + 2);
    }
    k.left = std::move(next);
    k.depth = level + 1;
  }
  return k;
}

namespace detail {

struct Rounded {
  double value;
  double error;  // value - p / d
};

/// The correctly rounded p / d first, then its neighbour on the other side.
inline std::array<Rounded, 2> bracket(std::int64_t p, double d) {
  const double num = static_cast<double>(p);
  const double x0 = num / d;
  const double e0 = std::fma(x0, d, -num) / d;
  const double x1 = std::nextafter(x0, e0 > 0 ? -1.0 : 2.0);
  return {Rounded{x0, e0}, Rounded{x1, std::fma(x1, d, -num) / d}};
}

}  // namespace detail

/// K_n: 2^n closed intervals of length 3^-n.
///
/// Built level by level. Children keep their parent's outer endpoints, so
/// K_{n+1} is contained in K_n bitwise. Each new inner endpoint is one of the
/// two doubles around its exact value, chosen to keep the total length within
/// about an ulp of (2/3)^n; independent rounding drifts by ~1e-10 relative at
/// n = 20.
inline IntervalSet cantor_prefractal(int n) {
  if (n < 0 || n > kMaxCantorDepth) {
    throw std::invalid_argument("cantor depth must be in [0, 30]");
  }
  std::vector<Interval> cur{{0.0, 1.0}};
  std::vector<std::int64_t> left{0};
  double drift = 0.0;  // float total length minus exact total length
  for (int level = 1; level <= n; ++level) {
    const double den = static_cast<double>(pow_int(3, level));
    std::vector<Interval> next;
    std::vector<std::int64_t> next_left;
    next.reserve(cur.size() * 2);
    next_left.reserve(cur.size() * 2);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const auto a = detail::bracket(3 * left[i] + 1, den);
      const auto b = detail::bracket(3 * left[i] + 2, den);
      // [lo, a] and [b, hi] shift the total by error(a) - error(b).
      std::size_t ia = 0;
      std::size_t ib = 0;
      double best = std::abs(drift + a[0].error - b[0].error);
      for (std::size_t u = 0; u < 2; ++u) {
        for (std::size_t v = 0; v < 2; ++v) {
          const double d = std::abs(drift + a[u].error - b[v].error);
          if (d < best) {
            best = d;
            ia = u;
            ib = v;
          }
        }
      }
      drift += a[ia].error - b[ib].error;
      next.push_back({cur[i].lo, a[ia].value});
      next.push_back({b[ib].value, cur[i].hi});
      next_left.push_back(3 * left[i]);
      next_left.push_back(3 * left[i] + 2);
    }
    cur = std::move(next);
    left = std::move(next_left);
  }
  return IntervalSet(std::move(cur));
}

/// The 2^(n+1) endpoints of K_n as a sorted 1-D cloud.
inline PointCloud cantor_endpoints(int n) {
  if (n < 0 || n > kMaxEndpointDepth) throw std::invalid_argument("endpoint depth must be in [0, 20]");
  const auto k = cantor_prefractal_exact(n);
  const double den = static_cast<double>(k.denominator());
  std::vector<double> coords;
  coords.reserve(k.left.size() * 2);
  for (std::int64_t x : k.left) {
    coords.push_back(static_cast<double>(x) / den);
    coords.push_back(static_cast<double>(x + 1) / den);
  }
  return PointCloud(1, std::move(coords));
}

// ---------------------------------------------------------------------------
// IFS
// ---------------------------------------------------------------------------

/// A finite family of contracting similarities on R^d.
class IFS {
 public:
  explicit IFS(std::vector<Similarity> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw std::invalid_argument("an IFS needs at least one map");
    for (const auto& f : maps_) {
      if (!(f.ratio() < 1.0)) throw std::invalid_argument("IFS maps must contract (ratio < 1)");
      if (f.dim() != maps_.front().dim()) throw std::invalid_argument("IFS maps must share a dimension");
    }
  }

  std::span<const Similarity> maps() const { return maps_; }
  std::size_t dim() const { return maps_.front().dim(); }

  std::vector<double> ratios() const {
    std::vector<double> r;
    for (const auto& f : maps_) r.push_back(f.ratio());
    return r;
  }

  /// Built-ins: cantor, sierpinski-triangle, sierpinski-carpet, koch-points.
  static IFS preset(const std::string& name) {
    if (name == "cantor") {
      return IFS({Similarity::scaling(1.0 / 3.0, {0.0}), Similarity::scaling(1.0 / 3.0, {2.0 / 3.0})});
    }
    if (name == "sierpinski-triangle") {
      // Right-angled variant with vertices (0,0), (1,0), (0,1): its level-k
      // pieces sit in dyadic grid cells.
      return IFS({Similarity::scaling(0.5, {0.0, 0.0}), Similarity::scaling(0.5, {0.5, 0.0}),
                  Similarity::scaling(0.5, {0.0, 0.5})});
    }
    if (name == "sierpinski-carpet") {
      std::vector<Similarity> maps;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (i == 1 && j == 1) continue;
          maps.push_back(Similarity::scaling(1.0 / 3.0, {i / 3.0, j / 3.0}));
        }
      }
      return IFS(std::move(maps));
    }
    if (name == "koch-points") {
      const double a = std::numbers::pi / 3.0;
      return IFS({Similarity::scaling(1.0 / 3.0, {0.0, 0.0}),
                  Similarity::rotation2d(1.0 / 3.0, a, 1.0 / 3.0, 0.0),
                  Similarity::rotation2d(1.0 / 3.0, -a, 0.5, std::sqrt(3.0) / 6.0),
                  Similarity::scaling(1.0 / 3.0, {2.0 / 3.0, 0.0})});
    }
    throw std::invalid_argument("unknown preset: " + name);
  }

 private:
  std::vector<Similarity> maps_;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"cantor", "sierpinski-triangle", "sierpinski-carpet",
                                              "koch-points"};
  return names;
}

inline constexpr double kMaxDeterministicPoints = 1e7;

/// Applies every map to every point, `iterations` times. Output order is
/// map-major: all images under map 0, then map 1, and so on.
inline PointCloud ifs_deterministic(const IFS& ifs, const PointCloud& seed, int iterations) {
  if (seed.empty()) throw std::invalid_argument("seed cloud must be non-empty");
  if (iterations < 0) throw std::invalid_argument("iterations must be non-negative");
  if (seed.dim() != ifs.dim()) throw std::invalid_argument("seed dimension mismatch");
  const double total = std::pow(static_cast<double>(ifs.maps().size()), iterations) *
                       static_cast<double>(seed.size());
  if (total > kMaxDeterministicPoints) throw std::invalid_argument("deterministic IFS output exceeds 1e7 points");
  PointCloud current = seed;
  for (int it = 0; it < iterations; ++it) {
    PointCloud next(ifs.dim());
    next.reserve(current.size() * ifs.maps().size());
    for (const auto& f : ifs.maps()) next.append(apply_similarity(current, f));
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// chaos game
// ---------------------------------------------------------------------------

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the output is the state
/// mixed by xor-shift 30/27/31 with multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform index in [0, bound): high 64 bits of next() * bound.
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

inline constexpr int kDefaultBurnIn = 32;

/// x <- f_i(x) from the origin with i drawn uniformly; the first burn_in
/// iterates are discarded. Same seed, same cloud.
inline PointCloud chaos_game(const IFS& ifs, std::size_t n_points, std::uint64_t rng_seed,
                             int burn_in = kDefaultBurnIn) {
  if (n_points == 0) throw std::invalid_argument("n_points must be positive");
  if (burn_in < 0) throw std::invalid_argument("burn_in must be non-negative");
  SplitMix64 rng(rng_seed);
  const std::size_t d = ifs.dim();
  std::vector<double> x(d, 0.0);
  std::vector<double> y(d);
  std::vector<double> coords;
  coords.reserve(n_points * d);
  const auto maps = ifs.maps();
  for (std::size_t step = 0; step < n_points + static_cast<std::size_t>(burn_in); ++step) {
    maps[rng.below(maps.size())].apply(x, y);
    x.swap(y);
    if (step >= static_cast<std::size_t>(burn_in)) coords.insert(coords.end(), x.begin(), x.end());
  }
  return PointCloud(d, std::move(coords));
}

}  // namespace hausdorff_lab
