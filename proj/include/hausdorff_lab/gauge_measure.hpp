#pragma once

// Outer measures on finite ground sets built from a gauge (a cover family U
// with weights delta), exact minimum-cost covers, and checkers for the
// outer-measure axioms, metric additivity and Caratheodory measurability.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hausdorff_lab/core_sets.hpp"

namespace hausdorff_lab {

/// +infinity of the extended reals [0, +inf]. IEEE infinity already absorbs
/// min and + the way the extended reals do.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exact subset dynamic programs are limited to this many points.
inline constexpr std::size_t kMaxExactPoints = 20;

/// a == b within a tolerance scaled by magnitude; +inf only equals +inf.
inline bool approx_equal(double a, double b, double tol = kTolerance) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// a <= b within a tolerance scaled by magnitude.
inline bool approx_leq(double a, double b, double tol = kTolerance) {
  if (std::isinf(b)) return true;
  if (std::isinf(a)) return false;
  return a <= b + tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::string mask_to_hex(Mask m) {
  std::ostringstream os;
  os << std::hex << m;
  return os.str();
}

// ---------------------------------------------------------------------------
// Gauge
// ---------------------------------------------------------------------------

struct GaugeBlock {
  Mask members = 0;
  double weight = 0.0;
};

/// A cover family of a finite ground set together with a non-negative
/// weight per block.
class Gauge {
 public:
  Gauge(std::size_t ground_size, std::vector<GaugeBlock> blocks)
      : n_(ground_size), blocks_(std::move(blocks)) {
    if (n_ > kMaxMaskBits) throw std::invalid_argument("gauge ground set limited to 32 points");
    const Mask full = full_mask();
    Mask covered = 0;
    for (const auto& b : blocks_) {
      if (b.members & ~full) throw std::invalid_argument("gauge block outside the ground set");
      if (std::isnan(b.weight) || b.weight < 0.0) {
        throw std::invalid_argument("gauge weights must be non-negative");
      }
      if (b.members == 0 && b.weight != 0.0) {
        throw std::invalid_argument("the empty block must have weight 0");
      }
      covered |= b.members;
    }
    if (covered != full) throw std::invalid_argument("gauge blocks do not cover the ground set");
  }

  std::size_t ground_size() const { return n_; }
  std::span<const GaugeBlock> blocks() const { return blocks_; }
  Mask full_mask() const {
    return n_ == kMaxMaskBits ? ~Mask{0} : static_cast<Mask>((std::uint64_t{1} << n_) - 1);
  }

 private:
  std::size_t n_;
  std::vector<GaugeBlock> blocks_;
};

// ---------------------------------------------------------------------------
// OuterMeasureTable
// ---------------------------------------------------------------------------

/// A set function on all 2^n subsets, indexed by mask. Construction only
/// checks the shape; the axioms are checked by verify_outer_measure.
class OuterMeasureTable {
 public:
  OuterMeasureTable(std::size_t ground_size, std::vector<double> values)
      : n_(ground_size), values_(std::move(values)) {
    if (n_ > kMaxExactPoints) throw std::invalid_argument("table ground set limited to 20 points");
    if (values_.size() != (std::size_t{1} << n_)) {
      throw std::invalid_argument("table must hold 2^n values");
    }
    for (double v : values_) {
      if (std::isnan(v)) throw std::invalid_argument("table values must not be NaN");
    }
  }

  std::size_t ground_size() const { return n_; }
  std::size_t subset_count() const { return values_.size(); }
  Mask full_mask() const { return static_cast<Mask>(values_.size() - 1); }
  double operator[](Mask a) const { return values_[a]; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

struct Cover {
  std::vector<Mask> blocks;
  double total_cost = 0.0;
};

// ---------------------------------------------------------------------------
// construct_outer_measure
// ---------------------------------------------------------------------------

namespace detail {

inline void require_exact_size(std::size_t n) {
  if (n > kMaxExactPoints) throw std::invalid_argument("exact construction limited to 20 points");
}

/// best[S] = min over blocks X containing the lowest element of S of
/// weight(X) + best[S \ X]. Every block that meets S must meet the lowest
/// element eventually, so branching on it loses no cover.
inline std::vector<double> min_cover_costs(const Gauge& gauge) {
  const std::size_t n = gauge.ground_size();
  require_exact_size(n);
  std::vector<std::vector<std::size_t>> by_element(n);
  const auto blocks = gauge.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Mask m = blocks[b].members; m; m &= m - 1) by_element[lowest_index(m)].push_back(b);
  }
  std::vector<double> best(std::size_t{1} << n, kInfinity);
  best[0] = 0.0;
  for (std::size_t s = 1; s < best.size(); ++s) {
    const Mask set = static_cast<Mask>(s);
    double value = kInfinity;
    for (std::size_t b : by_element[lowest_index(set)]) {
      value = std::min(value, blocks[b].weight + best[set & ~blocks[b].members]);
    }
    best[s] = value;
  }
  return best;
}

}  // namespace detail

inline OuterMeasureTable construct_outer_measure(const Gauge& gauge) {
  return OuterMeasureTable(gauge.ground_size(), detail::min_cover_costs(gauge));
}

/// A minimum-cost cover of `target`. Among optimal choices the block with the
/// smallest mask is taken at each step, so the witness is reproducible.
inline Cover optimal_cover(const Gauge& gauge, Mask target) {
  if (target & ~gauge.full_mask()) throw std::invalid_argument("target outside the ground set");
  const auto best = detail::min_cover_costs(gauge);
  std::vector<GaugeBlock> sorted(gauge.blocks().begin(), gauge.blocks().end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const GaugeBlock& a, const GaugeBlock& b) { return a.members < b.members; });
  Cover cover;
  cover.total_cost = best[target];
  if (std::isinf(cover.total_cost)) return cover;
  Mask rest = target;
  while (rest) {
    const Mask low = Mask{1} << lowest_index(rest);
    bool found = false;
    for (const auto& b : sorted) {
      if ((b.members & low) && b.weight + best[rest & ~b.members] == best[rest]) {
        cover.blocks.push_back(b.members);
        rest &= ~b.members;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("cover reconstruction failed");
  }
  return cover;
}

// ---------------------------------------------------------------------------
// verify_outer_measure
// ---------------------------------------------------------------------------

enum class Axiom { kEmptySet, kMonotone, kSubadditive };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::kEmptySet: return "empty-set";
    case Axiom::kMonotone: return "monotone";
    case Axiom::kSubadditive: return "subadditive";
  }
  return "?";
}

struct AxiomViolation {
  Axiom axiom;
  Mask a = 0;
  Mask b = 0;
  double lhs = 0.0;
  double rhs = 0.0;

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (axiom) {
      case Axiom::kEmptySet:
        os << "mu(empty) = " << lhs << " != 0";
        break;
      case Axiom::kMonotone:
        os << "mu(" << mask_to_hex(a) << ") = " << lhs << " > mu(" << mask_to_hex(b)
           << ") = " << rhs << " although " << mask_to_hex(a) << " is a subset of "
           << mask_to_hex(b);
        break;
      case Axiom::kSubadditive:
        os << "mu(" << mask_to_hex(a | b) << ") = " << lhs << " > mu(" << mask_to_hex(a)
           << ") + mu(" << mask_to_hex(b) << ") = " << rhs;
        break;
    }
    return os.str();
  }
};

struct OuterMeasureReport {
  bool ok = true;
  std::vector<AxiomViolation> violations;
};

/// Checks mu(empty) = 0, monotonicity and subadditivity.
///
/// Monotonicity is checked on the covering pairs A < A + {i}, which implies
/// it for all comparable pairs. Subadditivity is checked on disjoint pairs;
/// for a monotone table mu(A u B) <= mu(A) + mu(B \ A) <= mu(A) + mu(B), so
/// disjoint pairs decide the general case.
inline OuterMeasureReport verify_outer_measure(const OuterMeasureTable& table,
                                               std::size_t max_violations = 64) {
  OuterMeasureReport report;
  auto add = [&](AxiomViolation v) {
    report.ok = false;
    if (report.violations.size() < max_violations) report.violations.push_back(v);
  };
  if (table[0] != 0.0) add({Axiom::kEmptySet, 0, 0, table[0], 0.0});

  const std::size_t n = table.ground_size();
  const Mask full = table.full_mask();
  for (std::size_t s = 0; s < table.subset_count(); ++s) {
    const Mask a = static_cast<Mask>(s);
    for (std::size_t i = 0; i < n; ++i) {
      const Mask bit = Mask{1} << i;
      if (a & bit) continue;
      if (!approx_leq(table[a], table[a | bit])) {
        add({Axiom::kMonotone, a, a | bit, table[a], table[a | bit]});
      }
    }
  }
  for (std::size_t s = 1; s < table.subset_count(); ++s) {
    const Mask a = static_cast<Mask>(s);
    const Mask rest = full & ~a;
    // Each unordered disjoint pair once: B ranges over non-empty submasks of
    // the complement with B > A.
    for (Mask b = rest; b; b = (b - 1) & rest) {
      if (b < a) continue;
      const double lhs = table[a | b];
      const double rhs = table[a] + table[b];
      if (!approx_leq(lhs, rhs)) add({Axiom::kSubadditive, a, b, lhs, rhs});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// is_metric_outer
// ---------------------------------------------------------------------------

/// True iff mu(E u F) = mu(E) + mu(F) for every pair of non-empty disjoint
/// subsets at positive distance.
inline bool is_metric_outer(const OuterMeasureTable& table, const FiniteMetricSpace& space) {
  if (table.ground_size() != space.size()) {
    throw std::invalid_argument("table and space sizes differ");
  }
  const std::size_t n = space.size();
  const std::size_t count = table.subset_count();
  // to_point[E * n + j] = min distance from point j to the set E.
  std::vector<double> to_point(count * n, kInfinity);
  for (std::size_t s = 1; s < count; ++s) {
    const Mask e = static_cast<Mask>(s);
    const int low = lowest_index(e);
    const Mask rest = e & (e - 1);
    for (std::size_t j = 0; j < n; ++j) {
      to_point[s * n + j] = std::min(to_point[rest * n + j], space.distance(low, j));
    }
  }
  const Mask full = table.full_mask();
  for (std::size_t s = 1; s < count; ++s) {
    const Mask e = static_cast<Mask>(s);
    const Mask rest = full & ~e;
    for (Mask f = rest; f; f = (f - 1) & rest) {
      if (f < e) continue;
      double gap = kInfinity;
      for (Mask r = f; r; r &= r - 1) gap = std::min(gap, to_point[s * n + lowest_index(r)]);
      if (!(gap > 0.0)) continue;
      if (!approx_equal(table[e | f], table[e] + table[f])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Caratheodory measurability
// ---------------------------------------------------------------------------

/// True iff mu(A) = mu(A n B) + mu(A \ B) for every test set A.
inline bool is_measurable(const OuterMeasureTable& table, Mask b) {
  const Mask full = table.full_mask();
  if (b & ~full) throw std::invalid_argument("subset outside the ground set");
  for (std::size_t s = 0; s < table.subset_count(); ++s) {
    const Mask a = static_cast<Mask>(s);
    if (!approx_equal(table[a], table[a & b] + table[a & ~b])) return false;
  }
  return true;
}

struct MeasurableFamily {
  std::vector<Mask> members;
  bool sigma_algebra_ok = false;
  bool additive_ok = false;
};

/// All measurable sets, plus checks that they form a sigma-algebra (finite
/// ground set: complement and pairwise union suffice) on which the table is
/// additive.
inline MeasurableFamily measurable_family(const OuterMeasureTable& table) {
  MeasurableFamily family;
  const Mask full = table.full_mask();
  std::vector<char> member(table.subset_count(), 0);
  for (std::size_t s = 0; s < table.subset_count(); ++s) {
    if (is_measurable(table, static_cast<Mask>(s))) {
      member[s] = 1;
      family.members.push_back(static_cast<Mask>(s));
    }
  }
  bool sigma = member[0] != 0;
  bool additive = true;
  for (Mask b1 : family.members) {
    if (!member[full & ~b1]) sigma = false;
    for (Mask b2 : family.members) {
      if (b2 < b1) continue;
      if (!member[b1 | b2]) sigma = false;
      if ((b1 & b2) == 0 && !approx_equal(table[b1 | b2], table[b1] + table[b2])) {
        additive = false;
      }
    }
  }
  family.sigma_algebra_ok = sigma;
  family.additive_ok = additive;
  return family;
}

}  // namespace hausdorff_lab
