#pragma once

// Property suites over seeded random instances. Each suite returns one
// result per property, with a counterexample description on failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hausdorff_lab/core_sets.hpp"
#include "hausdorff_lab/dimension.hpp"
#include "hausdorff_lab/fractals.hpp"
#include "hausdorff_lab/gauge_measure.hpp"
#include "hausdorff_lab/hausdorff.hpp"

namespace hausdorff_lab::verify {

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Deterministic uniform draws on top of SplitMix64.
class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_.next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  std::size_t index(std::size_t bound) { return gen_.below(bound); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + gen_.below(hi - lo + 1); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

 private:
  SplitMix64 gen_;
};

/// Random blocks with random weights; one block covering everything is
/// always present so the family covers the ground set.
inline Gauge random_gauge(Random& rng, std::size_t n) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  std::vector<GaugeBlock> blocks;
  if (rng.coin()) blocks.push_back({0, 0.0});
  blocks.push_back({full, rng.uniform(0.0, 4.0)});
  const std::size_t extra = rng.between(1, 2 * n);
  for (std::size_t i = 0; i < extra; ++i) {
    Mask m = 0;
    while (m == 0) m = static_cast<Mask>(rng.index(std::size_t{1} << n));
    double w = rng.coin(0.5) ? static_cast<double>(rng.between(0, 4)) : rng.uniform(0.0, 3.0);
    if (rng.coin(0.05)) w = kInfinity;
    blocks.push_back({m, w});
  }
  return Gauge(n, std::move(blocks));
}

inline PointCloud random_cloud(Random& rng, std::size_t n, std::size_t dim, double extent = 1.0) {
  std::vector<double> coords(n * dim);
  for (double& c : coords) c = rng.uniform(0.0, extent);
  return PointCloud(dim, std::move(coords));
}

/// Euclidean distances of random points in R^1..R^3, so the metric axioms
/// hold by construction.
inline FiniteMetricSpace random_metric_space(Random& rng, std::size_t n) {
  return FiniteMetricSpace::from_cloud(random_cloud(rng, n, rng.between(1, 3)));
}

/// `count` disjoint intervals inside [0, extent].
inline IntervalSet random_interval_set(Random& rng, std::size_t count, double extent = 1.0) {
  std::vector<double> cuts(2 * count);
  for (double& c : cuts) c = rng.uniform(0.0, extent);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < count; ++i) {
    // Occasional degenerate intervals.
    const double hi = rng.coin(0.1) ? cuts[2 * i] : cuts[2 * i + 1];
    ivs.push_back({cuts[2 * i], hi});
  }
  return IntervalSet(std::move(ivs));
}

/// Intervals with endpoints on the grid k / 2^10 inside [0, 4]; sums and
/// differences of such values are exact.
inline IntervalSet random_dyadic_interval_set(Random& rng, std::size_t count) {
  std::vector<std::size_t> cuts(2 * count);
  for (auto& c : cuts) c = rng.between(0, 4096);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < count; ++i) {
    ivs.push_back({std::ldexp(static_cast<double>(cuts[2 * i]), -10),
                   std::ldexp(static_cast<double>(cuts[2 * i + 1]), -10)});
  }
  return IntervalSet(std::move(ivs));
}

inline double min_pairwise_distance(const FiniteMetricSpace& space) {
  double best = kInfinity;
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) best = std::min(best, space.distance(i, j));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

struct SuiteOptions {
  std::size_t n = 6;
  std::size_t trials = 50;
  std::uint64_t seed = 7;
  int depth = 8;
};

namespace detail {

/// Accumulates cases for one property; the first failure is kept.
class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = describe();
    }
  }

  PropertyResult done() const { return result_; }

 private:
  PropertyResult result_;
};

inline std::string describe(const Gauge& g) {
  std::ostringstream os;
  os.precision(17);
  os << "gauge n=" << g.ground_size() << " blocks=[";
  for (const auto& b : g.blocks()) os << mask_to_hex(b.members) << ":" << b.weight << " ";
  os << "]";
  return os.str();
}

inline std::string describe(const IntervalSet& s) {
  std::ostringstream os;
  os.precision(17);
  os << "{";
  for (const auto& iv : s.intervals()) os << "[" << iv.lo << "," << iv.hi << "]";
  os << "}";
  return os.str();
}

inline std::string describe(const PointCloud& c) {
  std::ostringstream os;
  os.precision(17);
  os << "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << "(";
    for (std::size_t k = 0; k < c.dim(); ++k) os << (k ? "," : "") << c.point(i)[k];
    os << ")";
  }
  os << "}";
  return os.str();
}

inline std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// The set function equal to 0 on the empty set and 1 elsewhere, as the
/// gauge {empty, X} with weight 1 on X.
inline Gauge phi_gauge(std::size_t n) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  return Gauge(n, {{0, 0.0}, {full, 1.0}});
}

/// All singletons with weight 1; the constructed measure counts points.
inline Gauge counting_gauge(std::size_t n) {
  std::vector<GaugeBlock> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back({Mask{1} << i, 1.0});
  return Gauge(n, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Axiom report for a given table, one line per axiom.
inline std::vector<PropertyResult> check_table_axioms(const OuterMeasureTable& table) {
  const auto report = verify_outer_measure(table, 1u << 20);
  std::vector<PropertyResult> out;
  for (Axiom a : {Axiom::kEmptySet, Axiom::kMonotone, Axiom::kSubadditive}) {
    PropertyResult r{std::string("table ") + to_string(a), true, 1, ""};
    std::size_t count = 0;
    for (const auto& v : report.violations) {
      if (v.axiom != a) continue;
      if (count == 0) r.counterexample = v.describe();
      ++count;
    }
    if (count > 0) {
      r.passed = false;
      r.counterexample += " (" + std::to_string(count) + " violations)";
    }
    out.push_back(r);
  }
  return out;
}

inline std::vector<PropertyResult> axioms_suite(const SuiteOptions& opt) {
  Random rng(opt.seed);
  detail::Check constructed("constructed measures satisfy the outer-measure axioms");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto g = random_gauge(rng, rng.between(1, std::max<std::size_t>(1, opt.n)));
    const auto report = verify_outer_measure(construct_outer_measure(g));
    constructed.expect(report.ok, [&] {
      return detail::describe(g) + ": " + report.violations.front().describe();
    });
  }
  detail::Check phi("phi: 0 on the empty set, 1 elsewhere");
  for (std::size_t n = 1; n <= std::max<std::size_t>(1, opt.n); ++n) {
    const auto t = construct_outer_measure(phi_gauge(n));
    bool ok = t[0] == 0.0;
    for (std::size_t s = 1; s < t.subset_count(); ++s) ok = ok && t[static_cast<Mask>(s)] == 1.0;
    phi.expect(ok, [n] { return "n=" + std::to_string(n); });
  }
  detail::Check negative("corrupted tables are rejected");
  {
    const auto base = construct_outer_measure(counting_gauge(3));
    std::vector<double> values(base.values().begin(), base.values().end());
    values[0] = 1.0;
    negative.expect(!verify_outer_measure(OuterMeasureTable(3, values)).ok,
                    [] { return "mu(empty)=1 accepted"; });
    values[0] = 0.0;
    values[7] = 0.5;
    negative.expect(!verify_outer_measure(OuterMeasureTable(3, values)).ok,
                    [] { return "non-monotone table accepted"; });
  }
  return {constructed.done(), phi.done(), negative.done()};
}

inline std::vector<PropertyResult> caratheodory_suite(const SuiteOptions& opt) {
  Random rng(opt.seed);
  detail::Check sigma("measurable sets form a sigma-algebra with additive restriction");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto g = random_gauge(rng, rng.between(1, std::max<std::size_t>(1, opt.n)));
    const auto fam = measurable_family(construct_outer_measure(g));
    sigma.expect(fam.sigma_algebra_ok && fam.additive_ok, [&] {
      return detail::describe(g) + ": sigma=" + std::to_string(fam.sigma_algebra_ok) +
             " additive=" + std::to_string(fam.additive_ok);
    });
  }
  detail::Check phi("phi on two points: only the empty set and X are measurable");
  {
    const auto fam = measurable_family(construct_outer_measure(phi_gauge(2)));
    phi.expect(fam.members == std::vector<Mask>{0, 3} && fam.sigma_algebra_ok && fam.additive_ok,
               [&] { return "members count " + std::to_string(fam.members.size()); });
  }
  detail::Check counting("counting measure: every subset is measurable");
  for (std::size_t n = 1; n <= std::max<std::size_t>(1, opt.n); ++n) {
    const auto fam = measurable_family(construct_outer_measure(counting_gauge(n)));
    counting.expect(fam.members.size() == (std::size_t{1} << n),
                    [n] { return "n=" + std::to_string(n); });
  }
  return {sigma.done(), phi.done(), counting.done()};
}

inline std::vector<PropertyResult> metric_suite(const SuiteOptions& opt) {
  Random rng(opt.seed);
  const std::size_t max_n = std::clamp<std::size_t>(opt.n, 1, 7);
  detail::Check metric("Hausdorff gauges below the minimum gap are metric, all sets measurable");
  detail::Check implication("metric outer measure implies every subset measurable");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto space = random_metric_space(rng, rng.between(1, max_n));
    const double gap = space.size() > 1 ? min_pairwise_distance(space) : 1.0;
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
      for (double f : {0.5, 0.9}) {
        const auto table = construct_outer_measure(hausdorff_gauge(space, s, f * gap));
        const bool is_metric = is_metric_outer(table, space);
        const auto fam = measurable_family(table);
        const bool all = fam.members.size() == table.subset_count();
        metric.expect(is_metric && all, [&] {
          return "n=" + std::to_string(space.size()) + " s=" + detail::num(s) +
                 " eps=" + detail::num(f * gap);
        });
      }
      // Coarse scales: the pre-measure need not be metric, but when it is,
      // every subset must be measurable.
      const double eps = rng.uniform(0.0, 2.0);
      const auto table = construct_outer_measure(hausdorff_gauge(space, s, std::max(eps, 1e-6)));
      if (is_metric_outer(table, space)) {
        implication.expect(measurable_family(table).members.size() == table.subset_count(),
                           [&] { return "n=" + std::to_string(space.size()) + " s=" + detail::num(s); });
      }
    }
  }
  return {metric.done(), implication.done()};
}

inline std::vector<PropertyResult> hausdorff_props_suite(const SuiteOptions& opt) {
  Random rng(opt.seed);
  std::vector<PropertyResult> out;

  detail::Check scale_mono("pre-measure is non-increasing in eps");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto set = random_interval_set(rng, rng.between(1, 6));
    const double s = rng.uniform(0.05, 1.0);
    const auto sweep = scale_sweep(set, s, ScaleSchedule::geometric(rng.uniform(0.2, 1.0), 0.6, 8));
    scale_mono.expect(sweep.is_monotone(1e-12), [&] { return detail::describe(set) + " s=" + detail::num(s); });
    const auto cloud = random_cloud(rng, rng.between(1, 7), 2);
    const auto fsweep = scale_sweep(finite_target(cloud), 0.0, ScaleSchedule::geometric(1.0, 0.5, 6));
    scale_mono.expect(fsweep.is_monotone(0.0), [&] { return detail::describe(cloud); });
  }
  out.push_back(scale_mono.done());

  detail::Check set_mono("A subset of B implies H(A) <= H(B)");
  detail::Check subadd("H(A u B) <= H(A) + H(B)");
  detail::Check sep_add("d(A,B) > eps implies H(A u B) = H(A) + H(B)");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto a = random_interval_set(rng, rng.between(1, 4));
    const auto b = random_interval_set(rng, rng.between(1, 4));
    const auto u = a.united(b);
    const double s = rng.uniform(0.05, 1.0);
    const double eps = rng.uniform(0.01, 0.5);
    const double ha = premeasure_intervals(a, s, eps).value;
    const double hb = premeasure_intervals(b, s, eps).value;
    const double hu = premeasure_intervals(u, s, eps).value;
    set_mono.expect(approx_leq(ha, hu) && approx_leq(hb, hu),
                    [&] { return detail::describe(a) + " within " + detail::describe(u); });
    subadd.expect(approx_leq(hu, ha + hb), [&] { return detail::describe(a) + " + " + detail::describe(b); });
    const auto shifted = translate(b, a.upper() + eps * rng.uniform(1.01, 3.0) - b.lower());
    const double hs = premeasure_intervals(shifted, s, eps).value;
    const double hj = premeasure_intervals(a.united(shifted), s, eps).value;
    sep_add.expect(approx_equal(hj, ha + hs),
                   [&] { return detail::describe(a) + " + " + detail::describe(shifted) + " eps=" + detail::num(eps); });
  }
  out.push_back(set_mono.done());
  out.push_back(subadd.done());
  out.push_back(sep_add.done());

  detail::Check transl("translation invariance (exact on dyadic data)");
  detail::Check dilation("H(lambda A) at lambda eps = lambda^s H(A) at eps");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto set = random_dyadic_interval_set(rng, rng.between(1, 5));
    const double shift = std::ldexp(static_cast<double>(rng.between(0, 8192)), -10) - 4.0;
    const double eps = std::ldexp(static_cast<double>(rng.between(1, 512)), -10);
    const double s = rng.uniform(0.05, 1.0);
    const double h = premeasure_intervals(set, s, eps).value;
    transl.expect(premeasure_intervals(translate(set, shift), s, eps).value == h,
                  [&] { return detail::describe(set) + " shift=" + detail::num(shift); });
    const double lambda = rng.uniform(0.1, 10.0);
    const double hl = premeasure_intervals(scale(set, lambda), s, lambda * eps).value;
    dilation.expect(approx_equal(hl, std::pow(lambda, s) * h, 1e-9),
                    [&] { return detail::describe(set) + " lambda=" + detail::num(lambda); });
  }
  out.push_back(transl.done());
  out.push_back(dilation.done());

  detail::Check similarity("similarity of ratio r: H(f A) at r eps = r^s H(A) at eps");
  detail::Check lipschitz("k-Lipschitz f: H(f A) at k eps <= k^s H(A) at eps");
  // Finite sets have H^s_eps = 0 for s > 0, so clouds only carry the s = 0
  // case; interval sets carry the rest.
  auto image_of = [](const IntervalSet& set, auto f) {
    std::vector<Interval> out;
    for (const auto& iv : set.intervals()) {
      const double a = f(iv.lo);
      const double b = f(iv.hi);
      out.push_back({std::min(a, b), std::max(a, b)});
    }
    return IntervalSet(std::move(out));
  };
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto set = random_interval_set(rng, rng.between(1, 6));
    const double r = rng.uniform(0.25, 4.0);
    const Similarity f(r, {rng.coin(0.5) ? 1.0 : -1.0}, {rng.uniform(-2, 2)});
    const double eps = rng.uniform(0.01, 0.5);
    const double s = rng.uniform(0.05, 1.0);
    const double h = premeasure_intervals(set, s, eps).value;
    const auto fa = image_of(set, [&](double x) { return f(std::vector<double>{x})[0]; });
    similarity.expect(approx_equal(premeasure_intervals(fa, s, r * eps).value, std::pow(r, s) * h, 1e-9),
                      [&] { return detail::describe(set) + " r=" + detail::num(r) + " s=" + detail::num(s); });

    const double k = rng.uniform(0.2, 3.0);
    // Increasing with slope in [0.54 k, k].
    const auto ga = image_of(set, [k](double x) { return k * (x + 0.3 * std::sin(x)) / 1.3; });
    lipschitz.expect(approx_leq(premeasure_intervals(ga, s, k * eps).value, std::pow(k, s) * h),
                     [&] { return detail::describe(set) + " k=" + detail::num(k) + " s=" + detail::num(s); });

    const auto cloud = random_cloud(rng, rng.between(1, 8), 2);
    const auto g = Similarity::rotation2d(r, rng.uniform(0.0, 2 * std::numbers::pi), rng.uniform(-1, 1),
                                          rng.uniform(-1, 1));
    const double count = premeasure_finite(cloud, 0.0, eps).value;
    similarity.expect(premeasure_finite(apply_similarity(cloud, g), 0.0, r * eps).value == count,
                      [&] { return detail::describe(cloud) + " r=" + detail::num(r); });
    // x -> k (sin x1, sin x2) is k-Lipschitz.
    std::vector<double> coords(cloud.coordinates().begin(), cloud.coordinates().end());
    for (double& c : coords) c = k * std::sin(c);
    lipschitz.expect(premeasure_finite(PointCloud(2, coords), 0.0, k * eps).value <= count,
                     [&] { return detail::describe(cloud) + " k=" + detail::num(k); });
  }
  out.push_back(similarity.done());
  out.push_back(lipschitz.done());

  detail::Check critical("s > d implies H^s_eps <= eps^(s-d) H^d_eps");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto set = random_interval_set(rng, rng.between(1, 6));
    const double d = rng.uniform(0.05, 0.95);
    const double s = rng.uniform(d, 1.0);
    const double eps = rng.uniform(0.001, 0.5);
    const double lhs = premeasure_intervals(set, s, eps).value;
    const double rhs = std::pow(eps, s - d) * premeasure_intervals(set, d, eps).value;
    critical.expect(approx_leq(lhs, rhs), [&] {
      return detail::describe(set) + " d=" + detail::num(d) + " s=" + detail::num(s) + " eps=" + detail::num(eps);
    });
    const auto cloud = random_cloud(rng, rng.between(1, 8), 2);
    const double fd = rng.uniform(0.0, 1.0);
    const double fs = rng.uniform(fd, 2.0);
    critical.expect(approx_leq(premeasure_finite(cloud, fs, eps).value,
                               std::pow(eps, fs - fd) * premeasure_finite(cloud, fd, eps).value),
                    [&] { return detail::describe(cloud); });
  }
  out.push_back(critical.done());

  detail::Check counting("H^0 below the minimum gap counts points");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto cloud = random_cloud(rng, rng.between(1, 12), rng.between(1, 3));
    const auto space = FiniteMetricSpace::from_cloud(cloud);
    const double gap = cloud.size() > 1 ? min_pairwise_distance(space) : 1.0;
    counting.expect(premeasure_finite(cloud, 0.0, 0.5 * gap).value == counting_measure(cloud),
                    [&] { return detail::describe(cloud); });
  }
  out.push_back(counting.done());

  detail::Check length("H^1 of [0,1] at eps = 1/k is 1");
  for (int k = 2; k <= 256; ++k) {
    const double h = premeasure_intervals(IntervalSet{{0.0, 1.0}}, 1.0, 1.0 / k).value;
    length.expect(std::abs(h - 1.0) <= 1e-12, [&] { return "k=" + std::to_string(k) + " value=" + detail::num(h); });
  }
  out.push_back(length.done());
  return out;
}

inline std::vector<PropertyResult> dimension_props_suite(const SuiteOptions& opt) {
  Random rng(opt.seed);
  std::vector<PropertyResult> out;

  detail::Check closed_form("equal ratios: moran dimension = ln m / ln(1/r)");
  for (std::size_t m = 1; m <= 8; ++m) {
    for (double r : {0.5, 1.0 / 3.0, 0.25}) {
      const std::vector<double> ratios(m, r);
      const double got = moran_dimension(ratios).value;
      const double want = std::log(static_cast<double>(m)) / std::log(1.0 / r);
      closed_form.expect(std::abs(got - want) <= 1e-12,
                         [&] { return "m=" + std::to_string(m) + " r=" + detail::num(r); });
    }
  }
  out.push_back(closed_form.done());

  detail::Check residual("moran residual <= 1e-12 with a certified bracket");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    std::vector<double> ratios(rng.between(2, 6));
    for (double& r : ratios) r = rng.uniform(0.05, 0.9);
    const auto est = moran_dimension(ratios);
    const auto& d = std::get<MoranDiagnostics>(est.diagnostics);
    double lo_sum = 0.0;
    double hi_sum = 0.0;
    for (double r : ratios) {
      lo_sum += std::pow(r, d.bracket_lo);
      hi_sum += std::pow(r, d.bracket_hi);
    }
    residual.expect(d.residual <= 1e-12 && lo_sum >= 1.0 && hi_sum <= 1.0,
                    [&] { return "residual=" + detail::num(d.residual); });
  }
  out.push_back(residual.done());

  const auto schedule = ScaleSchedule::geometric(0.25, 0.5, 6);
  detail::Check nested("A subset of B implies N_A(eps) <= N_B(eps)");
  detail::Check unions("max(N_A, N_B) <= N_(A u B) <= N_A + N_B");
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto b = random_cloud(rng, rng.between(1, 400), rng.between(1, 3));
    PointCloud a(b.dim());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (rng.coin()) a.push_back(b.point(i));
    }
    const auto c = random_cloud(rng, rng.between(1, 400), b.dim());
    PointCloud bc = b;
    bc.append(c);
    for (double eps : schedule.values()) {
      nested.expect(box_count(a, eps) <= box_count(b, eps), [&] { return "eps=" + detail::num(eps); });
      const auto nb = box_count(b, eps);
      const auto nc = box_count(c, eps);
      const auto nu = box_count(bc, eps);
      unions.expect(std::max(nb, nc) <= nu && nu <= nb + nc, [&] { return "eps=" + detail::num(eps); });
    }
  }
  // Cantor endpoints sit on cell faces at triadic scales.
  for (int n = 2; n <= 8; ++n) {
    const auto coarse = cantor_endpoints(n - 1);
    const auto fine = cantor_endpoints(n);
    for (int k = 1; k <= n; ++k) {
      const double eps = std::pow(3.0, -k);
      nested.expect(box_count(coarse, eps) <= box_count(fine, eps),
                    [&] { return "cantor n=" + std::to_string(n) + " k=" + std::to_string(k); });
    }
  }
  out.push_back(nested.done());
  out.push_back(unions.done());

  detail::Check finite_zero("finite clouds have critical exponent 0");
  const std::vector<double> grid{0.1, 0.3, 0.5, 0.7, 0.9};
  for (std::size_t t = 0; t < std::min<std::size_t>(opt.trials, 20); ++t) {
    const auto cloud = random_cloud(rng, rng.between(1, 10), rng.between(1, 3));
    const auto est = critical_exponent_scan(finite_target(cloud), grid, ScaleSchedule::geometric(1.0, 0.5, 5));
    finite_zero.expect(est.value == 0.0, [&] { return detail::describe(cloud); });
  }
  out.push_back(finite_zero.done());

  detail::Check sim_inv("box dimension is invariant under similarities (within 0.03)");
  {
    // Cantor endpoints on a line in R^2, resolved well below the finest scale
    // for every ratio in [1/4, 4].
    const auto line = cantor_endpoints(14);
    PointCloud base(2);
    base.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) base.push_back({line.point(i)[0], 0.0});
    const auto sched = ScaleSchedule::geometric(1.0 / 9.0, 1.0 / 3.0, 11);
    const double d0 = box_counting_dimension(base, sched).value;
    for (std::size_t t = 0; t < std::min<std::size_t>(opt.trials, 50); ++t) {
      const double r = std::exp(rng.uniform(std::log(0.25), std::log(4.0)));
      const auto f = Similarity::rotation2d(r, rng.uniform(0.0, 2 * std::numbers::pi), rng.uniform(-2.0, 2.0),
                                            rng.uniform(-2.0, 2.0));
      const double d1 = box_counting_dimension(apply_similarity(base, f), sched).value;
      sim_inv.expect(std::abs(d1 - d0) <= 0.03,
                     [&] { return "r=" + detail::num(r) + " d0=" + detail::num(d0) + " d1=" + detail::num(d1); });
    }
  }

  detail::Check slopes("nested and united fractals: slopes within 0.05");
  {
    const auto sched = ScaleSchedule::geometric(1.0 / 9.0, 1.0 / 3.0, 7);
    const auto small = cantor_endpoints(8);
    const auto large = cantor_endpoints(12);
    const double ds = box_counting_dimension(small, sched).value;
    const double dl = box_counting_dimension(large, sched).value;
    slopes.expect(ds <= dl + 0.05, [&] { return "nested " + detail::num(ds) + " > " + detail::num(dl); });
    // A copy of the Cantor set and a dense segment, far apart.
    PointCloud seg(1);
    for (int i = 0; i <= 20000; ++i) seg.push_back({3.0 + i / 20000.0});
    PointCloud both = large;
    both.append(seg);
    const double dseg = box_counting_dimension(seg, sched).value;
    const double du = box_counting_dimension(both, sched).value;
    slopes.expect(std::abs(du - std::max(dl, dseg)) <= 0.05,
                  [&] { return "union " + detail::num(du) + " vs " + detail::num(std::max(dl, dseg)); });
  }
  out.push_back(sim_inv.done());
  out.push_back(slopes.done());
  return out;
}

inline std::vector<PropertyResult> cantor_suite(const SuiteOptions& opt) {
  const int depth = std::clamp(opt.depth, 0, kMaxEndpointDepth);
  const double s = std::log(2.0) / std::log(3.0);
  std::vector<PropertyResult> out;

  detail::Check lengths("lambda(K_n) = (2/3)^n exactly");
  detail::Check counts("K_n has 2^n intervals of length 3^-n");
  detail::Check gaps("distinct intervals of K_n are at least 3^-n apart");
  detail::Check nested("K_(n+1) is contained in K_n");
  for (int n = 0; n <= depth; ++n) {
    const auto exact = cantor_prefractal_exact(n);
    lengths.expect(exact.length() == Rational::reduced(pow_int(2, n), pow_int(3, n)) &&
                       std::abs(lebesgue_length(cantor_prefractal(n)) / std::pow(2.0 / 3.0, n) - 1.0) <= 1e-12,
                   [n] { return "n=" + std::to_string(n); });
    const auto k = cantor_prefractal(n);
    bool ok = k.size() == (std::size_t{1} << n);
    bool gap_ok = true;
    const double unit = std::pow(3.0, -n);
    for (std::size_t i = 0; i < k.size(); ++i) {
      ok = ok && std::abs(k[i].length() - unit) <= 1e-15;
      if (i > 0) gap_ok = gap_ok && k[i].lo - k[i - 1].hi >= unit - 1e-15;
    }
    counts.expect(ok, [n] { return "n=" + std::to_string(n); });
    gaps.expect(gap_ok, [n] { return "n=" + std::to_string(n); });
    if (n < depth) {
      nested.expect(k.contains(cantor_prefractal(n + 1)), [n] { return "n=" + std::to_string(n); });
    }
  }
  out.push_back(lengths.done());
  out.push_back(counts.done());
  out.push_back(gaps.done());
  out.push_back(nested.done());

  detail::Check cover("canonical cover of K_n costs 1 at s = ln2/ln3");
  detail::Check bracket("1/2 <= H^s_(3^-n)(K_n) <= 1");
  for (int n = 1; n <= std::min(depth, 10); ++n) {
    const auto k = cantor_prefractal(n);
    double cost = 0.0;
    for (const auto& iv : k.intervals()) cost += std::pow(iv.length(), s);
    cover.expect(std::abs(cost - 1.0) <= 1e-10, [&] { return "n=" + std::to_string(n) + " cost=" + detail::num(cost); });
    const double h = premeasure_intervals(k, s, std::pow(3.0, -n)).value;
    bracket.expect(h >= 0.5 - 1e-9 && h <= 1.0 + 1e-9,
                   [&] { return "n=" + std::to_string(n) + " value=" + detail::num(h); });
  }
  out.push_back(cover.done());
  out.push_back(bracket.done());

  detail::Check boxes("Cantor endpoints occupy 2^k triadic cells");
  detail::Check ifs("the Cantor IFS reproduces the endpoints of K_n");
  const auto cantor_ifs = IFS::preset("cantor");
  for (int n = 0; n <= std::min(depth, 12); ++n) {
    const auto pts = cantor_endpoints(n);
    for (int k = 0; k <= n; ++k) {
      boxes.expect(box_count(pts, std::pow(3.0, -k)) == (std::size_t{1} << k),
                   [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k); });
    }
    auto gen = ifs_deterministic(cantor_ifs, PointCloud(1, {0.0, 1.0}), n);
    std::vector<double> got(gen.coordinates().begin(), gen.coordinates().end());
    std::sort(got.begin(), got.end());
    bool same = got.size() == pts.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) same = std::abs(got[i] - pts.point(i)[0]) <= 1e-15;
    ifs.expect(same, [n] { return "n=" + std::to_string(n); });
  }
  out.push_back(boxes.done());
  out.push_back(ifs.done());
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "caratheodory", "metric",
                                              "hausdorff-props", "dimension-props", "cantor"};
  return names;
}

inline std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "axioms") return axioms_suite(opt);
  if (name == "caratheodory") return caratheodory_suite(opt);
  if (name == "metric") return metric_suite(opt);
  if (name == "hausdorff-props") return hausdorff_props_suite(opt);
  if (name == "dimension-props") return dimension_props_suite(opt);
  if (name == "cantor") return cantor_suite(opt);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace hausdorff_lab::verify
