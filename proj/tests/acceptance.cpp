// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hausdorff_lab/hausdorff_lab.hpp"
#include "oracles.hpp"

using namespace hausdorff_lab;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);
const double kSierpinskiDim = std::log(3.0) / std::log(2.0);

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::vector<std::pair<double, double>> pairs_of(const IntervalSet& set) {
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : set.intervals()) out.emplace_back(iv.lo, iv.hi);
  return out;
}

/// Image of a union of intervals under a monotone map.
template <typename F>
IntervalSet map_endpoints(const IntervalSet& set, F f) {
  std::vector<Interval> out;
  for (const auto& iv : set.intervals()) {
    const double a = f(iv.lo);
    const double b = f(iv.hi);
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return IntervalSet(std::move(out));
}

std::size_t distinct_endpoints(const IntervalSet& set) {
  std::vector<double> e;
  for (const auto& iv : set.intervals()) {
    e.push_back(iv.lo);
    e.push_back(iv.hi);
  }
  std::sort(e.begin(), e.end());
  return static_cast<std::size_t>(std::unique(e.begin(), e.end()) - e.begin());
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  const std::vector<double> ratios{1.0 / 3, 1.0 / 3};
  const auto t0 = std::chrono::steady_clock::now();
  const double d = moran_dimension(ratios).value;
  const double dt = seconds_since(t0);
  if (std::abs(d - 0.6309297535714574) > 1e-12) o.fail("got " + num(d));
  if (dt >= 1e-3) o.fail("took " + num(dt) + " s");
  if (o.ok) o.detail = "d=" + num(d) + " in " + num(dt * 1e3) + " ms";
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_cover = 0.0;
  double worst_pre = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const auto k = cantor_prefractal(n);
    double cost = 0.0;
    for (const auto& iv : k.intervals()) cost += power_diam(iv.length(), kCantorDim);
    worst_cover = std::max(worst_cover, std::abs(cost - 1.0));
    const double pre = premeasure_intervals(k, kCantorDim, std::pow(3.0, -n)).value;
    worst_pre = std::max(worst_pre, pre);
    if (std::abs(cost - 1.0) > 1e-10) o.fail("n=" + std::to_string(n) + " cover cost " + num(cost));
    if (pre > 1.0 + 1e-10) o.fail("n=" + std::to_string(n) + " pre-measure " + num(pre));
  }
  const double dt = seconds_since(t0);
  if (dt >= 1.0) o.fail("took " + num(dt) + " s");
  if (o.ok) {
    o.detail = "max |cost-1|=" + num(worst_cover) + " max H=" + num(worst_pre) + " in " + num(dt) + " s";
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  double lo = 2.0;
  double hi = 0.0;
  for (int n = 4; n <= 10; ++n) {
    const double h = premeasure_intervals(cantor_prefractal(n), kCantorDim, std::pow(3.0, -n)).value;
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    if (h < 0.5 - 1e-9 || h > 1.0 + 1e-9) o.fail("n=" + std::to_string(n) + " H=" + num(h));
  }
  if (o.ok) o.detail = "H in [" + num(lo) + ", " + num(hi) + "]";
  return o;
}

Outcome ac4() {
  Outcome o;
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    const auto exact = cantor_prefractal_exact(n).length();
    if (!(exact == Rational::reduced(pow_int(2, n), pow_int(3, n)))) o.fail("rational n=" + std::to_string(n));
    const double want = std::pow(2.0, n) / std::pow(3.0, n);
    const double rel = std::abs(lebesgue_length(cantor_prefractal(n)) / want - 1.0);
    worst = std::max(worst, rel);
    if (rel > 1e-12) o.fail("float n=" + std::to_string(n) + " rel err " + num(rel));
  }
  if (o.ok) o.detail = "rational exact, max float rel err " + num(worst);
  return o;
}

Outcome ac5() {
  Outcome o;
  verify::Random rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t size = rng.between(1, 12);
    const auto cloud = verify::random_cloud(rng, size, rng.between(1, 3));
    const auto space = FiniteMetricSpace::from_cloud(cloud);
    const double eps = size > 1 ? 0.5 * verify::min_pairwise_distance(space) : 1.0;
    const double h = premeasure_finite(cloud, 0.0, eps).value;
    if (h != static_cast<double>(size)) o.fail("size " + std::to_string(size) + " gave " + num(h));
  }
  if (o.ok) o.detail = "100 clouds";
  return o;
}

Outcome ac6() {
  Outcome o;
  const IntervalSet unit({{0.0, 1.0}});
  double worst = 0.0;
  for (int k = 2; k <= 256; ++k) {
    const double h = premeasure_intervals(unit, 1.0, 1.0 / k).value;
    worst = std::max(worst, std::abs(h - 1.0));
    if (std::abs(h - 1.0) > 1e-12) o.fail("k=" + std::to_string(k) + " H=" + num(h));
  }
  if (o.ok) o.detail = "max |H-1|=" + num(worst);
  return o;
}

Outcome ac7() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  verify::Random rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto gauge = verify::random_gauge(rng, rng.between(1, 8));
    const auto table = construct_outer_measure(gauge);
    const auto report = verify_outer_measure(table);
    if (!report.ok) o.fail("trial " + std::to_string(t) + ": " + report.violations.front().describe());
    const auto family = measurable_family(table);
    if (!family.sigma_algebra_ok || !family.additive_ok) o.fail("trial " + std::to_string(t) + " family");
  }
  const auto phi = measurable_family(construct_outer_measure(verify::phi_gauge(2)));
  if (phi.members != std::vector<Mask>{0, 3}) o.fail("phi on |X|=2 members differ from {0, X}");
  const double dt = seconds_since(t0);
  if (dt >= 30.0) o.fail("took " + num(dt) + " s");
  if (o.ok) o.detail = "50 gauges, phi members {0, X}, " + num(dt) + " s";
  return o;
}

Outcome ac8() {
  Outcome o;
  verify::Random rng(8);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.between(2, 7);
    const auto space = verify::random_metric_space(rng, n);
    const double gap = verify::min_pairwise_distance(space);
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
      for (double f : {0.25, 0.5, 0.9}) {
        const auto table = construct_outer_measure(hausdorff_gauge(space, s, f * gap));
        if (!is_metric_outer(table, space)) o.fail("not metric: n=" + std::to_string(n) + " s=" + num(s));
        if (measurable_family(table).members.size() != table.subset_count()) {
          o.fail("not all measurable: n=" + std::to_string(n) + " s=" + num(s));
        }
        ++checked;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " (space, s, eps) triples";
  return o;
}

Outcome ac9() {
  Outcome o;
  verify::Random rng(9);
  double worst_dil = 0.0;
  double worst_sim = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto set = verify::random_dyadic_interval_set(rng, rng.between(1, 6));
    const double shift = std::ldexp(static_cast<double>(rng.between(0, 8192)), -10) - 4.0;
    const double eps = std::ldexp(static_cast<double>(rng.between(1, 1024)), -10);
    const double s = rng.uniform(0.05, 1.0);
    const double h = premeasure_intervals(set, s, eps).value;
    if (premeasure_intervals(translate(set, shift), s, eps).value != h) o.fail("translation, trial " + std::to_string(t));
  }
  for (int t = 0; t < 100; ++t) {
    const auto set = verify::random_interval_set(rng, rng.between(1, 6));
    const double eps = rng.uniform(0.01, 0.5);
    const double s = rng.uniform(0.05, 1.0);
    const double lambda = rng.uniform(0.1, 10.0);
    const double h = premeasure_intervals(set, s, eps).value;
    const double hl = premeasure_intervals(scale(set, lambda), s, lambda * eps).value;
    const double want = std::pow(lambda, s) * h;
    worst_dil = std::max(worst_dil, std::abs(hl - want) / want);
    if (!rel_close(hl, want, 1e-9)) o.fail("dilation, trial " + std::to_string(t));
  }
  // A finite set has H^s_eps = 0 for s > 0 (singletons have diameter 0), so
  // the similarity and Lipschitz laws are exercised on interval sets, and on
  // clouds only at s = 0.
  for (int t = 0; t < 100; ++t) {
    const auto set = verify::random_interval_set(rng, rng.between(1, 6));
    const double r = rng.uniform(0.25, 4.0);
    const Similarity f(r, {rng.coin(0.5) ? 1.0 : -1.0}, {rng.uniform(-2, 2)});
    const double eps = rng.uniform(0.01, 0.5);
    const double s = rng.uniform(0.05, 1.0);
    const double h = premeasure_intervals(set, s, eps).value;
    const auto image = map_endpoints(set, [&](double x) { return f(std::vector<double>{x})[0]; });
    const double hf = premeasure_intervals(image, s, r * eps).value;
    const double want = std::pow(r, s) * h;
    worst_sim = std::max(worst_sim, std::abs(hf - want) / want);
    if (!rel_close(hf, want, 1e-9)) o.fail("similarity, trial " + std::to_string(t));

    const auto cloud = verify::random_cloud(rng, rng.between(1, 8), 2);
    const auto g = Similarity::rotation2d(r, rng.uniform(0.0, 2 * std::numbers::pi), rng.uniform(-1, 1),
                                          rng.uniform(-1, 1));
    const double count = premeasure_finite(cloud, 0.0, eps).value;
    if (premeasure_finite(apply_similarity(cloud, g), 0.0, r * eps).value != count) {
      o.fail("similarity on clouds at s=0, trial " + std::to_string(t));
    }
  }
  for (int t = 0; t < 100; ++t) {
    const auto set = verify::random_interval_set(rng, rng.between(1, 6));
    const double k = rng.uniform(0.2, 3.0);
    const double eps = rng.uniform(0.01, 0.5);
    const double s = rng.uniform(0.05, 1.0);
    // Increasing, with slope between 0.54 k and k.
    const auto image = map_endpoints(set, [k](double x) { return k * (x + 0.3 * std::sin(x)) / 1.3; });
    const double lhs = premeasure_intervals(image, s, k * eps).value;
    const double rhs = std::pow(k, s) * premeasure_intervals(set, s, eps).value;
    if (!approx_leq(lhs, rhs)) o.fail("lipschitz, trial " + std::to_string(t) + ": " + num(lhs) + " > " + num(rhs));

    const auto cloud = verify::random_cloud(rng, rng.between(1, 8), 2);
    std::vector<double> coords(cloud.coordinates().begin(), cloud.coordinates().end());
    for (double& c : coords) c = k * std::sin(c);
    if (premeasure_finite(PointCloud(2, coords), 0.0, k * eps).value > premeasure_finite(cloud, 0.0, eps).value) {
      o.fail("lipschitz on clouds at s=0, trial " + std::to_string(t));
    }
  }
  if (o.ok) {
    o.detail = "translation bitwise, dilation rel " + num(worst_dil) + ", similarity rel " + num(worst_sim) +
               ", lipschitz 0 violations";
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  verify::Random rng(10);
  for (int t = 0; t < 200; ++t) {
    double lhs = 0.0;
    double rhs = 0.0;
    if (t % 2 == 0) {
      const auto set = verify::random_interval_set(rng, rng.between(1, 8));
      const double d = rng.uniform(0.05, 0.95);
      const double s = rng.uniform(d, 1.0);
      const double eps = rng.uniform(0.001, 0.5);
      lhs = premeasure_intervals(set, s, eps).value;
      rhs = std::pow(eps, s - d) * premeasure_intervals(set, d, eps).value;
    } else {
      const auto space = verify::random_metric_space(rng, rng.between(1, 9));
      const Mask all = static_cast<Mask>((std::size_t{1} << space.size()) - 1);
      const double d = rng.uniform(0.0, 1.5);
      const double s = rng.uniform(d, 3.0);
      const double eps = rng.uniform(0.05, 1.5);
      lhs = premeasure_finite(space, all, s, eps).value;
      rhs = std::pow(eps, s - d) * premeasure_finite(space, all, d, eps).value;
    }
    if (!approx_leq(lhs, rhs)) o.fail("case " + std::to_string(t) + ": " + num(lhs) + " > " + num(rhs));
  }
  if (o.ok) o.detail = "200 cases, 0 violations";
  return o;
}

Outcome ac11() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> triadic;
  for (int k = 2; k <= 8; ++k) triadic.push_back(std::pow(3.0, -k));
  const auto cantor = box_counting_dimension(cantor_endpoints(10), ScaleSchedule(triadic));
  const auto& diag = std::get<RegressionDiagnostics>(cantor.diagnostics);
  for (std::size_t i = 0; i < diag.counts.size(); ++i) {
    if (diag.counts[i] != (std::size_t{1} << (i + 2))) o.fail("count at k=" + std::to_string(i + 2));
  }
  if (std::abs(cantor.value - kCantorDim) > 1e-9) o.fail("cantor slope " + num(cantor.value));
  if (diag.fit.r_squared < 1.0 - 1e-12) o.fail("cantor R^2 " + num(diag.fit.r_squared));

  const auto cloud = chaos_game(IFS::preset("sierpinski-triangle"), 100000, 42);
  const auto tri = box_counting_dimension(cloud, ScaleSchedule::geometric(0.25, 0.5, 6));
  if (std::abs(tri.value - kSierpinskiDim) > 0.05) o.fail("sierpinski slope " + num(tri.value));
  const double dt = seconds_since(t0);
  if (dt >= 10.0) o.fail("took " + num(dt) + " s");
  if (o.ok) {
    o.detail = "cantor " + num(cantor.value) + " (R^2 " + num(diag.fit.r_squared) + "), sierpinski " +
               num(tri.value) + ", " + num(dt) + " s";
  }
  return o;
}

Outcome ac12() {
  Outcome o;
  verify::Random rng(12);
  const std::vector<double> grid{0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  for (int t = 0; t < 30; ++t) {
    const auto cloud = verify::random_cloud(rng, rng.between(1, 10), rng.between(1, 3));
    const auto space = FiniteMetricSpace::from_cloud(cloud);
    const double floor = cloud.size() > 1 ? 0.5 * verify::min_pairwise_distance(space) : 0.5;
    std::vector<double> eps{2.0};
    while (eps.size() < 3 || eps.back() >= floor) eps.push_back(eps.back() / 2);
    const auto est = critical_exponent_scan(finite_target(cloud), grid, ScaleSchedule(eps));
    if (est.value != 0.0) o.fail("cloud of " + std::to_string(cloud.size()) + " gave " + num(est.value));
  }
  if (o.ok) o.detail = "30 clouds scanned to 0";
  return o;
}

Outcome ac13() {
  Outcome o;
  verify::Random rng(13);
  // Interval DP against the run-splitting oracle. Dyadic data at s = 1 makes
  // every partial sum exact, so the two must agree bitwise. At general s the
  // routes add the same terms in a different order.
  int interval_cases = 0;
  int reordered = 0;
  double worst = 0.0;
  while (interval_cases < 4000) {
    const bool dyadic = interval_cases % 2 == 0;
    const auto set = dyadic ? verify::random_dyadic_interval_set(rng, rng.between(1, 4))
                            : verify::random_interval_set(rng, rng.between(1, 4), 4.0);
    if (distinct_endpoints(set) > 6) continue;
    ++interval_cases;
    const double eps = dyadic ? std::ldexp(static_cast<double>(rng.between(1, 2048)), -10) : rng.uniform(0.01, 2.0);
    const double s = dyadic ? 1.0 : rng.uniform(0.05, 1.0);
    const double got = premeasure_intervals(set, s, eps).value;
    const double want = oracle::interval_premeasure(pairs_of(set), s, eps);
    if (dyadic) {
      if (got != want) o.fail("dyadic interval case differs: " + num(got) + " vs " + num(want));
    } else {
      if (got != want) ++reordered;
      worst = std::max(worst, std::abs(got - want) / want);
      if (!rel_close(got, want, 1e-12)) o.fail("interval case: " + num(got) + " vs " + num(want));
    }
  }

  // Finite-space DP against all subsets of blocks. Integer weights: bitwise.
  int gauge_cases = 0;
  int gauge_reordered = 0;
  double gauge_worst = 0.0;
  while (gauge_cases < 300) {
    const bool integral = gauge_cases % 2 == 0;
    const std::size_t n = rng.between(1, 10);
    Gauge gauge = verify::random_gauge(rng, n);
    if (integral) {
      std::vector<GaugeBlock> blocks(gauge.blocks().begin(), gauge.blocks().end());
      for (auto& b : blocks) {
        if (b.members != 0 && std::isfinite(b.weight)) b.weight = static_cast<double>(rng.between(0, 9));
      }
      gauge = Gauge(n, std::move(blocks));
    }
    if (gauge.blocks().size() > 14) continue;
    ++gauge_cases;
    std::vector<oracle::Block> blocks;
    for (const auto& b : gauge.blocks()) blocks.push_back({b.members, b.weight});
    const auto table = construct_outer_measure(gauge);
    for (Mask a = 0; a < table.subset_count(); ++a) {
      const double got = table[a];
      const double want = oracle::gauge_measure(blocks, a);
      if (integral) {
        if (got != want) o.fail("integer gauge differs at " + mask_to_hex(a));
      } else {
        if (got != want) ++gauge_reordered;
        if (std::isfinite(want) && want > 0) gauge_worst = std::max(gauge_worst, std::abs(got - want) / want);
        if (!(got == want || rel_close(got, want, 1e-12))) o.fail("gauge differs at " + mask_to_hex(a));
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(interval_cases) + " interval cases (dyadic bitwise; real: " +
               std::to_string(reordered) + " last-bit differences, max rel " + num(worst) + "), " +
               std::to_string(gauge_cases) + " gauges (integer bitwise; real: " + std::to_string(gauge_reordered) +
               " last-bit differences, max rel " + num(gauge_worst) + ")";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 Moran dimension of the Cantor IFS", ac1},
      {"AC2 canonical Cantor cover costs 1", ac2},
      {"AC3 H^s of K_n at 3^-n lies in [1/2, 1]", ac3},
      {"AC4 lambda(K_n) = (2/3)^n", ac4},
      {"AC5 H^0 counts points", ac5},
      {"AC6 H^1 of [0,1] is 1", ac6},
      {"AC7 gauge measures are outer, measurable sets form a sigma-algebra", ac7},
      {"AC8 metric outer measures on finite spaces measure every subset", ac8},
      {"AC9 translation, dilation, similarity and Lipschitz laws", ac9},
      {"AC10 H^s_eps <= eps^(s-d) H^d_eps for s > d", ac10},
      {"AC11 box counting recovers Cantor and Sierpinski dimensions", ac11},
      {"AC12 finite clouds have dimension 0", ac12},
      {"AC13 exact estimators match brute-force oracles", ac13},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
