#include <gtest/gtest.h>

#include <cmath>

#include "hausdorff_lab/dimension.hpp"
#include "hausdorff_lab/fractals.hpp"
#include "hausdorff_lab/verify.hpp"
#include "oracles.hpp"

using namespace hausdorff_lab;

namespace {
const double kCantorS = std::log(2.0) / std::log(3.0);
const double kTriangleS = std::log(3.0) / std::log(2.0);
}  // namespace

TEST(Moran, Examples) {
  const std::vector<double> cantor{1.0 / 3, 1.0 / 3};
  EXPECT_NEAR(moran_dimension(cantor).value, kCantorS, 1e-12);
  EXPECT_EQ(moran_dimension(std::vector<double>{0.7}).value, 0.0);
  EXPECT_NEAR(moran_dimension(std::vector<double>{0.5, 0.5, 0.5}).value, kTriangleS, 1e-12);
  EXPECT_EQ(moran_dimension(cantor).method, DimensionMethod::kMoran);
}

TEST(Moran, Errors) {
  EXPECT_THROW(moran_dimension(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(moran_dimension(std::vector<double>{0.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(moran_dimension(std::vector<double>{0.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(moran_dimension(std::vector<double>{-0.5}), std::invalid_argument);
}

TEST(Moran, MatchesNewtonOracle) {
  verify::Random rng(301);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> r(rng.between(2, 9));
    for (double& x : r) x = rng.uniform(0.02, 0.95);
    const auto est = moran_dimension(r);
    EXPECT_NEAR(est.value, oracle::moran_root(r), 1e-10);
    EXPECT_LE(std::get<MoranDiagnostics>(est.diagnostics).residual, 1e-12);
  }
}

TEST(Moran, EqualRatioClosedForm) {
  for (int m = 1; m <= 8; ++m) {
    for (double r : {0.5, 1.0 / 3, 0.25}) {
      EXPECT_NEAR(moran_dimension(std::vector<double>(m, r)).value, std::log(m) / std::log(1 / r), 1e-12);
    }
  }
}

TEST(LeastSquares, ExactLineAndErrors) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const auto fit = least_squares(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-15);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-15);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-15);
  EXPECT_EQ(fit.n_points, 4u);
  EXPECT_THROW(least_squares(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  EXPECT_THROW(least_squares(std::vector<double>{1, 1}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(BoxCount, Examples) {
  EXPECT_EQ(box_count(PointCloud(1), 0.1), 0u);
  const auto pts = cantor_endpoints(10);
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(box_count(pts, std::pow(3.0, -k)), std::size_t{1} << k) << k;
  PointCloud square(2);
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) square.push_back({(i + 0.5) / 200, (j + 0.5) / 200});
  }
  for (int k : {1, 2, 5, 10, 20}) EXPECT_EQ(box_count(square, 1.0 / k), static_cast<std::size_t>(k * k)) << k;
}

// Reference for points off the cell faces: distinct floor indices.
TEST(BoxCount, MatchesFloorBucketsForGenericPoints) {
  verify::Random rng(302);
  for (int t = 0; t < 200; ++t) {
    const auto cloud = verify::random_cloud(rng, rng.between(1, 300), rng.between(1, 3), 3.0);
    const double eps = rng.uniform(0.01, 1.0);
    std::vector<std::vector<long long>> cells;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      std::vector<long long> c;
      for (double x : cloud.point(i)) c.push_back(static_cast<long long>(std::floor(x / eps)));
      cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    const auto distinct = static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
    EXPECT_EQ(box_count(cloud, eps), distinct);
  }
}

// Closed cells: a point on a face may sit in either neighbour. In 1-D the
// count is the fewest closed grid intervals covering the points.
TEST(BoxCount, FacePointsJoinOccupiedNeighbours) {
  EXPECT_EQ(box_count(PointCloud(1, {0.0, 0.5, 1.0}), 1.0), 1u);
  EXPECT_EQ(box_count(PointCloud(1, {1.0}), 1.0), 1u);
  EXPECT_EQ(box_count(PointCloud(1, {0.25, 1.0, 1.5}), 1.0), 2u);
  EXPECT_EQ(box_count(PointCloud(2, {1.0, 1.0, 0.5, 0.5, 1.5, 1.5}), 1.0), 2u);
}

TEST(BoxCountingDimension, CantorTriadicIsExact) {
  const auto est = box_counting_dimension(cantor_endpoints(10), ScaleSchedule::geometric(1.0 / 9, 1.0 / 3, 7));
  EXPECT_NEAR(est.value, kCantorS, 1e-9);
  const auto& d = std::get<RegressionDiagnostics>(est.diagnostics);
  EXPECT_GE(d.fit.r_squared, 1 - 1e-12);
  EXPECT_EQ(d.eps_used.size(), 7u);
  EXPECT_EQ(d.counts.front(), 4u);
  EXPECT_EQ(d.counts.back(), 256u);
}

// Scales just above 3^-k: every interval of K_k except the first straddles
// a cell boundary, so N = 2^(k+1) - 1.
TEST(BoxCountingDimension, SlightlyCoarseTriadicScalesDoubleTheCount) {
  const auto pts = cantor_endpoints(10);
  const auto sched = ScaleSchedule::geometric(0.11112, 0.3334, 6);
  const auto est = box_counting_dimension(pts, sched);
  const auto& d = std::get<RegressionDiagnostics>(est.diagnostics);
  std::vector<double> x, y;
  for (int j = 0; j < 6; ++j) {
    const std::size_t want = (std::size_t{1} << (j + 3)) - 1;
    EXPECT_EQ(d.counts[j], want) << j;
    x.push_back(-std::log(sched[j]));
    y.push_back(std::log(static_cast<double>(want)));
  }
  EXPECT_NEAR(est.value, oracle::slope(x, y), 1e-12);
}

TEST(BoxCountingDimension, DenseSegmentHasSlopeOne) {
  PointCloud seg(1);
  for (int i = 0; i < 100000; ++i) seg.push_back({(i + 0.5) / 100000.0});
  const auto est = box_counting_dimension(seg, ScaleSchedule::geometric(0.25, 0.5, 7));
  EXPECT_NEAR(est.value, 1.0, 0.02);
}

TEST(BoxCountingDimension, SinglePointIsDegenerate) {
  const auto est = box_counting_dimension(PointCloud(2, {0.3, 0.3}), ScaleSchedule::geometric(0.5, 0.5, 4));
  EXPECT_EQ(est.value, 0.0);
  const auto& d = std::get<RegressionDiagnostics>(est.diagnostics);
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.fit.r_squared, 0.0);
  EXPECT_FALSE(d.warnings.empty());
}

TEST(BoxCountingDimension, ZeroCountsAreDroppedAndTooFewScalesThrow) {
  EXPECT_THROW(box_counting_dimension(PointCloud(1), ScaleSchedule::geometric(0.5, 0.5, 5)), std::invalid_argument);
  EXPECT_THROW(box_counting_dimension(cantor_endpoints(3), ScaleSchedule({0.5, 0.25})), std::invalid_argument);
}

TEST(BoxCountingDimension, SierpinskiChaosGame) {
  const auto cloud = chaos_game(IFS::preset("sierpinski-triangle"), 100000, 42);
  const auto est = box_counting_dimension(cloud, ScaleSchedule::geometric(0.25, 0.5, 6));
  EXPECT_NEAR(est.value, moran_dimension(IFS::preset("sierpinski-triangle").ratios()).value, 0.05);
}

TEST(BoxCountingDimension, ValueBoundedByAmbientDimension) {
  verify::Random rng(303);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = rng.between(1, 3);
    const auto cloud = verify::random_cloud(rng, 5000, d);
    const auto est = box_counting_dimension(cloud, ScaleSchedule::geometric(0.5, 0.5, 5));
    EXPECT_GE(est.value, 0.0);
    EXPECT_LE(est.value, static_cast<double>(d) + 1e-9);
  }
}

TEST(CriticalScan, CantorBracketsTheDimension) {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(0.52 + 0.02 * i);
  const auto est =
      critical_exponent_scan(cantor_prefractal(8), grid, ScaleSchedule::geometric(1.0 / 9, 1.0 / 3, 7));
  const auto& d = std::get<ScanDiagnostics>(est.diagnostics);
  EXPECT_LE(d.lo, kCantorS);
  EXPECT_GE(d.hi, kCantorS);
  EXPECT_LE(d.hi - d.lo, 0.02 + 1e-12);
  EXPECT_EQ(est.method, DimensionMethod::kCriticalScan);
}

TEST(CriticalScan, UnitIntervalConvergesAtOne) {
  const std::vector<double> grid{0.5, 1.0, 1.5};
  const auto est =
      critical_exponent_scan(IntervalSet({{0.0, 1.0}}), grid, ScaleSchedule::geometric(0.5, 0.5, 8));
  const auto& d = std::get<ScanDiagnostics>(est.diagnostics);
  EXPECT_EQ(d.status, ScanStatus::kCritical);
  ASSERT_TRUE(d.converging_at.has_value());
  EXPECT_EQ(*d.converging_at, 1.0);
  EXPECT_EQ(d.lo, 0.5);
  EXPECT_EQ(d.hi, 1.0);
  EXPECT_EQ(est.value, 1.0);
  EXPECT_EQ(d.skipped, std::vector<double>{1.5});
}

TEST(CriticalScan, FiniteCloudsGiveZero) {
  verify::Random rng(304);
  const std::vector<double> grid{0.1, 0.2, 0.5, 1.0, 2.0};
  for (int t = 0; t < 20; ++t) {
    const auto cloud = verify::random_cloud(rng, rng.between(1, 12), rng.between(1, 3));
    const auto est = critical_exponent_scan(finite_target(cloud), grid, ScaleSchedule::geometric(1.0, 0.5, 5));
    EXPECT_EQ(est.value, 0.0);
    EXPECT_EQ(std::get<ScanDiagnostics>(est.diagnostics).status, ScanStatus::kVanishingEverywhere);
  }
}

TEST(CriticalScan, Errors) {
  const auto sched = ScaleSchedule::geometric(0.5, 0.5, 4);
  const IntervalSet unit{{0.0, 1.0}};
  EXPECT_THROW(critical_exponent_scan(unit, std::vector<double>{}, sched), std::invalid_argument);
  EXPECT_THROW(critical_exponent_scan(unit, std::vector<double>{0.5, 0.4}, sched), std::invalid_argument);
  EXPECT_THROW(critical_exponent_scan(unit, std::vector<double>{1.5, 2.0}, sched), std::invalid_argument);
}

TEST(CriticalScan, DivergingEverywhereReportsLowerBound) {
  const auto est = critical_exponent_scan(IntervalSet({{0.0, 1.0}}), std::vector<double>{0.3, 0.5},
                                          ScaleSchedule::geometric(0.5, 0.5, 8));
  const auto& d = std::get<ScanDiagnostics>(est.diagnostics);
  EXPECT_EQ(d.status, ScanStatus::kDivergingEverywhere);
  EXPECT_EQ(d.lo, 0.5);
  EXPECT_TRUE(std::isinf(d.hi));
}

TEST(DimensionProperties, SuitePasses) {
  for (const auto& r : verify::dimension_props_suite({6, 50, 123, 8})) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.counterexample;
  }
}
