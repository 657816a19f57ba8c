#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "hausdorff_lab/hausdorff_lab.hpp"

using namespace hausdorff_lab;

namespace {

std::size_t parse_error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const io::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Io, FormatDouble) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(kInfinity), "inf");
}

TEST(Io, IntervalSetRoundTrip) {
  verify::Random rng(401);
  for (int t = 0; t < 100; ++t) {
    const auto s = verify::random_interval_set(rng, rng.between(0, 10), 100.0);
    EXPECT_EQ(io::parse_interval_set(io::to_csv(s)), s);
  }
  EXPECT_EQ(io::to_csv(cantor_prefractal(0)), "0,1\n");
  EXPECT_TRUE(io::parse_interval_set("").empty());
  EXPECT_EQ(io::parse_interval_set("# comment\n\n0, 0.5\r\n"), IntervalSet({{0.0, 0.5}}));
}

TEST(Io, IntervalSetErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line([] { io::parse_interval_set("0,1\n2,x\n"); }), 2u);
  EXPECT_EQ(parse_error_line([] { io::parse_interval_set("0,1\n\n# c\n2\n"); }), 4u);
  EXPECT_EQ(parse_error_line([] { io::parse_interval_set("3,1\n"); }), 1u);
  EXPECT_EQ(parse_error_line([] { io::parse_interval_set("0,nan\n"); }), 1u);
}

TEST(Io, PointCloudRoundTrip) {
  verify::Random rng(402);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = rng.between(1, 3);
    const auto c = verify::random_cloud(rng, rng.between(1, 50), d, 1e3);
    EXPECT_EQ(io::parse_point_cloud(io::to_csv(c)), c);
  }
  EXPECT_EQ(io::parse_point_cloud("", 2).dim(), 2u);
  EXPECT_EQ(parse_error_line([] { io::parse_point_cloud("0,1\n1,2,3\n"); }), 2u);
}

TEST(Io, MetricSpaceRoundTrip) {
  verify::Random rng(403);
  const auto space = verify::random_metric_space(rng, 6);
  const auto back = io::parse_metric_space(io::to_csv(space));
  ASSERT_EQ(back.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(back.distance(i, j), space.distance(i, j));
  }
  EXPECT_GT(parse_error_line([] { io::parse_metric_space("0,1\n1,0,2\n"); }), 0u);
  EXPECT_GT(parse_error_line([] { io::parse_metric_space("0,1,9\n1,0,1\n9,1,0\n"); }), 0u);
}

TEST(Io, GaugeRoundTrip) {
  verify::Random rng(404);
  for (int t = 0; t < 30; ++t) {
    const auto g = verify::random_gauge(rng, rng.between(1, 8));
    const auto back = io::parse_gauge(io::to_text(g));
    ASSERT_EQ(back.ground_size(), g.ground_size());
    ASSERT_EQ(back.blocks().size(), g.blocks().size());
    for (std::size_t i = 0; i < g.blocks().size(); ++i) {
      EXPECT_EQ(back.blocks()[i].members, g.blocks()[i].members);
      EXPECT_EQ(back.blocks()[i].weight, g.blocks()[i].weight);
    }
  }
  const auto g = io::parse_gauge("n=3\n0x7,1\n1,0.5\n");
  EXPECT_EQ(g.blocks()[0].members, 7u);
  EXPECT_EQ(parse_error_line([] { io::parse_gauge("n=2\n1,1\n"); }), 2u);  // no cover
  EXPECT_EQ(parse_error_line([] { io::parse_gauge("m=2\n3,1\n"); }), 1u);
  EXPECT_EQ(parse_error_line([] { io::parse_gauge("n=2\n3,1\nzz,1\n"); }), 3u);
}

TEST(Io, OuterMeasureTableRoundTrip) {
  const auto t = construct_outer_measure(Gauge(3, {{7, kInfinity}, {1, 1.0}, {2, 0.25}}));
  const auto text = io::to_csv(t);
  EXPECT_NE(text.find("inf"), std::string::npos);
  const auto back = io::parse_outer_measure_table(text);
  for (Mask a = 0; a < 8; ++a) EXPECT_EQ(back[a], t[a]);
  EXPECT_GT(parse_error_line([] { io::parse_outer_measure_table("0,0\n1,1\n3,1\n"); }), 0u);
}

TEST(Io, IfsRoundTrip) {
  for (const auto& name : preset_names()) {
    const auto ifs = IFS::preset(name);
    const auto back = io::parse_ifs(io::to_text(ifs));
    ASSERT_EQ(back.maps().size(), ifs.maps().size());
    for (std::size_t i = 0; i < ifs.maps().size(); ++i) {
      EXPECT_EQ(back.maps()[i].ratio(), ifs.maps()[i].ratio());
      EXPECT_TRUE(std::equal(back.maps()[i].translation().begin(), back.maps()[i].translation().end(),
                             ifs.maps()[i].translation().begin()));
    }
  }
  EXPECT_EQ(parse_error_line([] { io::parse_ifs("0.5, 1, 0\n0.5, 1, 0, 0\n"); }), 2u);
  EXPECT_EQ(parse_error_line([] { io::parse_ifs("# r q t\n1.5, 1, 0\n"); }), 2u);
}

TEST(Io, SweepCsvRoundTrip) {
  const auto sweep = scale_sweep(cantor_prefractal(6), 0.6309297536, ScaleSchedule::geometric(0.33334, 0.3334, 6));
  const auto rows = io::rows_of(sweep);
  const auto text = io::sweep_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), io::kSweepHeader);
  EXPECT_EQ(io::parse_sweep_csv(text), rows);
  EXPECT_EQ(parse_error_line([] { io::parse_sweep_csv("eps,s,value,method,is_exact\n1,1,1,magic,true\n"); }),
            2u);
}

TEST(Io, ReportCsv) {
  const auto rep = io::make_report(moran_dimension(std::vector<double>{0.5, 0.5}));
  const auto text = io::report_csv(rep);
  EXPECT_EQ(text.substr(0, text.find('\n')), io::kReportHeader);
  EXPECT_EQ(text.substr(text.find('\n') + 1, 10), "moran,1,1,");
  EXPECT_EQ(text.substr(text.size() - 4), ",,0\n");
  const auto box = io::make_report(
      box_counting_dimension(cantor_endpoints(8), ScaleSchedule::geometric(1.0 / 3, 1.0 / 3, 5)));
  EXPECT_EQ(box.n_scales, 5u);
  EXPECT_EQ(box.scales.size(), 5u);
  EXPECT_EQ(box.scales.front().value, 2.0);
}

TEST(Io, WriteAtomicAndReadBack) {
  const auto dir = std::filesystem::temp_directory_path() / "hausdorff_lab_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  io::write_atomic(path, "0,1\n");
  io::write_atomic(path, "0,2\n");
  EXPECT_EQ(io::read_file(path), "0,2\n");
  EXPECT_THROW(io::read_file(dir / "missing.csv"), io::IoError);
  EXPECT_THROW(io::write_atomic(dir / "no" / "such" / "dir.csv", "x"), io::IoError);
  std::filesystem::remove_all(dir);
}
