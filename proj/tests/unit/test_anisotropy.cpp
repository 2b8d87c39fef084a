#include <cmath>
#include <cstdint>

#include <gtest/gtest.h>

#include "lclt/anisotropy.hpp"
#include "lclt/exact_pmf.hpp"
#include "oracles.hpp"

using namespace lclt;
using namespace lclt::aniso;

TEST(RingPoints, Examples) {
  const RingPoints even = pick_ring_points(1000, 100);
  EXPECT_EQ(even.axis.x, 100);
  EXPECT_EQ(even.axis.y, 0);
  EXPECT_EQ(even.diag.x, 71);
  EXPECT_EQ(even.diag.y, 71);

  const RingPoints origin = pick_ring_points(10, 0);
  EXPECT_EQ(origin.axis.x, 0);
  EXPECT_EQ(origin.diag.x, 0);
  EXPECT_EQ(origin.diag.y, 0);

  const RingPoints odd = pick_ring_points(1001, 100);
  EXPECT_TRUE(odd.axis.parity_ok());
  EXPECT_TRUE(odd.diag.parity_ok());
  EXPECT_EQ(odd.diag.y, odd.diag.x + 1);

  EXPECT_THROW(pick_ring_points(10, 11), DomainError);
  EXPECT_THROW(pick_ring_points(10, -1), DomainError);
}

TEST(RingPoints, ParityAndRadiusInvariants) {
  for (std::int64_t n : {2, 3, 50, 51, 1000, 1001}) {
    for (std::int64_t r = 0; r <= n; ++r) {
      RingPoints p;
      try {
        p = pick_ring_points(n, r);
      } catch (const DomainError&) {
        // only the outermost radii can lack a parity-compatible diagonal point
        EXPECT_GT(2 * r, n) << n << " " << r;
        continue;
      }
      for (const LatticeQuery2D& q : {p.axis, p.diag}) {
        EXPECT_TRUE(q.reachable()) << n << " " << r;
        EXPECT_LE(std::abs(std::hypot(double(q.x), double(q.y)) - double(r)), 2.0);
      }
      EXPECT_EQ(p.axis.y, 0);
      EXPECT_LE(std::abs(p.diag.y - p.diag.x), 1);
    }
  }
}

TEST(Predicted, Values) {
  const PredictedRatio p = predicted_log_ratio(1000000, 125892);
  EXPECT_NEAR(p.magnitude, std::pow(125892.0, 4) / 6e18, 1e-9);
  EXPECT_NEAR(p.magnitude, 41.9, 0.05);
  EXPECT_NEAR(p.band, std::pow(125892.0, 6) / 1e30, 1e-9);
  EXPECT_EQ(predicted_log_ratio(100, 0).magnitude, 0.0);
}

TEST(Measure, MatchesRotationOracle) {
  for (auto [n, r] : {std::pair<std::int64_t, std::int64_t>{400, 60}, {401, 77}, {2000, 300}}) {
    const AnisotropyRecord rec = measure_anisotropy(n, r);
    const auto row = oracle::pascal_row(n);
    const auto lp = [&](const LatticeQuery2D& q) {
      return oracle::log_rational(oracle::pmf2d_rotation(row, q.x, q.y));
    };
    EXPECT_NEAR(rec.log_p_axis, lp(rec.axis_point), 1e-12 * std::abs(rec.log_p_axis));
    EXPECT_NEAR(rec.log_p_diag, lp(rec.diag_point), 1e-12 * std::abs(rec.log_p_diag));
    EXPECT_DOUBLE_EQ(rec.log_ratio_exact, rec.log_p_diag - rec.log_p_axis);
    EXPECT_EQ(rec.log_ratio_predicted, -predicted_log_ratio(n, r).magnitude);
  }
}

TEST(Measure, DiagonalLosesMassAtLargeRadius) {
  // the diagonal exponent carries twice the quartic correction of the axis
  const AnisotropyRecord rec = measure_anisotropy(100000, 20000);
  EXPECT_LT(rec.log_ratio_exact, 0.0);
  EXPECT_NEAR(rec.log_ratio_exact / rec.log_ratio_predicted, 1.0, 0.15);
  EXPECT_FALSE(rec.within_corollary_range);
  EXPECT_TRUE(measure_anisotropy(100000, 500).within_corollary_range);
}

TEST(Sweep, SortedMonotoneAndTolerant) {
  const std::int64_t n = 20000;
  const SweepResult s = symmetry_radius_sweep(n, {3000, 100, 1000, 20001, 5000});
  ASSERT_EQ(s.records.size(), 5u);
  for (std::size_t i = 1; i < s.records.size(); ++i) {
    EXPECT_LE(s.records[i - 1].r, s.records[i].r);
  }
  EXPECT_TRUE(s.records.back().error.has_value());  // r > n
  EXPECT_TRUE(s.monotone_beyond_threshold);

  const ThresholdSummary t = threshold_summary(s);
  ASSERT_TRUE(t.largest_symmetric_r.has_value());
  EXPECT_LE(*t.largest_symmetric_r, 3000);

  const SweepResult empty = symmetry_radius_sweep(n, {});
  EXPECT_TRUE(empty.records.empty());
  EXPECT_TRUE(empty.monotone_beyond_threshold);
}

TEST(AutoGrid, ExactPowers) {
  const auto g = auto_radius_grid(1000000);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0], 1000);
  EXPECT_EQ(g[1], 15848);
  EXPECT_EQ(g[2], 31622);
  EXPECT_EQ(g[3], 63095);
  EXPECT_EQ(g[4], 125892);
  EXPECT_EQ(auto_radius_grid(10000)[0], 100);
}
