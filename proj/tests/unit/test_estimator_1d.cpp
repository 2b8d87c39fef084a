#include <cmath>
#include <cstdint>
#include <numbers>

#include <gtest/gtest.h>

#include "lclt/calibration.hpp"
#include "lclt/estimator_1d.hpp"
#include "lclt/exact_pmf.hpp"
#include "lclt/series_kernels.hpp"
#include "oracles.hpp"

using namespace lclt;
using namespace lclt::est1d;

namespace {

const double kPi = std::numbers::pi;

// floor(n^e), moved one step toward the origin when the parity is wrong.
std::int64_t profile_point(std::int64_t n, double e) {
  auto x = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), e)));
  if ((n + x) % 2 != 0) --x;
  return x;
}

double exact_log(std::int64_t n, std::int64_t x) {
  return static_cast<double>(oracle::log_pmf1d_lgamma(n, x));
}

double log_sqrt_2_over_pi_n(double n) { return 0.5 * std::log(2.0 / (kPi * n)); }

}  // namespace

TEST(BaselinePbar, Examples) {
  EXPECT_NEAR(baseline_pbar(4, 2, 1).log(), std::log(2 * std::sqrt(1 / (8 * kPi)) * std::exp(-0.5)), 1e-14);
  for (std::int64_t n : {1, 10, 12345}) {
    EXPECT_NEAR(baseline_pbar(n, 0, 1).log(), std::log(2 / std::sqrt(2 * kPi * n)), 1e-14);
  }
  EXPECT_NEAR(baseline_pbar(100, 0, 2).log(), std::log(1 / (50 * kPi)), 1e-14);
  EXPECT_THROW(baseline_pbar(0, 0, 1), DomainError);
  EXPECT_THROW(baseline_pbar(10, 0, 3), DomainError);
}

TEST(LawlerLimic, Examples) {
  EXPECT_NEAR(lawler_limic_1d(100, 0).log_value.log(), log_sqrt_2_over_pi_n(100), 1e-14);

  const Estimate e = lawler_limic_1d(1000000, 1000);
  EXPECT_NEAR(e.log_value.log(), -0.5 + log_sqrt_2_over_pi_n(1e6), 1e-14);
  EXPECT_NEAR(e.error_band, calibration::constant(calibration::kLawlerLimic) * 2e-6, 1e-18);

  const double shape = shape_lawler_limic(1e4, 1585);
  EXPECT_NEAR(shape, 1e-4 + std::pow(1585.0, 4) / 1e12, 1e-12);
  EXPECT_GT(shape, 6.0);
  EXPECT_LT(shape, 6.4);

  EXPECT_TRUE(lawler_limic_1d(11, 4).log_value.is_zero());
}

TEST(ClassifyRegime, Examples) {
  EXPECT_EQ(classify_regime(1000000, 100).tag, RegimeTag::Sublinear);
  EXPECT_EQ(classify_regime(1000000, 1000000).tag, RegimeTag::Boundary);
  EXPECT_EQ(classify_regime(1000000, -1000000).tag, RegimeTag::Boundary);
  const Regime1D li = classify_regime(1000000, 500000);
  EXPECT_EQ(li.tag, RegimeTag::LinearInterior);
  EXPECT_EQ(li.a, 0.5);
  const Regime1D nb = classify_regime(10000, 9990);
  EXPECT_EQ(nb.tag, RegimeTag::NearBoundary);
  EXPECT_EQ(nb.offset, 10);
  EXPECT_THROW(classify_regime(10, 11), DomainError);
  EXPECT_THROW(classify_regime(0, 0), DomainError);
}

TEST(ClassifyRegime, TotalAndConsistentWithCutoffs) {
  for (std::int64_t n = 1; n <= 400; ++n) {
    const double L = std::log(std::max(static_cast<double>(n), 3.0));
    for (std::int64_t x = -n; x <= n; ++x) {
      const Regime1D r = classify_regime(n, x);
      const auto ax = static_cast<double>(std::abs(x));
      switch (r.tag) {
        case RegimeTag::Boundary:
          EXPECT_EQ(ax, n);
          break;
        case RegimeTag::NearBoundary:
          EXPECT_GT(n - ax, 0);
          EXPECT_LE(n - ax, n / (L * L));
          EXPECT_EQ(r.offset, n - std::abs(x));
          break;
        case RegimeTag::Sublinear:
          EXPECT_LE(ax, n / L);
          break;
        case RegimeTag::LinearInterior:
          EXPECT_GT(r.a, 0.0);
          EXPECT_LT(r.a, 1.0);
          EXPECT_EQ(r.a, ax / n);
          break;
      }
      EXPECT_EQ(r.tag, classify_regime(n, -x).tag);
    }
  }
}

TEST(Lclt1d, Examples) {
  const Estimate origin = lclt_1d(1000000, 0);
  EXPECT_EQ(origin.regime, "Sublinear");
  EXPECT_NEAR(origin.log_value.log(), log_sqrt_2_over_pi_n(1e6), 1e-14);
  EXPECT_NEAR(origin.error_band, calibration::constant(calibration::kLclt1dSublinear) * 1e-6, 1e-18);

  const Estimate edge = lclt_1d(20, 20);
  EXPECT_EQ(edge.regime, "Boundary");
  EXPECT_NEAR(edge.log_value.log(), -20 * std::numbers::ln2, 1e-13);
  EXPECT_EQ(edge.error_band, 0.0);
  EXPECT_NEAR(edge.log_value.log(), exact::pmf1d_exact_log({20, 20}).log(), 1e-13);

  const Estimate nb = lclt_1d(10000, 9990);
  ASSERT_TRUE(nb.log_lower.has_value());
  const double upper = series::phi_closed_form(10000, 9990).value - 0.5 * std::log(10 * kPi);
  EXPECT_NEAR(nb.log_value.log(), upper, 1e-10);
  EXPECT_NEAR(*nb.log_lower, upper - 10.0 / 39.0, 1e-10);
  const double exact = exact::pmf1d_exact_log({10000, 9990}).log();
  EXPECT_LE(*nb.log_lower, exact);
  EXPECT_LE(exact, nb.log_value.log());
  EXPECT_EQ(nb.error_against(exact), 0.0);
}

TEST(Lclt1d, ParityViolationIsExactZero) {
  for (auto [n, x] : {std::pair<std::int64_t, std::int64_t>{1, 0}, {10, 3}, {1001, 1000 - 2}}) {
    const Estimate e = lclt_1d(n, x);
    EXPECT_TRUE(e.log_value.is_zero()) << n << "," << x;
    EXPECT_EQ(e.error_band, 0.0);
  }
}

TEST(Lclt1d, SymmetricInX) {
  for (std::int64_t n : {100, 1001, 65536}) {
    for (std::int64_t x = 0; x <= n; x += std::max<std::int64_t>(1, n / 97)) {
      EXPECT_EQ(lclt_1d(n, x).log_value, lclt_1d(n, -x).log_value);
    }
  }
}

TEST(Lclt1d, WithinBandAcrossRegimes) {
  for (std::int64_t n : {64, 100, 1000, 4097, 65536, 1000000}) {
    const std::int64_t step = std::max<std::int64_t>(2, (n / 301) * 2);
    for (std::int64_t x = n % 2; x <= n; x += step) {
      const Estimate e = lclt_1d(n, x);
      const double exact = exact_log(n, x);
      EXPECT_TRUE(e.within_band(exact))
          << "n=" << n << " x=" << x << " " << e.regime << " err=" << e.error_against(exact)
          << " band=" << e.error_band;
    }
  }
}

TEST(Lclt1d, RegimesAgreeAtTheSublinearCutoff) {
  for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
    const double L = std::log(static_cast<double>(n));
    auto x = static_cast<std::int64_t>(std::floor(n / L));
    if ((n + x) % 2 != 0) --x;
    const Estimate sub = lclt_1d(n, x);
    ASSERT_EQ(sub.regime, "Sublinear");
    const double a = static_cast<double>(x) / n;
    const double li = log_sqrt_2_over_pi_n(n) - 0.5 * std::log1p(-a * a) +
                      series::phi_closed_form(n, x).value;
    const double li_band = calibration::constant(calibration::kLclt1dLinearInterior) /
                           (n * (1 - a * a));
    const double gap = std::abs(std::expm1(li - sub.log_value.log()));
    EXPECT_LE(gap, sub.error_band + li_band) << n;

    const Estimate next = lclt_1d(n, x + 2);
    ASSERT_EQ(next.regime, "LinearInterior");
  }
}

TEST(Lclt1d, ErrorDecaysAlongSqrtProfile) {
  double prev = 1.0;
  for (int k = 12; k <= 24; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    const std::int64_t x = profile_point(n, 0.6);
    const double err = lclt_1d(n, x).error_against(exact::pmf1d_exact_log({n, x}).log());
    EXPECT_LT(err, prev) << "n=2^" << k;
    prev = err;
  }
}

TEST(Lclt1d, LawlerLimicBreaksDownBeyondThreeQuarters) {
  double prev = 0.0;
  for (int k = 12; k <= 24; k += 2) {
    const std::int64_t n = std::int64_t{1} << k;
    const std::int64_t x = profile_point(n, 0.8);
    const double exact = exact::pmf1d_exact_log({n, x}).log();
    const double ll_gap = std::abs(lawler_limic_1d(n, x).log_value.log() - exact);
    EXPECT_GT(ll_gap, prev) << "n=2^" << k;
    prev = ll_gap;
    if (k >= 20) EXPECT_GT(ll_gap, 1.0);
    EXPECT_TRUE(lclt_1d(n, x).within_band(exact)) << "n=2^" << k;
  }
}

TEST(Truncated, Examples) {
  const double base = log_sqrt_2_over_pi_n(1e6);
  EXPECT_NEAR(lclt_1d_truncated(1000000, 1000, 2).log_value.log(), base - 0.5, 1e-14);
  EXPECT_NEAR(lclt_1d_truncated(10000, 1000, 3).log_value.log(),
              log_sqrt_2_over_pi_n(1e4) - 50.0 - 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(lclt_1d_truncated(1000000, 0, 2).log_value.log(), base, 1e-14);
  EXPECT_THROW(lclt_1d_truncated(100, 0, 1), DomainError);
}

TEST(Truncated, LadderDoesNotExceedPreviousBand) {
  for (std::int64_t n : {256, 4096, 65536, 1048576}) {
    const std::int64_t xmax = profile_point(n, 0.7);
    for (std::int64_t x = n % 2; x <= xmax; x += std::max<std::int64_t>(2, (xmax / 40) * 2)) {
      const double exact = exact_log(n, x);
      for (int N = 2; N <= 6; ++N) {
        const Estimate lo = lclt_1d_truncated(n, x, N);
        const Estimate hi = lclt_1d_truncated(n, x, N + 1);
        const double e_lo = std::abs(lo.log_value.log() - exact);
        const double e_hi = std::abs(hi.log_value.log() - exact);
        EXPECT_LE(e_hi, e_lo + lo.error_band) << "n=" << n << " x=" << x << " N=" << N;
        EXPECT_TRUE(lo.within_band(exact)) << "n=" << n << " x=" << x << " N=" << N;
      }
    }
  }
}

TEST(UpperBound, Examples) {
  EXPECT_TRUE(upper_bound_check(2, 0));
  EXPECT_TRUE(upper_bound_check(1, 0));
  EXPECT_THROW(upper_bound_check(5, 5), DomainError);
}

TEST(UpperBound, HoldsOnSmallGrid) {
  const double log_c = 0.5 * std::log(2 / kPi);
  for (std::int64_t n = 1; n <= 300; ++n) {
    const auto row = oracle::pascal_row(n);
    for (std::int64_t x = -n + 1; x < n; ++x) {
      ASSERT_TRUE(upper_bound_check(n, x)) << n << "," << x;
      if ((n + x) % 2 != 0) continue;
      // independent check from the Pascal row and the long-double rate function
      const double lhs = oracle::log_rational(oracle::pmf1d(row, x));
      EXPECT_LE(lhs, log_c + static_cast<double>(oracle::phi(n, x)) + 1e-12) << n << "," << x;
    }
  }
}
