#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lclt/exact_pmf.hpp"
#include "oracles.hpp"

using namespace lclt;
using namespace lclt::exact;

TEST(Pmf1dRational, Examples) {
  EXPECT_EQ(pmf1d_exact_rational({4, 2}).str(), "1/4");
  EXPECT_TRUE(pmf1d_exact_rational({3, 2}).is_zero());
  EXPECT_EQ(pmf1d_exact_rational({7, 7}).str(), "1/128");
  EXPECT_EQ(pmf1d_exact_rational({0, 0}).str(), "1");
  EXPECT_TRUE(pmf1d_exact_rational({5, 6}).is_zero());
  EXPECT_THROW(pmf1d_exact_rational({-1, 0}), DomainError);
}

TEST(Pmf1dRational, MatchesPascalTriangle) {
  for (std::int64_t n : {1, 2, 9, 40, 101}) {
    const auto row = oracle::pascal_row(n);
    for (std::int64_t x = -n - 2; x <= n + 2; ++x) {
      const auto got = pmf1d_exact_rational({n, x});
      EXPECT_EQ(got.value(), oracle::pmf1d(row, x)) << "n=" << n << " x=" << x;
      EXPECT_TRUE(got.dyadic_denominator());
    }
  }
}

TEST(Pmf1dLog, Examples) {
  EXPECT_NEAR(pmf1d_exact_log({4, 2}).log(), std::log(0.25), 1e-15);
  EXPECT_NEAR(pmf1d_exact_log({2, -2}).log(), std::log(0.25), 1e-15);
  EXPECT_TRUE(pmf1d_exact_log({3, 2}).is_zero());
  EXPECT_TRUE(pmf1d_exact_log({0, 2}).is_zero());
  EXPECT_EQ(pmf1d_exact_log({0, 0}).log(), 0.0);
  const double ref = 0.5 * std::log(2.0 / (std::numbers::pi * 1e6));
  const double v = pmf1d_exact_log({1000000, 0}).log();
  EXPECT_LE(v, ref);
  EXPECT_GE(v, ref - 1e-6);
}

TEST(Pmf1dLog, MatchesRationalUpTo60) {
  for (std::int64_t n = 1; n <= 60; ++n) {
    for (std::int64_t x = -n; x <= n; x += 2) {
      const double want = oracle::log_rational(pmf1d_exact_rational({n, x}).value());
      const double got = pmf1d_exact_log({n, x}).log();
      EXPECT_LE(std::abs(got - want), 1e-12 * std::max(1.0, std::abs(want))) << n << "," << x;
    }
  }
}

TEST(Pmf1dLog, MatchesLgammaAtLargeN) {
  for (std::int64_t n : {100000, 10000000, 100000000}) {
    for (std::int64_t x : {std::int64_t{0}, n / 1000 * 2, n / 2, n - 2}) {
      const long double want = oracle::log_pmf1d_lgamma(n, x);
      const double got = pmf1d_exact_log({n, x}).log();
      EXPECT_LE(std::abs(got - static_cast<double>(want)), 1e-12 * std::abs(static_cast<double>(want)) + 1e-9)
          << n << "," << x;
    }
  }
}

TEST(Pmf2dRational, Examples) {
  EXPECT_EQ(pmf2d_exact_rational({1, 1, 0}).str(), "1/4");
  EXPECT_EQ(pmf2d_exact_rational({2, 0, 0}).str(), "1/4");
  EXPECT_EQ(pmf2d_exact_rational({2, 1, 1}).str(), "1/8");
  EXPECT_EQ(pmf2d_exact_rational({4, 4, 0}).str(), "1/256");
  EXPECT_EQ(pmf2d_exact_rational({0, 0, 0}).str(), "1");
  EXPECT_TRUE(pmf2d_exact_rational({3, 1, 1}).is_zero());
}

TEST(Pmf2dRational, MatchesBruteForceEnumeration) {
  for (int n = 0; n <= 8; ++n) {
    const auto counts = oracle::enumerate_paths_2d(n);
    for (int x = -n; x <= n; ++x) {
      for (int y = -n; y <= n; ++y) {
        const auto it = counts.find({x, y});
        const mpz_class c = it == counts.end() ? 0 : mpz_class(static_cast<unsigned long>(it->second));
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 4, static_cast<unsigned long>(n));
        mpq_class want(c, den);
        want.canonicalize();
        EXPECT_EQ(pmf2d_exact_rational({n, x, y}).value(), want) << n << ":" << x << "," << y;
      }
    }
  }
}

TEST(Pmf2dRational, MatchesDpAndRotationIdentity) {
  for (std::int64_t n : {5, 12, 24}) {
    const PathCountTable dp(n);
    const auto row = oracle::pascal_row(n);
    for (std::int64_t x = -n; x <= n; ++x) {
      for (std::int64_t y = -n; y <= n; ++y) {
        const auto q = pmf2d_exact_rational({n, x, y});
        EXPECT_EQ(q, dp.probability(x, y));
        EXPECT_EQ(q.value(), oracle::pmf2d_rotation(row, x, y));
      }
    }
  }
}

TEST(Pmf2dRational, DenominatorIsPowerOfFourUnreduced) {
  const auto q = pmf2d_exact_rational({10, 3, 1});
  // reduced denominator divides 4^n
  mpz_class four_n;
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, 10);
  EXPECT_TRUE(mpz_divisible_p(four_n.get_mpz_t(), q.denominator().get_mpz_t()));
  EXPECT_TRUE(q.dyadic_denominator());
}

TEST(Pmf2dLog, MatchesRational) {
  EXPECT_NEAR(pmf2d_exact_log({2, 0, 0}).log(), std::log(0.25), 1e-12);
  for (std::int64_t n = 1; n <= 24; ++n) {
    for (std::int64_t x = -n; x <= n; ++x) {
      for (std::int64_t y = -n; y <= n; ++y) {
        const auto q = pmf2d_exact_rational({n, x, y});
        const double got = pmf2d_exact_log({n, x, y}).log();
        if (q.is_zero()) {
          EXPECT_TRUE(std::isinf(got));
          continue;
        }
        const double want = oracle::log_rational(q.value());
        EXPECT_LE(std::abs(got - want), 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST(Pmf2dLog, RotationIdentityAtLargeN) {
  // P2(n,(x,y)) = p1(n,x+y) p1(n,x-y) gives an independent O(1) log value.
  for (std::int64_t n : {1000, 100000, 1000000}) {
    for (auto [x, y] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {0, 0}, {10, 20}, {n / 100, n / 50}, {n / 10, 0}, {n / 4, n / 4}}) {
      if ((n + x + y) % 2 != 0) ++y;
      const double want =
          static_cast<double>(oracle::log_pmf1d_lgamma(n, x + y) + oracle::log_pmf1d_lgamma(n, x - y));
      const double got = pmf2d_exact_log({n, x, y}).log();
      EXPECT_LE(std::abs(got - want), 1e-11 * std::abs(want) + 1e-10) << n << ":" << x << "," << y;
    }
  }
}

TEST(Parity, AnnihilatesOddPoints) {
  for (std::int64_t n = 0; n <= 24; ++n) {
    for (std::int64_t x = -n; x <= n; ++x) {
      if ((n + x) % 2 != 0) EXPECT_TRUE(pmf1d_exact_rational({n, x}).is_zero());
      for (std::int64_t y = -n; y <= n; ++y) {
        if ((n + x + y) % 2 != 0) EXPECT_TRUE(pmf2d_exact_rational({n, x, y}).is_zero());
      }
    }
  }
}

TEST(Symmetry, DihedralOnExactRationals) {
  for (std::int64_t n : {7, 16, 24}) {
    for (std::int64_t x = 0; x <= n; ++x) {
      for (std::int64_t y = 0; x + y <= n; ++y) {
        const auto p = pmf2d_exact_rational({n, x, y});
        for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{
                 {-x, y}, {x, -y}, {-x, -y}, {y, x}, {-y, x}, {y, -x}, {-y, -x}}) {
          EXPECT_EQ(p, pmf2d_exact_rational({n, a, b}));
        }
      }
    }
    for (std::int64_t x = 0; x <= n; ++x) EXPECT_EQ(pmf1d_exact_rational({n, x}), pmf1d_exact_rational({n, -x}));
  }
}

TEST(TotalMass, ExactlyOne) {
  const ExactRational one(mpq_class(1));
  EXPECT_EQ(total_mass_1d(5), one);
  EXPECT_EQ(total_mass_1d(0), one);
  EXPECT_EQ(total_mass_1d(333), one);
  EXPECT_EQ(total_mass_2d(0), one);
  EXPECT_EQ(total_mass_2d(6), one);
  EXPECT_EQ(total_mass_2d(17), one);
}
