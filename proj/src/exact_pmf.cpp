#include "lclt/exact_pmf.hpp"

#include <cmath>
#include <numbers>

#include "lclt/log_math.hpp"

namespace lclt::exact {

namespace {

mpz_class binomial(std::int64_t n, std::int64_t k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// Number of n-step 1D paths ending at x (0 when unreachable).
mpz_class paths_1d(std::int64_t n, std::int64_t x) {
  const LatticeQuery1D q{n, x};
  if (!q.reachable()) return 0;
  return binomial(n, (n + x) / 2);
}

// log P(S(n)=x) for a reachable 1D query, n >= 1:
//   phi(n,x) + 1/2 log(2n / (pi (n^2 - x^2))) + r_n - r_k - r_{n-k}.
double log_pmf1d_reachable(std::int64_t n, std::int64_t x) {
  const std::int64_t ax = x < 0 ? -x : x;
  if (ax == n) return -static_cast<double>(n) * std::numbers::ln2;
  const std::int64_t k = (n + ax) / 2;
  const double dn = static_cast<double>(n);
  const double prefactor = 0.5 * (std::log(2.0 * dn) - std::log(std::numbers::pi) -
                                  std::log(static_cast<double>(n + ax)) -
                                  std::log(static_cast<double>(n - ax)));
  const double correction = logmath::stirling_remainder(n) - logmath::stirling_remainder(k) -
                            logmath::stirling_remainder(n - k);
  return logmath::rate_exponent(dn, static_cast<double>(ax)) + prefactor + correction;
}

double log_pmf1d_any(std::int64_t n, std::int64_t x) {
  const LatticeQuery1D q{n, x};
  if (!q.reachable()) return -std::numeric_limits<double>::infinity();
  if (n == 0) return 0.0;
  return log_pmf1d_reachable(n, x);
}

void require_nonnegative(std::int64_t n) {
  if (n < 0) throw DomainError("walk length n must be >= 0");
}

}  // namespace

ExactRational pmf1d_exact_rational(const LatticeQuery1D& q) {
  require_nonnegative(q.n);
  return ExactRational::dyadic(paths_1d(q.n, q.x), static_cast<unsigned long>(q.n));
}

LogProb pmf1d_exact_log(const LatticeQuery1D& q) {
  require_nonnegative(q.n);
  return LogProb::from_log(log_pmf1d_any(q.n, q.x));
}

ExactRational pmf2d_exact_rational(const LatticeQuery2D& q) {
  require_nonnegative(q.n);
  if (!q.reachable()) return ExactRational{};
  const std::int64_t ax = q.x < 0 ? -q.x : q.x;
  const std::int64_t ay = q.y < 0 ? -q.y : q.y;
  mpz_class total = 0;
  for (std::int64_t m = ax; m <= q.n - ay; ++m) {
    if ((m + ax) % 2 != 0) continue;
    total += binomial(q.n, m) * paths_1d(m, ax) * paths_1d(q.n - m, ay);
  }
  return ExactRational::dyadic(total, static_cast<unsigned long>(2 * q.n));
}

LogProb pmf2d_exact_log(const LatticeQuery2D& q) {
  require_nonnegative(q.n);
  if (!q.reachable()) return LogProb::zero();
  if (q.n == 0) return LogProb::one();
  const std::int64_t ax = q.x < 0 ? -q.x : q.x;
  const std::int64_t ay = q.y < 0 ? -q.y : q.y;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>((q.n - ax - ay) / 2 + 1));
  // m = number of horizontal steps; only m with m + x even contribute.
  for (std::int64_t m = ax; m <= q.n - ay; m += 2) {
    terms.push_back(log_pmf1d_any(q.n, 2 * m - q.n) + log_pmf1d_any(m, ax) +
                    log_pmf1d_any(q.n - m, ay));
  }
  return LogProb::from_log(std::min(0.0, logmath::log_sum_exp(terms)));
}

PathCountTable::PathCountTable(std::int64_t n) : n_(n), side_(2 * n + 1) {
  require_nonnegative(n);
  counts_.assign(static_cast<std::size_t>(side_ * side_), mpz_class(0));
  std::vector<mpz_class> next(counts_.size());
  const auto idx = [this](std::int64_t x, std::int64_t y) {
    return static_cast<std::size_t>((x + n_) * side_ + (y + n_));
  };
  counts_[idx(0, 0)] = 1;
  for (std::int64_t step = 1; step <= n; ++step) {
    for (auto& c : next) c = 0;
    for (std::int64_t x = -step; x <= step; ++x) {
      const std::int64_t rest = step - (x < 0 ? -x : x);
      for (std::int64_t y = -rest; y <= rest; ++y) {
        mpz_class& out = next[idx(x, y)];
        if (x - 1 >= -n_) out += counts_[idx(x - 1, y)];
        if (x + 1 <= n_) out += counts_[idx(x + 1, y)];
        if (y - 1 >= -n_) out += counts_[idx(x, y - 1)];
        if (y + 1 <= n_) out += counts_[idx(x, y + 1)];
      }
    }
    counts_.swap(next);
  }
}

const mpz_class& PathCountTable::count(std::int64_t x, std::int64_t y) const {
  if (x < -n_ || x > n_ || y < -n_ || y > n_) return zero_;
  return counts_[static_cast<std::size_t>((x + n_) * side_ + (y + n_))];
}

ExactRational PathCountTable::probability(std::int64_t x, std::int64_t y) const {
  return ExactRational::dyadic(count(x, y), static_cast<unsigned long>(2 * n_));
}

ExactRational total_mass_1d(std::int64_t n) {
  require_nonnegative(n);
  ExactRational total;
  for (std::int64_t x = -n; x <= n; ++x) total += pmf1d_exact_rational({n, x});
  return total;
}

ExactRational total_mass_2d(std::int64_t n) {
  require_nonnegative(n);
  ExactRational total;
  for (std::int64_t x = -n; x <= n; ++x) {
    const std::int64_t rest = n - (x < 0 ? -x : x);
    for (std::int64_t y = -rest; y <= rest; ++y) total += pmf2d_exact_rational({n, x, y});
  }
  return total;
}

}  // namespace lclt::exact
