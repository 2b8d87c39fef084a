#include "lclt/estimator_1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lclt/calibration.hpp"
#include "lclt/exact_pmf.hpp"
#include "lclt/log_math.hpp"

namespace lclt::est1d {

namespace {

constexpr double kBetaFloorLog = -10.0 / 39.0;

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

void require_range(std::int64_t n, std::int64_t x) {
  if (n < 1) throw DomainError("estimators need n >= 1");
  if (iabs(x) > n) throw DomainError("estimators need |x| <= n");
}

double log_scale(std::int64_t n) { return std::log(static_cast<double>(std::max<std::int64_t>(n, 3))); }

// log sqrt(2/(pi n))
double log_gauss_prefactor(double n) { return 0.5 * std::log(2.0 / (std::numbers::pi * n)); }

Estimate parity_zero(const std::string& regime) {
  Estimate e;
  e.log_value = LogProb::zero();
  e.regime = regime;
  return e;
}

bool parity_ok(std::int64_t n, std::int64_t x) { return LatticeQuery1D{n, x}.parity_ok(); }

}  // namespace

std::string Regime1D::label() const {
  switch (tag) {
    case RegimeTag::Sublinear:
      return "Sublinear";
    case RegimeTag::LinearInterior:
      return "LinearInterior";
    case RegimeTag::NearBoundary:
      return "NearBoundary";
    case RegimeTag::Boundary:
      return "Boundary";
  }
  return "";
}

Regime1D classify_regime(std::int64_t n, std::int64_t x) {
  require_range(n, x);
  const std::int64_t ax = iabs(x);
  const double dn = static_cast<double>(n);
  const double L = log_scale(n);
  Regime1D r;
  if (ax == n) {
    r.tag = RegimeTag::Boundary;
  } else if (static_cast<double>(n - ax) <= dn / (L * L)) {
    r.tag = RegimeTag::NearBoundary;
    r.offset = n - ax;
  } else if (static_cast<double>(ax) <= dn / L) {
    r.tag = RegimeTag::Sublinear;
  } else {
    r.tag = RegimeTag::LinearInterior;
    r.a = static_cast<double>(ax) / dn;
  }
  return r;
}

LogProb baseline_pbar(std::int64_t n, double norm, int d) {
  if (n < 1) throw DomainError("baseline needs n >= 1");
  if (d != 1 && d != 2) throw DomainError("baseline supports d = 1 or 2");
  const double dn = static_cast<double>(n);
  const double dd = d;
  const double v = std::log(2.0) + 0.5 * dd * std::log(dd / (2.0 * std::numbers::pi * dn)) -
                   dd * norm * norm / (2.0 * dn);
  return LogProb::from_log(std::min(0.0, v));
}

double shape_lawler_limic(double n, double x) {
  const double x2 = x * x;
  return 1.0 / n + x2 * x2 / (n * n * n);
}

double shape_lclt(const Regime1D& regime, double n, double x) {
  switch (regime.tag) {
    case RegimeTag::Sublinear:
      return x * x / (n * n) + 1.0 / n;
    case RegimeTag::LinearInterior:
      return 1.0 / (n * (1.0 - regime.a * regime.a));
    case RegimeTag::NearBoundary:
      return static_cast<double>(regime.offset) / n;
    case RegimeTag::Boundary:
      return 0.0;
  }
  return 0.0;
}

double shape_truncated(double n, double x, int N) {
  const double lead = std::exp(2.0 * N * std::log(std::abs(x)) - (2.0 * N - 1.0) * std::log(n));
  return (x == 0.0 ? 0.0 : lead) + 1.0 / n + x * x / (n * n);
}

std::string lclt_calibration_key(const Regime1D& regime) {
  switch (regime.tag) {
    case RegimeTag::Sublinear:
      return calibration::kLclt1dSublinear;
    case RegimeTag::LinearInterior:
      return calibration::kLclt1dLinearInterior;
    case RegimeTag::NearBoundary:
      return calibration::kLclt1dNearBoundary;
    case RegimeTag::Boundary:
      return "";
  }
  return "";
}

Estimate baseline_1d(std::int64_t n, std::int64_t x) {
  require_range(n, x);
  if (!parity_ok(n, x)) return parity_zero("parity");
  Estimate e;
  e.log_value = baseline_pbar(n, static_cast<double>(x), 1);
  e.error_band = calibration::constant(calibration::kBaseline1d) *
                 shape_lawler_limic(static_cast<double>(n), static_cast<double>(x));
  e.regime = classify_regime(n, x).label();
  return e;
}

Estimate lawler_limic_1d(std::int64_t n, std::int64_t x) {
  require_range(n, x);
  if (!parity_ok(n, x)) return parity_zero("parity");
  const double dn = static_cast<double>(n);
  const double dx = static_cast<double>(x);
  Estimate e;
  e.log_value = LogProb::from_log(std::min(0.0, log_gauss_prefactor(dn) - dx * dx / (2.0 * dn)));
  e.error_band = calibration::constant(calibration::kLawlerLimic) * shape_lawler_limic(dn, dx);
  e.regime = classify_regime(n, x).label();
  return e;
}

Estimate lclt_1d(std::int64_t n, std::int64_t x) {
  require_range(n, x);
  const Regime1D regime = classify_regime(n, x);
  if (!parity_ok(n, x)) return parity_zero(regime.label());
  const double dn = static_cast<double>(n);
  const double dx = static_cast<double>(iabs(x));
  const double phi = logmath::rate_exponent(dn, dx);

  Estimate e;
  e.regime = regime.label();
  double v = 0.0;
  switch (regime.tag) {
    case RegimeTag::Sublinear:
      v = log_gauss_prefactor(dn) + phi;
      break;
    case RegimeTag::LinearInterior:
      v = log_gauss_prefactor(dn) - 0.5 * std::log1p(-regime.a * regime.a) + phi;
      break;
    case RegimeTag::NearBoundary:
      v = phi - 0.5 * std::log(std::numbers::pi * static_cast<double>(regime.offset));
      e.log_lower = v + kBetaFloorLog;
      break;
    case RegimeTag::Boundary:
      v = -dn * std::numbers::ln2;
      break;
  }
  // The NearBoundary upper end can exceed 1 at very small n; clamp to a probability.
  e.log_value = LogProb::from_log(std::min(0.0, v));
  if (e.log_lower) e.log_lower = std::min(*e.log_lower, 0.0);
  const std::string key = lclt_calibration_key(regime);
  e.error_band = key.empty() ? 0.0 : calibration::constant(key) * shape_lclt(regime, dn, dx);
  return e;
}

Estimate lclt_1d_truncated(std::int64_t n, std::int64_t x, int N) {
  require_range(n, x);
  if (N < 2) throw DomainError("truncation order N must be >= 2");
  const Regime1D regime = classify_regime(n, x);
  if (!parity_ok(n, x)) return parity_zero(regime.label());
  const double dn = static_cast<double>(n);
  const double z2 = std::pow(static_cast<double>(x) / dn, 2);
  // sum_{l<N} n z^{2l} / (2l(2l-1)), smallest terms first
  double sum = 0.0;
  for (int l = N - 1; l >= 1; --l) {
    sum += dn * std::pow(z2, l) / (2.0 * l * (2.0 * l - 1.0));
  }
  Estimate e;
  e.regime = regime.label();
  e.log_value = LogProb::from_log(std::min(0.0, log_gauss_prefactor(dn) - sum));
  e.error_band = calibration::constant(calibration::kLclt1dTruncated) *
                 shape_truncated(dn, static_cast<double>(x), N);
  return e;
}

bool upper_bound_check(std::int64_t n, std::int64_t x) {
  if (n < 1) throw DomainError("upper bound check needs n >= 1");
  if (iabs(x) >= n) throw DomainError("upper bound check needs |x| < n");
  const LatticeQuery1D q{n, x};
  if (!q.parity_ok()) return true;
  const double exact = exact::pmf1d_exact_log(q).log();
  const double bound = 0.5 * std::log(2.0 / std::numbers::pi) +
                       logmath::rate_exponent(static_cast<double>(n), static_cast<double>(iabs(x)));
  return exact <= bound;
}

}  // namespace lclt::est1d
