#include "lclt/estimator_2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lclt/calibration.hpp"
#include "lclt/estimator_1d.hpp"

namespace lclt::est2d {

namespace {

constexpr int kCachedK = 64;

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

double log_scale(std::int64_t n) { return std::log(static_cast<double>(std::max<std::int64_t>(n, 3))); }

double log_regular_prefactor(double n) { return std::log(2.0 / (std::numbers::pi * n)); }

void require_point(std::int64_t n, std::int64_t x, std::int64_t y) {
  if (n < 1) throw DomainError("estimators need n >= 1");
  if (iabs(x) + iabs(y) > n) throw DomainError("estimators need |x| + |y| <= n");
}

// Normalizes, classifies and enforces the regime. Returns the normalized
// point; `e` receives the regime label and the out-of-guarantee flag.
OctantPoint prepare(std::int64_t n, std::int64_t x, std::int64_t y, Regime2D wanted,
                    const Options& opt, Estimate& e) {
  require_point(n, x, y);
  const OctantPoint p = normalize_octant(x, y);
  const Regime2D r = classify_regime(n, p.x, p.y);
  e.regime = label(r);
  if (r != wanted) {
    if (!opt.allow_out_of_guarantee) {
      throw RegimeError("point (" + std::to_string(x) + "," + std::to_string(y) + ") at n=" +
                            std::to_string(n) + " is " + label(r) + ", not " + label(wanted),
                        label(r));
    }
    e.out_of_guarantee = true;
  }
  return p;
}

// -sum_l n z^{2l} / (2l(2l-1)) for real z = 2j/n with |z| < 1, i.e. the j-series.
struct JSeries {
  double value = 0.0;
  double tail = 0.0;
  int terms = 0;
  bool converged = true;
};

JSeries j_series(double n, double j, const SeriesSpec& spec) {
  JSeries out;
  const double z2 = std::pow(2.0 * j / n, 2);
  if (z2 == 0.0) {
    out.terms = 1;
    return out;
  }
  double pw = z2, partial = 0.0, next = 0.0;
  int l = 1;
  for (;; ++l) {
    partial += n * pw / (2.0 * l * (2.0 * l - 1.0));
    pw *= z2;
    next = n * pw / (2.0 * (l + 1) * (2.0 * l + 1.0));
    if (next <= spec.rel_tail_tol * partial || l >= spec.max_terms) break;
  }
  out.value = -partial;
  out.terms = l;
  out.tail = next / (1.0 - z2);
  out.converged = next <= spec.rel_tail_tol * partial;
  return out;
}

}  // namespace

std::string label(Regime2D r) {
  switch (r) {
    case Regime2D::Regular:
      return "Regular";
    case Regime2D::Irregular:
      return "Irregular";
    case Regime2D::OutOfTheoremRange:
      return "OutOfTheoremRange";
  }
  return "";
}

Regime2D classify_regime(std::int64_t n, std::int64_t x, std::int64_t y) {
  require_point(n, x, y);
  const double dn = static_cast<double>(n);
  const double L = log_scale(n);
  const double dx = static_cast<double>(x), dy = static_cast<double>(y);
  const double r2 = dx * dx + dy * dy;
  if (r2 > dn * dn / (L * L * L * L)) return Regime2D::OutOfTheoremRange;
  const double d = std::abs(dy * dy - dx * dx);
  return d <= std::pow(dn, 1.5) / L ? Regime2D::Regular : Regime2D::Irregular;
}

OctantPoint normalize_octant(std::int64_t x, std::int64_t y) {
  OctantPoint p;
  p.transform.negate_x = x < 0;
  p.transform.negate_y = y < 0;
  p.x = iabs(x);
  p.y = iabs(y);
  if (p.x > p.y) {
    std::swap(p.x, p.y);
    p.transform.swap = true;
  }
  return p;
}

double shape_regular(double n) {
  const double L = std::log(std::max(n, 3.0));
  return 1.0 / (L * L);
}

double shape_truncated(double n, double x, double y, int N) {
  const double r2 = x * x + y * y;
  const double lead =
      r2 == 0.0 ? 0.0 : std::exp(N * std::log(r2) - (2.0 * N - 1.0) * std::log(n));
  return shape_regular(n) + lead;
}

double shape_irregular(double n, double exponent) {
  return (1.0 + std::log(n)) / std::abs(exponent);
}

double shape_baseline(double n, double x, double y) {
  const double r2 = x * x + y * y;
  return 1.0 / n + r2 * r2 / (n * n * n);
}

Estimate lclt_2d_regular(std::int64_t n, std::int64_t x, std::int64_t y, const Options& opt) {
  opt.spec.validate();
  Estimate e;
  const OctantPoint p = prepare(n, x, y, Regime2D::Regular, opt, e);
  if (!LatticeQuery2D{n, x, y}.parity_ok()) {
    e.log_value = LogProb::zero();
    return e;
  }
  const double dn = static_cast<double>(n);
  const series::SkResult s0 =
      series::sk(0, dn, static_cast<double>(p.x), static_cast<double>(p.y), opt.spec);
  if (std::isnan(s0.series.value)) throw DomainError("s_0 diverges at this point");
  e.log_value = LogProb::from_log(std::min(0.0, log_regular_prefactor(dn) - s0.series.value));
  e.error_band = calibration::constant(calibration::kRegular2d) * shape_regular(dn);
  return e;
}

Estimate lclt_2d_truncated(std::int64_t n, std::int64_t x, std::int64_t y, int N,
                           const Options& opt) {
  if (N < 2) throw DomainError("truncation order N must be >= 2");
  Estimate e;
  const OctantPoint p = prepare(n, x, y, Regime2D::Regular, opt, e);
  if (!LatticeQuery2D{n, x, y}.parity_ok()) {
    e.log_value = LogProb::zero();
    return e;
  }
  const double dn = static_cast<double>(n);
  const double u2 = std::pow(2.0 * static_cast<double>(p.x) / dn, 2);
  const double v2 = std::pow(2.0 * static_cast<double>(p.y) / dn, 2);
  double sum = 0.0;
  for (int l = N - 1; l >= 1; --l) {
    sum += dn * (std::pow(u2, l) + std::pow(v2, l)) / (4.0 * l * (2.0 * l - 1.0));
  }
  e.log_value = LogProb::from_log(std::min(0.0, log_regular_prefactor(dn) - sum));
  e.error_band = calibration::constant(calibration::kRegular2dTruncated) *
                 shape_truncated(dn, static_cast<double>(p.x), static_cast<double>(p.y), N);
  return e;
}

Estimate lclt_2d_irregular(std::int64_t n, std::int64_t x, std::int64_t y, const Options& opt) {
  opt.spec.validate();
  Estimate e;
  e.contract = Contract::LogAsymptotic;
  const OctantPoint p = prepare(n, x, y, Regime2D::Irregular, opt, e);
  if (!LatticeQuery2D{n, x, y}.parity_ok()) {
    e.log_value = LogProb::zero();
    e.contract = Contract::Relative;
    return e;
  }
  const double dn = static_cast<double>(n);
  const double D = static_cast<double>(p.y) * static_cast<double>(p.y) -
                   static_cast<double>(p.x) * static_cast<double>(p.x);
  const SaddleFunction f(n, p.x, p.y, opt.spec);
  const SaddleFunction::Value v = f.evaluate(-D / (2.0 * dn));
  if (!v.converged) throw DomainError("saddle series did not converge at this point");
  e.log_value = LogProb::from_log(std::min(0.0, v.value));
  e.error_band = calibration::constant(calibration::kIrregular2d) * shape_irregular(dn, v.value);
  return e;
}

Estimate baseline_2d(std::int64_t n, std::int64_t x, std::int64_t y) {
  require_point(n, x, y);
  const OctantPoint p = normalize_octant(x, y);
  Estimate e;
  e.regime = label(classify_regime(n, p.x, p.y));
  if (!LatticeQuery2D{n, x, y}.parity_ok()) {
    e.log_value = LogProb::zero();
    return e;
  }
  const double dx = static_cast<double>(p.x), dy = static_cast<double>(p.y);
  e.log_value = est1d::baseline_pbar(n, std::hypot(dx, dy), 2);
  e.error_band = calibration::constant(calibration::kBaseline2d) *
                 shape_baseline(static_cast<double>(n), dx, dy);
  return e;
}

SaddleFunction::SaddleFunction(std::int64_t n, std::int64_t x, std::int64_t y,
                               const SeriesSpec& spec)
    : n_(n), x_(iabs(x)), y_(iabs(y)), spec_(spec) {
  spec_.validate();
  if (n < 1) throw DomainError("saddle function needs n >= 1");
  if (2 * std::max(x_, y_) >= n) throw DomainError("saddle series needs 2 max(|x|,|y|) < n");
  cache_.reserve(kCachedK);
  for (int k = 0; k < kCachedK; ++k) cache_.push_back(s(k));
}

series::SkResult SaddleFunction::s(int k) const {
  if (k < static_cast<int>(cache_.size())) return cache_[static_cast<std::size_t>(k)];
  return series::sk_scaled(k, static_cast<double>(n_), static_cast<double>(x_),
                           static_cast<double>(y_), spec_);
}

double SaddleFunction::j_limit() const {
  return 0.5 * static_cast<double>(n_ - 2 * std::max(x_, y_));
}

SaddleFunction::Value SaddleFunction::evaluate(double j) const {
  if (!(std::abs(j) < j_limit())) {
    throw DomainError("saddle series needs 2 max(|x|,|y|) + 2|j| < n");
  }
  const double dn = static_cast<double>(n_);
  const series::SkResult s0 = s(0);
  const JSeries js = j_series(dn, j, spec_);

  Value out;
  out.j_terms = js.terms;
  out.converged = js.converged && s0.series.converged;
  double value = -s0.series.value + js.value;
  double scale = s0.scale + std::abs(js.value);
  double tail = js.tail + s0.series.tail_bound;

  // sum_{k>=1} j^k s_k = sum_k w^k (n/2)^k s_k with w = 2j/n, |w| < 1. The
  // magnitudes |w|^k scale_k dominate the terms; the remainder is estimated
  // geometrically from their last ratio.
  if (j != 0.0) {
    const double w = 2.0 * j / dn;
    const double log_w = std::log(std::abs(w));
    const auto magnitude = [&](const series::SkResult& r, int k) {
      return r.scale > 0.0 ? std::exp(k * log_w + std::log(r.scale)) : 0.0;
    };
    series::SkResult cur = s(1);
    double cur_mag = magnitude(cur, 1);
    bool done = false;
    int k = 1;
    for (; k <= spec_.max_terms; ++k) {
      if (!cur.series.converged) out.converged = false;
      tail += cur.series.tail_bound > 0.0 ? std::exp(k * log_w + std::log(cur.series.tail_bound))
                                          : 0.0;
      if (cur.series.value != 0.0) {
        const double sign = (cur.series.value < 0.0) != (j < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
        value -= sign * std::exp(k * log_w + std::log(std::abs(cur.series.value)));
      }
      scale += cur_mag;
      const series::SkResult nxt = s(k + 1);
      const double nxt_mag = magnitude(nxt, k + 1);
      if (cur_mag == 0.0) {
        done = nxt_mag == 0.0;
        if (done) break;
      } else {
        const double q = nxt_mag / cur_mag;
        const double rest = q < 1.0 ? nxt_mag / (1.0 - q) : std::numeric_limits<double>::infinity();
        if (rest <= spec_.rel_tail_tol * scale) {
          tail += rest;
          done = true;
          break;
        }
      }
      cur = nxt;
      cur_mag = nxt_mag;
    }
    out.k_terms = std::min(k, spec_.max_terms);
    if (!done) out.converged = false;
  }
  out.value = value;
  out.tail_bound = tail;
  return out;
}

double saddle_f(std::int64_t n, std::int64_t x, std::int64_t y, double j, const SeriesSpec& spec) {
  return SaddleFunction(n, x, y, spec)(j);
}

SaddleInfo saddle_max(std::int64_t n, std::int64_t x, std::int64_t y, const SeriesSpec& spec) {
  if (n < 1) throw DomainError("saddle_max needs n >= 1");
  // D = y^2 - x^2 may be negative; floor/ceil of D/(2n) in integer arithmetic.
  const std::int64_t D = y * y - x * x;
  const std::int64_t den = 2 * n;
  std::int64_t fl = D / den;
  if (D % den != 0 && D < 0) --fl;
  const std::int64_t ce = (D % den == 0) ? fl : fl + 1;
  SaddleInfo info;
  info.j0 = -fl;
  info.j0p = -ce;
  const SaddleFunction f(n, x, y, spec);
  info.f_at_max = std::max(f(static_cast<double>(info.j0)), f(static_cast<double>(info.j0p)));
  return info;
}

}  // namespace lclt::est2d
