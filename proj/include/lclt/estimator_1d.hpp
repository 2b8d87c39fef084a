#pragma once

// Closed-form estimators of P(S(n)=x) for simple random walk on Z.
//
// Every estimator returns an Estimate whose error_band is C * shape(n, x),
// C being a frozen calibration constant (lclt/calibration.hpp) and shape the
// order of the remainder term, exposed below for calibration.

#include <cstdint>
#include <string>

#include "lclt/types.hpp"

namespace lclt::est1d {

enum class RegimeTag { Sublinear, LinearInterior, NearBoundary, Boundary };

struct Regime1D {
  RegimeTag tag = RegimeTag::Sublinear;
  double a = 0.0;           ///< |x|/n, set for LinearInterior
  std::int64_t offset = 0;  ///< n - |x|, set for NearBoundary and Boundary

  std::string label() const;
};

/// Total on |x| <= n, with L = log(max(n,3)):
///   Boundary        |x| = n
///   NearBoundary    0 < n - |x| <= n / L^2
///   Sublinear       |x| <= n / L
///   LinearInterior  otherwise, a = |x|/n
/// Throws DomainError when |x| > n or n < 1.
Regime1D classify_regime(std::int64_t n, std::int64_t x);

/// log of 2 (d / (2 pi n))^{d/2} exp(-d |x|^2 / (2n)), |x| the Euclidean norm.
/// Parity is not checked. Requires n >= 1 and d in {1, 2}.
LogProb baseline_pbar(std::int64_t n, double norm, int d);

/// baseline_pbar as an Estimate in 1D; band C (1/n + x^4/n^3).
Estimate baseline_1d(std::int64_t n, std::int64_t x);

/// sqrt(2/(pi n)) exp(-x^2/(2n)); band C (1/n + x^4/n^3).
Estimate lawler_limic_1d(std::int64_t n, std::int64_t x);

/// Regime-dispatched estimate with phi = phi(n, x) in closed form:
///   Sublinear       sqrt(2/(pi n)) e^phi                       band C (x^2/n^2 + 1/n)
///   LinearInterior  sqrt(2/(pi n)) (1-a^2)^{-1/2} e^phi        band C / (n (1-a^2))
///   NearBoundary    e^phi / sqrt(pi l) times c in [e^{-10/39}, 1], l = n - |x|,
///                   reported as the interval [upper e^{-10/39}, upper]   band C l / n
///   Boundary        2^{-n}                                     band 0
/// Parity violation returns an exact zero with band 0.
Estimate lclt_1d(std::int64_t n, std::int64_t x);

/// sqrt(2/(pi n)) exp(-sum_{l<N} x^{2l} / (2l(2l-1) n^{2l-1}));
/// band C (x^{2N}/n^{2N-1} + 1/n + x^2/n^2). Requires N >= 2.
Estimate lclt_1d_truncated(std::int64_t n, std::int64_t x, int N);

/// log P(S(n)=x) <= log(sqrt(2/pi)) + phi(n,x), checked against the exact log.
/// Requires n >= 1 and |x| < n; parity-violating points hold trivially.
bool upper_bound_check(std::int64_t n, std::int64_t x);

/// Band shapes (the estimator's band divided by its constant).
double shape_lawler_limic(double n, double x);
double shape_lclt(const Regime1D& regime, double n, double x);
double shape_truncated(double n, double x, int N);

/// Calibration key of lclt_1d in the given regime (empty for Boundary).
std::string lclt_calibration_key(const Regime1D& regime);

}  // namespace lclt::est1d
