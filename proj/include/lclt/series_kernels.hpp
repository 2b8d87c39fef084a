#pragma once

// Series and lemma-level quantities behind the local limit theorems:
// the rate exponent phi(n,x), the two-dimensional correction family s_k,
// Stirling-remainder brackets and the three numeric identities that carry
// the error control (Stirling bounds, the log 2 series, the Gaussian tail).

#include <cstdint>
#include <vector>

#include "lclt/types.hpp"

namespace lclt::series {

struct PhiValue {
  double value = 0.0;
  std::int64_t n = 0;
  std::int64_t x = 0;
};

struct PhiSeries {
  PhiValue phi;
  int terms = 0;
  double tail_bound = 0.0;
  bool converged = true;
};

/// n log n - (n+x)/2 log(n+x) - (n-x)/2 log(n-x), with 0 log 0 = 0.
/// Requires n >= 1 and |x| <= n.
PhiValue phi_closed_form(std::int64_t n, std::int64_t x);

/// -sum_{l=1..L} x^{2l} / (2l(2l-1) n^{2l-1}). Stops at the first L whose next
/// term is <= tol * |partial|, or at max_terms. Terms shrink by less than
/// (x/n)^2 each step, so next/(1-(x/n)^2) bounds the remainder.
/// At |x| = n the ratio is 1: the result is flagged not converged with an
/// infinite tail bound (use the closed form there).
PhiSeries phi_series(std::int64_t n, std::int64_t x, const SeriesSpec& spec = {});

struct IdentityResidual {
  double residual = 0.0;
  double tail_bound = 0.0;
  double allowed = 0.0;  ///< tail_bound + 1e-12 |phi|
  bool pass = false;
};

/// |phi_series - phi_closed_form| against the series' own tail bound. |x| < n.
IdentityResidual rate_function_identity_check(std::int64_t n, std::int64_t x,
                                              const SeriesSpec& spec = {});

/// (1 - 2l choose k) from the falling factorial (1-2l)(-2l)...(2-2l-k)/k!.
double binomial_negative_upper(int l, int k);

/// s_k(x, y, n) =
///   sum_l 2^k / (4l(2l-1)) (1-2l choose k) ((-1)^k (2y)^{2l} + (2x)^{2l}) / n^{2l+k-1}.
///
/// The terms are dominated by B_l = n (2/n)^k C(2l+k-2,k) 2 rho^{2l} / (4l(2l-1)),
/// rho = 2 max(|x|,|y|)/n, and B_{l+1}/B_l <= rho^2 max(1, r_l) with
/// r_l = (2l+k)(2l+k-1) / ((2l+2)(2l+1)) non-increasing for k >= 2 and < 1
/// otherwise, which makes the geometric tail bound rigorous. The stopping rule
/// compares that bound with tol times the sum of absolute term magnitudes
/// (`scale`), since odd-k terms cancel exactly when |x| = |y|.
/// Returns converged = false with a NaN value when rho >= 1 (divergent).
struct SkResult {
  SeriesResult series;
  double scale = 0.0;  ///< sum over l of |term_l| with both pieces taken positive
};
SkResult sk(int k, double n, double x, double y, const SeriesSpec& spec = {});

/// (n/2)^k s_k, the same series without the (2/n)^k factor that underflows
/// for large k. Value, tail bound and scale are all multiplied by (n/2)^k.
SkResult sk_scaled(int k, double n, double x, double y, const SeriesSpec& spec = {});

struct SkFamily {
  double n = 0.0, x = 0.0, y = 0.0;
  std::vector<SkResult> s;  ///< s[k] for k = 0..K
};
SkFamily sk_family(int max_k, double n, double x, double y, const SeriesSpec& spec = {});

/// Bracket of beta_x(n) = alpha(n) / (alpha((n+x)/2) alpha((n-x)/2)) obtained
/// from the extreme choices alpha(m) = e^{1/(12m+1)} and alpha(m) = e^{1/(12m)}:
///   high = exp(1/(12n) - 1/(6(n+x)+1) - 1/(6(n-x)+1)),
///   low  = exp(1/(12n+1) - 1/(6(n+x)) - 1/(6(n-x))).
/// Requires n >= 1 and |x| < n; (n +- x)/2 may be a half integer.
struct BetaInterval {
  double low = 0.0;
  double high = 0.0;
};
BetaInterval beta_factor(std::int64_t n, std::int64_t x);

/// Whether [low, high] lies inside [e^{-10/39}, 1], decided on the exponents
/// in exact rational arithmetic (the lower end is attained at n=1, x=0).
bool beta_interval_contained(std::int64_t n, std::int64_t x);

/// The actual beta_x(n) = exp(r_n - r_{(n+x)/2} - r_{(n-x)/2}) for parity-valid |x| < n.
double beta_exact(std::int64_t n, std::int64_t x);

struct StirlingCheck {
  double r_n = 0.0;
  double lower = 0.0;  ///< 1/(12n+1)
  double upper = 0.0;  ///< 1/(12n)
  bool holds = false;  ///< strict lower < r_n < upper, decided at 256-bit precision
};
/// r_n = log n! - log(sqrt(2 pi n)(n/e)^n). n! is formed exactly for n <= 2000,
/// log Gamma at 256 bits beyond.
StirlingCheck stirling_bounds_check(std::int64_t n);

/// Partial sum of sum_l 1/(2l(2l-1)) -> log 2. The remainder log 2 - S_L obeys
///   1/(4(L+1)) < log 2 - S_L < 1/(4L-2),
/// from 1/(4l(l+1)) < 1/(2l(2l-1)) < 1/((2l-1)(2l-3)) and telescoping.
/// The sum is accumulated with Neumaier compensation.
struct TaylorPartial {
  double sum = 0.0;
  double tail_lower = 0.0;
  double tail_upper = 0.0;
};
TaylorPartial taylor_identity_partial(std::int64_t L);

/// Upper Gaussian tail against phi(c)/c. Values are returned as logs since
/// both sides underflow double for c beyond ~38.
struct GaussianTailCheck {
  double log_lhs = 0.0;       ///< log of int_c^inf phi
  double log_rhs = 0.0;       ///< log(phi(c)/c)
  double relative_gap = 0.0;  ///< |lhs/rhs - 1|
};
GaussianTailCheck gaussian_tail_check(double c);

}  // namespace lclt::series
