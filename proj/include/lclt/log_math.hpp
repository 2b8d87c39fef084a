#pragma once

#include <cstdint>
#include <span>

namespace lclt::logmath {

/// Stirling remainder r_m = log(m!) - log(sqrt(2 pi m) (m/e)^m) for integer m >= 1.
/// Tabulated for m <= 15, asymptotic series above; relative error near 1e-16.
double stirling_remainder(std::int64_t m);

/// The rate exponent n log n - (n+x)/2 log(n+x) - (n-x)/2 log(n-x) for real
/// n > 0 and |x| <= n, with 0 log 0 = 0. Evaluated without the cancellation
/// of the textbook form, so it keeps relative accuracy as x/n -> 0.
double rate_exponent(double n, double x);

/// log(sum exp(v_i)) with the maximum factored out, summed in the given order.
/// Returns -inf for an empty span or when every entry is -inf.
double log_sum_exp(std::span<const double> values);

}  // namespace lclt::logmath
