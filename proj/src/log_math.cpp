#include "lclt/log_math.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lclt/types.hpp"

namespace lclt::logmath {

namespace {

// r_m for m = 1..15, from 40-digit evaluations of log Gamma.
constexpr std::array<double, 16> kStirlingTable = {
    0.0,  // unused
    0.08106146679532725822,   0.041340695955409294094,  0.027677925684998339149,
    0.020790672103765093112,  0.016644691189821192163,  0.013876128823070747999,
    0.011896709945891770095,  0.010411265261972096497,  0.0092554621827127329177,
    0.0083305634333628712565, 0.007573675487951840795,  0.0069428401072095298657,
    0.0064089941880042070684, 0.0059513701127588477356, 0.005554733551962801371,
};

// Coefficients B_{2k} / (2k(2k-1)) of r_m ~ sum_k c_k m^{1-2k}.
constexpr std::array<double, 7> kStirlingSeries = {
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,
};

// Smallest m for which the first t terms leave an omitted term below 2e-17 r_m,
// indexed by t = 2..7.
constexpr std::array<std::int64_t, 6> kTermCutoff = {4672, 267, 69, 33, 20, 16};

}  // namespace

double stirling_remainder(std::int64_t m) {
  if (m < 1) throw DomainError("stirling_remainder needs m >= 1");
  if (m < static_cast<std::int64_t>(kStirlingTable.size())) return kStirlingTable[m];
  std::size_t terms = 7;
  for (std::size_t i = 0; i < kTermCutoff.size(); ++i) {
    if (m >= kTermCutoff[i]) {
      terms = i + 2;
      break;
    }
  }
  const double v = static_cast<double>(m);
  const double inv2 = 1.0 / (v * v);
  double acc = 0.0;
  for (std::size_t k = terms; k-- > 0;) acc = kStirlingSeries[k] + acc * inv2;
  return acc / v;
}

double rate_exponent(double n, double x) {
  if (!(n > 0.0)) throw DomainError("rate_exponent needs n > 0");
  const double ax = std::abs(x);
  if (ax > n) throw DomainError("rate_exponent needs |x| <= n");
  if (ax == n) return -n * std::log(2.0);
  const double z = ax / n;
  if (z < 0.5) {
    // (1+z)log(1+z) + (1-z)log(1-z) = 2z atanh z + log1p(-z^2); both pieces are O(z^2).
    return -0.5 * n * (2.0 * z * std::atanh(z) + std::log1p(-z * z));
  }
  const double plus = n + ax;
  const double minus = n - ax;
  return -0.5 * (plus * std::log(plus / n) + minus * std::log(minus / n));
}

double log_sum_exp(std::span<const double> values) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (values.empty()) return kNegInf;
  const double top = *std::max_element(values.begin(), values.end());
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (const double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

}  // namespace lclt::logmath
