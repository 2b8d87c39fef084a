#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace lclt {

/// Thrown when an argument lies outside the mathematical domain of an operation
/// (e.g. |x| > n for the rate function, or a divergent series).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown by 2D estimators asked to evaluate outside the regime their
/// guarantee covers. `regime` carries the label of the regime that was found.
class RegimeError : public std::runtime_error {
 public:
  RegimeError(const std::string& what, std::string regime)
      : std::runtime_error(what), regime_(std::move(regime)) {}
  const std::string& regime() const noexcept { return regime_; }

 private:
  std::string regime_;
};

/// A walk length plus a target on Z.
struct LatticeQuery1D {
  std::int64_t n = 0;
  std::int64_t x = 0;

  bool parity_ok() const { return ((n + x) % 2 + 2) % 2 == 0; }
  bool in_range() const { return n >= 0 && (x < 0 ? -x : x) <= n; }
  /// P(S(n)=x) > 0 exactly when this holds.
  bool reachable() const { return in_range() && parity_ok(); }
};

/// A walk length plus a target on Z^2.
struct LatticeQuery2D {
  std::int64_t n = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;

  std::int64_t l1() const { return (x < 0 ? -x : x) + (y < 0 ? -y : y); }
  bool parity_ok() const { return ((n + x + y) % 2 + 2) % 2 == 0; }
  bool in_range() const { return n >= 0 && l1() <= n; }
  bool reachable() const { return in_range() && parity_ok(); }
};

/// A probability carried as its natural logarithm; -inf encodes exact zero.
class LogProb {
 public:
  LogProb() = default;

  /// Throws DomainError for NaN or values above 0.
  static LogProb from_log(double log_value);
  static LogProb zero() { return LogProb(-std::numeric_limits<double>::infinity()); }
  static LogProb one() { return LogProb(0.0); }

  double log() const { return value_; }
  double linear() const { return std::exp(value_); }
  bool is_zero() const { return std::isinf(value_) && value_ < 0; }

  friend bool operator==(const LogProb&, const LogProb&) = default;

 private:
  explicit LogProb(double v) : value_(v) {}
  double value_ = -std::numeric_limits<double>::infinity();
};

/// Arbitrary-precision rational probability. Always kept in lowest terms.
class ExactRational {
 public:
  ExactRational() = default;
  explicit ExactRational(mpq_class q);
  /// numerator / 2^exponent, canonicalized.
  static ExactRational dyadic(const mpz_class& numerator, unsigned long exponent);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  /// True when the reduced denominator is a power of two.
  bool dyadic_denominator() const;

  double to_double() const { return q_.get_d(); }
  /// Natural log, correctly rounded from a 256-bit MPFR evaluation; -inf for 0.
  double log() const;
  /// "p/q", or "0" / "1".
  std::string str() const;

  ExactRational& operator+=(const ExactRational& other);
  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_{0};
};

/// Truncation policy for the infinite series used throughout.
struct SeriesSpec {
  int max_terms = 200;
  double rel_tail_tol = 1e-16;

  /// Throws DomainError unless max_terms >= 1 and 0 < rel_tail_tol < 1.
  void validate() const;
};

/// A truncated series: value after `terms` terms plus a bound on the remainder.
struct SeriesResult {
  double value = 0.0;
  int terms = 0;
  double tail_bound = 0.0;
  bool converged = true;
};

/// How an estimator's error band is to be read against the exact value.
enum class Contract {
  Relative,       ///< |exact/estimate - 1| <= band
  LogAsymptotic,  ///< |log(exact)/estimate - 1| <= band; estimate is an exponent
};

/// Closed-form estimate of a point probability with its error band.
struct Estimate {
  LogProb log_value;
  double error_band = 0.0;
  std::string regime;
  Contract contract = Contract::Relative;
  /// Set when the estimator only brackets the value (NearBoundary in 1D);
  /// log_value is then the upper end.
  std::optional<double> log_lower;
  /// Set when the caller asked for an evaluation outside the regime the
  /// estimator's guarantee covers.
  bool out_of_guarantee = false;

  /// |exact/estimate - 1| (Relative) or |log exact/estimate - 1| (LogAsymptotic).
  /// For bracketing estimates the distance is measured to the nearest end.
  double error_against(double log_exact) const;
  bool within_band(double log_exact) const { return error_against(log_exact) <= error_band; }
};

}  // namespace lclt
