#include "lclt/types.hpp"

#include <mpfr.h>

namespace lclt {

LogProb LogProb::from_log(double log_value) {
  if (std::isnan(log_value) || log_value > 0.0) {
    throw DomainError("log-probability must be <= 0, got " + std::to_string(log_value));
  }
  return LogProb(log_value);
}

ExactRational::ExactRational(mpq_class q) : q_(std::move(q)) {
  q_.canonicalize();
  if (sgn(q_) < 0 || q_ > 1) {
    throw DomainError("probability outside [0,1]: " + q_.get_str());
  }
}

ExactRational ExactRational::dyadic(const mpz_class& numerator, unsigned long exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  return ExactRational(mpq_class(numerator, den));
}

bool ExactRational::dyadic_denominator() const {
  const mpz_class den = q_.get_den();
  return mpz_popcount(den.get_mpz_t()) == 1;
}

double ExactRational::log() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_set_q(v, q_.get_mpq_t(), MPFR_RNDN);
  mpfr_log(v, v, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

std::string ExactRational::str() const { return q_.get_str(); }

ExactRational& ExactRational::operator+=(const ExactRational& other) {
  q_ += other.q_;
  q_.canonicalize();
  return *this;
}

void SeriesSpec::validate() const {
  if (max_terms < 1) throw DomainError("SeriesSpec.max_terms must be >= 1");
  if (!(rel_tail_tol > 0.0 && rel_tail_tol < 1.0)) {
    throw DomainError("SeriesSpec.rel_tail_tol must lie in (0,1)");
  }
}

double Estimate::error_against(double log_exact) const {
  const double est = log_value.log();
  if (contract == Contract::LogAsymptotic) {
    if (est == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(log_exact / est - 1.0);
  }
  if (log_value.is_zero() || std::isinf(log_exact)) {
    return (log_value.is_zero() && std::isinf(log_exact)) ? 0.0
                                                          : std::numeric_limits<double>::infinity();
  }
  if (log_lower) {
    if (log_exact >= *log_lower && log_exact <= est) return 0.0;
    const double nearest = log_exact > est ? est : *log_lower;
    return std::abs(std::expm1(log_exact - nearest));
  }
  return std::abs(std::expm1(log_exact - est));
}

}  // namespace lclt
