#include "lclt/series_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <gmpxx.h>
#include <mpfr.h>

#include "lclt/log_math.hpp"

namespace lclt::series {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// RAII holder for a single mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

PhiValue phi_closed_form(std::int64_t n, std::int64_t x) {
  if (n < 1) throw DomainError("phi needs n >= 1");
  if (iabs(x) > n) throw DomainError("phi needs |x| <= n");
  return {logmath::rate_exponent(static_cast<double>(n), static_cast<double>(x)), n, x};
}

PhiSeries phi_series(std::int64_t n, std::int64_t x, const SeriesSpec& spec) {
  spec.validate();
  if (n < 1) throw DomainError("phi needs n >= 1");
  if (iabs(x) > n) throw DomainError("phi needs |x| <= n");

  const double dn = static_cast<double>(n);
  const double z = static_cast<double>(iabs(x)) / dn;
  const double z2 = z * z;
  // term_l = n z^{2l} / (2l(2l-1))
  auto term = [&](int l, double pow_z) { return dn * pow_z / (2.0 * l * (2.0 * l - 1.0)); };

  double pw = z2;
  double partial = 0.0;
  int l = 1;
  double next = 0.0;
  for (;; ++l) {
    partial += term(l, pw);
    pw *= z2;
    next = term(l + 1, pw);
    if (next <= spec.rel_tail_tol * partial || l >= spec.max_terms) break;
  }

  PhiSeries out;
  out.phi = {-partial, n, x};
  out.terms = l;
  if (z2 >= 1.0) {
    out.converged = false;
    out.tail_bound = kInf;
  } else {
    out.tail_bound = next / (1.0 - z2);
    out.converged = next <= spec.rel_tail_tol * partial;
  }
  return out;
}

IdentityResidual rate_function_identity_check(std::int64_t n, std::int64_t x,
                                              const SeriesSpec& spec) {
  if (iabs(x) >= n) throw DomainError("identity check needs |x| < n");
  const PhiSeries s = phi_series(n, x, spec);
  const PhiValue c = phi_closed_form(n, x);
  IdentityResidual r;
  r.residual = std::abs(s.phi.value - c.value);
  r.tail_bound = s.tail_bound;
  r.allowed = s.tail_bound + 1e-12 * std::abs(c.value);
  r.pass = r.residual <= r.allowed;
  return r;
}

double binomial_negative_upper(int l, int k) {
  if (l < 1 || k < 0) throw DomainError("binomial_negative_upper needs l >= 1, k >= 0");
  const double top = 1.0 - 2.0 * l;
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= (top - i) / (i + 1.0);
  return out;
}

namespace {

// pref multiplies every term: n (2/n)^k gives s_k, n gives (n/2)^k s_k.
SkResult sk_with_prefactor(int k, double n, double x, double y, double pref,
                           const SeriesSpec& spec) {
  spec.validate();

  const double u = 2.0 * std::abs(x) / n;
  const double v = 2.0 * std::abs(y) / n;
  const double rho = std::max(u, v);
  SkResult out;
  if (rho == 0.0) {
    out.series = {0.0, 1, 0.0, true};
    return out;
  }
  if (rho >= 1.0) {
    out.series = {std::numeric_limits<double>::quiet_NaN(), 0, kInf, false};
    return out;
  }

  // term_l = n (2/n)^k C(2l+k-2, k) (v^{2l} + (-1)^k u^{2l}) / (4l(2l-1)),
  // the (-1)^k of (1-2l choose k) folded into the bracket. Powers are carried
  // relative to rho to keep C(..) rho^{2l} in range.
  const double su = u / rho, sv = v / rho;
  const double su2 = su * su, sv2 = sv * sv, rho2 = rho * rho;
  const double odd = (k % 2 == 0) ? 1.0 : -1.0;

  double weight = std::abs(binomial_negative_upper(1, k)) * rho2;  // C(k,k) rho^2
  double pu = su2, pv = sv2;
  double partial = 0.0, scale = 0.0;
  int l = 1;
  double tail = kInf;
  for (;; ++l) {
    const double denom = 4.0 * l * (2.0 * l - 1.0);
    partial += pref * weight * (pv + odd * pu) / denom;
    scale += pref * weight * (pv + pu) / denom;

    // Advance the dominating sequence B_l = 2 pref weight / denom to l+1.
    const double a = 2.0 * l;
    weight *= (a + k) * (a + k - 1) / (a * (a - 1)) * rho2;  // C(2l+k,k)/C(2l+k-2,k)
    pu *= su2;
    pv *= sv2;
    const double b_next = 2.0 * pref * weight / (4.0 * (l + 1) * (2.0 * l + 1.0));
    const double a2 = 2.0 * (l + 1);
    const double q = rho2 * std::max(1.0, (a2 + k) * (a2 + k - 1) / ((a2 + 2) * (a2 + 1)));
    tail = q < 1.0 ? b_next / (1.0 - q) : kInf;
    if (tail <= spec.rel_tail_tol * scale || l >= spec.max_terms) break;
  }
  out.series = {partial, l, tail, tail <= spec.rel_tail_tol * scale};
  out.scale = scale;
  return out;
}

}  // namespace

SkResult sk(int k, double n, double x, double y, const SeriesSpec& spec) {
  if (k < 0) throw DomainError("s_k needs k >= 0");
  if (!(n > 0.0)) throw DomainError("s_k needs n > 0");
  return sk_with_prefactor(k, n, x, y, n * std::pow(2.0 / n, k), spec);
}

SkResult sk_scaled(int k, double n, double x, double y, const SeriesSpec& spec) {
  if (k < 0) throw DomainError("s_k needs k >= 0");
  if (!(n > 0.0)) throw DomainError("s_k needs n > 0");
  return sk_with_prefactor(k, n, x, y, n, spec);
}

SkFamily sk_family(int max_k, double n, double x, double y, const SeriesSpec& spec) {
  if (max_k < 0) throw DomainError("sk_family needs max_k >= 0");
  SkFamily fam{n, x, y, {}};
  fam.s.reserve(static_cast<std::size_t>(max_k) + 1);
  for (int k = 0; k <= max_k; ++k) fam.s.push_back(sk(k, n, x, y, spec));
  return fam;
}

BetaInterval beta_factor(std::int64_t n, std::int64_t x) {
  if (n < 1) throw DomainError("beta needs n >= 1");
  if (iabs(x) >= n) throw DomainError("beta needs |x| < n");
  const double dn = static_cast<double>(n);
  const double plus = static_cast<double>(n + x);
  const double minus = static_cast<double>(n - x);
  BetaInterval b;
  b.high = std::exp(1.0 / (12.0 * dn) - 1.0 / (6.0 * plus + 1.0) - 1.0 / (6.0 * minus + 1.0));
  b.low = std::exp(1.0 / (12.0 * dn + 1.0) - 1.0 / (6.0 * plus) - 1.0 / (6.0 * minus));
  return b;
}

bool beta_interval_contained(std::int64_t n, std::int64_t x) {
  if (n < 1) throw DomainError("beta needs n >= 1");
  if (iabs(x) >= n) throw DomainError("beta needs |x| < n");
  const mpz_class p = static_cast<long>(n + x);
  const mpz_class m = static_cast<long>(n - x);
  const mpz_class dn = static_cast<long>(n);
  const auto inv = [](const mpz_class& d) { return mpq_class(mpz_class(1), d); };
  const mpq_class high = inv(12 * dn) - inv(6 * p + 1) - inv(6 * m + 1);
  const mpq_class low = inv(12 * dn + 1) - inv(6 * p) - inv(6 * m);
  return low >= mpq_class(-10, 39) && low <= high && high <= 0;
}

double beta_exact(std::int64_t n, std::int64_t x) {
  if (n < 1 || iabs(x) >= n || (n + x) % 2 != 0) {
    throw DomainError("beta_exact needs |x| < n with n + x even");
  }
  const std::int64_t k = (n + x) / 2;
  return std::exp(logmath::stirling_remainder(n) - logmath::stirling_remainder(k) -
                  logmath::stirling_remainder(n - k));
}

StirlingCheck stirling_bounds_check(std::int64_t n) {
  if (n < 1) throw DomainError("Stirling check needs n >= 1");
  constexpr mpfr_prec_t kPrec = 256;
  Mpfr logfact(kPrec), t(kPrec), r(kPrec), lo(kPrec), hi(kPrec);
  const auto un = static_cast<unsigned long>(n);
  if (n <= 2000) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), un);
    mpfr_set_z(logfact.get(), f.get_mpz_t(), MPFR_RNDN);
    mpfr_log(logfact.get(), logfact.get(), MPFR_RNDN);
  } else {
    mpfr_set_ui(logfact.get(), un + 1, MPFR_RNDN);
    mpfr_lngamma(logfact.get(), logfact.get(), MPFR_RNDN);
  }
  // r = log n! - (1/2) log(2 pi n) - n log n + n
  mpfr_const_pi(t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), 2 * un, MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_div_ui(t.get(), t.get(), 2, MPFR_RNDN);
  mpfr_sub(r.get(), logfact.get(), t.get(), MPFR_RNDN);
  mpfr_set_ui(t.get(), un, MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), un, MPFR_RNDN);
  mpfr_sub(r.get(), r.get(), t.get(), MPFR_RNDN);
  mpfr_add_ui(r.get(), r.get(), un, MPFR_RNDN);

  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  mpfr_div_ui(lo.get(), lo.get(), 12 * un + 1, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  mpfr_div_ui(hi.get(), hi.get(), 12 * un, MPFR_RNDN);

  StirlingCheck out;
  out.r_n = mpfr_get_d(r.get(), MPFR_RNDN);
  out.lower = mpfr_get_d(lo.get(), MPFR_RNDN);
  out.upper = mpfr_get_d(hi.get(), MPFR_RNDN);
  out.holds = mpfr_less_p(lo.get(), r.get()) && mpfr_less_p(r.get(), hi.get());
  return out;
}

TaylorPartial taylor_identity_partial(std::int64_t L) {
  if (L < 1) throw DomainError("Taylor partial sum needs L >= 1");
  double sum = 0.0, comp = 0.0;
  for (std::int64_t l = L; l >= 1; --l) {
    const double dl = static_cast<double>(l);
    const double t = 1.0 / (2.0 * dl * (2.0 * dl - 1.0));
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  sum += comp;
  const double dL = static_cast<double>(L);
  return {sum, 1.0 / (4.0 * dL + 4.0), 1.0 / (4.0 * dL - 2.0)};
}

GaussianTailCheck gaussian_tail_check(double c) {
  if (!(c > 0.0)) throw DomainError("Gaussian tail check needs c > 0");
  const double log_density = -0.5 * c * c - 0.5 * std::log(2.0 * std::numbers::pi);
  // Mills ratio R(c) = tail / density.
  GaussianTailCheck out;
  double mills = 0.0;
  if (c < 3.0) {
    mills = 0.5 * std::erfc(c / std::numbers::sqrt2) / std::exp(log_density);
    out.relative_gap = std::abs(c * mills - 1.0);
  } else {
    // R(c) = 1/(c + k), k = 1/(c + 2/(c + 3/(c + ...))), evaluated bottom-up.
    // 1 - c R(c) = k/(c + k) is formed without cancellation, since it falls
    // below machine epsilon once c exceeds ~10^8.
    double inner = c;
    for (int i = 400; i >= 2; --i) inner = c + i / inner;
    const double k = 1.0 / inner;
    mills = 1.0 / (c + k);
    out.relative_gap = k / (c + k);
  }
  out.log_lhs = log_density + std::log(mills);
  out.log_rhs = log_density - std::log(c);
  return out;
}

}  // namespace lclt::series
