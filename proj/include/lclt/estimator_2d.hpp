#pragma once

// Closed-form estimators of P(S(n)=(x,y)) for simple random walk on Z^2.
//
// Writing m = n/2 + j for the number of horizontal steps, the exponent of the
// j-th term of the horizontal/vertical decomposition is the saddle function
//
//   f(j) = -s_0 - sum_l 4^l j^{2l} / (2l(2l-1) n^{2l-1}) - sum_{k>=1} j^k s_k,
//
// concave in j with its continuous maximum at j* = -(y^2 - x^2) / (2n).
// Near the origin the sum over j is Gaussian around j* and yields
// P ~ 2/(pi n) e^{-s_0}; further out only the exponent f(j*) survives.
//
// Every estimator first maps (x, y) into the octant 0 <= x <= y, so all eight
// dihedral images of a point give bit-identical results.

#include <cstdint>
#include <string>
#include <vector>

#include "lclt/series_kernels.hpp"
#include "lclt/types.hpp"

namespace lclt::est2d {

enum class Regime2D { Regular, Irregular, OutOfTheoremRange };

std::string label(Regime2D r);

/// With L = log(max(n,3)):
///   Regular            x^2+y^2 <= n^2/L^4 and |y^2-x^2| <= n^{3/2}/L
///   Irregular          x^2+y^2 <= n^2/L^4 and |y^2-x^2| >  n^{3/2}/L
///   OutOfTheoremRange  otherwise
Regime2D classify_regime(std::int64_t n, std::int64_t x, std::int64_t y);

struct OctantTransform {
  bool negate_x = false;
  bool negate_y = false;
  bool swap = false;  ///< applied after the sign flips
};

struct OctantPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  OctantTransform transform;
};

/// Maps (x, y) by a dihedral symmetry to 0 <= x' <= y'.
OctantPoint normalize_octant(std::int64_t x, std::int64_t y);

struct Options {
  /// Evaluate outside the estimator's regime instead of throwing RegimeError;
  /// the result is flagged out_of_guarantee.
  bool allow_out_of_guarantee = false;
  SeriesSpec spec{};
};

/// log(2/(pi n)) - s_0; band C / L^2. Requires the Regular regime.
Estimate lclt_2d_regular(std::int64_t n, std::int64_t x, std::int64_t y, const Options& opt = {});

/// 2/(pi n) exp(-sum_{l<N} ((2x)^{2l} + (2y)^{2l}) / (4l(2l-1) n^{2l-1}));
/// band C (1/L^2 + (x^2+y^2)^N / n^{2N-1}). Requires N >= 2 and the Regular regime.
Estimate lclt_2d_truncated(std::int64_t n, std::int64_t x, std::int64_t y, int N,
                           const Options& opt = {});

/// The exponent E = f(j*) with D = y^2 - x^2 >= 0 after normalization:
///   E = -sum_l D^{2l} / (2l(2l-1) n^{4l-1}) - sum_k (-D/(2n))^k s_k.
/// Log-asymptotic contract: log P / E -> 1; band C (1 + log n) / |E|.
/// Requires the Irregular regime.
Estimate lclt_2d_irregular(std::int64_t n, std::int64_t x, std::int64_t y,
                           const Options& opt = {});

/// 2 (1/(pi n)) exp(-(x^2+y^2)/n) as an Estimate; band C (1/n + r^4/n^3).
Estimate baseline_2d(std::int64_t n, std::int64_t x, std::int64_t y);

/// Series evaluation of f(j) for fixed (n, x, y). Defined for
/// 2 max(|x|,|y|) + 2|j| < n, where the double series converges absolutely.
class SaddleFunction {
 public:
  SaddleFunction(std::int64_t n, std::int64_t x, std::int64_t y, const SeriesSpec& spec = {});

  struct Value {
    double value = 0.0;
    double tail_bound = 0.0;  ///< j-series bound plus k-series estimate
    int j_terms = 0;
    int k_terms = 0;
    bool converged = true;
  };

  /// Throws DomainError outside the convergence domain.
  Value evaluate(double j) const;
  double operator()(double j) const { return evaluate(j).value; }

  std::int64_t n() const { return n_; }
  /// Largest |j| inside the convergence domain is strictly below this.
  double j_limit() const;

 private:
  series::SkResult s(int k) const;  ///< (n/2)^k s_k

  std::int64_t n_, x_, y_;
  SeriesSpec spec_;
  std::vector<series::SkResult> cache_;  // s(0) .. s(kCachedK-1), immutable after construction
};

/// f(j) for a single j.
double saddle_f(std::int64_t n, std::int64_t x, std::int64_t y, double j,
                const SeriesSpec& spec = {});

struct SaddleInfo {
  std::int64_t j0 = 0;   ///< -floor((y^2-x^2)/(2n))
  std::int64_t j0p = 0;  ///< -ceil((y^2-x^2)/(2n))
  double f_at_max = 0.0;
};

/// The integer maximizers of f; (x, y) are taken as given (no normalization).
SaddleInfo saddle_max(std::int64_t n, std::int64_t x, std::int64_t y, const SeriesSpec& spec = {});

/// Band shapes (band divided by its constant).
double shape_regular(double n);
double shape_truncated(double n, double x, double y, int N);
double shape_irregular(double n, double exponent);
double shape_baseline(double n, double x, double y);

}  // namespace lclt::est2d
