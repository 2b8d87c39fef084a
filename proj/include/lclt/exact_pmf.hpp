#pragma once

// Ground-truth point probabilities of simple random walk on Z and Z^2.
//
// Two tiers:
//   * rational: exact GMP rationals, the oracle for small n;
//   * log:      double-precision natural logs built from the rate exponent and
//               the Stirling remainder, O(1) in 1D and O(n) in 2D.
//
// The 2D routines use the decomposition over the number m of horizontal steps,
//
//   P(S(n)=(x,y)) = sum_m C(n,m) 2^-n  p1(m,x)  p1(n-m,y),
//
// summed over the full range |x| <= m <= n-|y| in ascending order.

#include <cstdint>
#include <vector>

#include "lclt/types.hpp"

namespace lclt::exact {

/// Largest n accepted by the rational tier in 1D / 2D.
inline constexpr std::int64_t kRationalBudget1D = 2000;
inline constexpr std::int64_t kRationalBudget2D = 24;

/// C(n, (n+x)/2) 2^-n, or exact 0 off parity / out of range. Requires n >= 0.
ExactRational pmf1d_exact_rational(const LatticeQuery1D& q);

/// log P(S(n)=x). Requires n >= 0 (n = 0 gives 0 at the origin and -inf elsewhere).
LogProb pmf1d_exact_log(const LatticeQuery1D& q);

/// Exact 2D pmf via the horizontal-step decomposition.
ExactRational pmf2d_exact_rational(const LatticeQuery2D& q);

/// log of the 2D pmf via max-factored log-sum-exp over the decomposition.
LogProb pmf2d_exact_log(const LatticeQuery2D& q);

/// Number of n-step nearest-neighbour paths from the origin, by dynamic
/// programming over the grid. Entry [(x+n)*(2n+1) + (y+n)] holds the count for (x,y).
class PathCountTable {
 public:
  explicit PathCountTable(std::int64_t n);

  std::int64_t n() const { return n_; }
  /// Zero outside the reachable square.
  const mpz_class& count(std::int64_t x, std::int64_t y) const;
  /// count / 4^n.
  ExactRational probability(std::int64_t x, std::int64_t y) const;

 private:
  std::int64_t n_;
  std::int64_t side_;
  std::vector<mpz_class> counts_;
  mpz_class zero_{0};
};

/// Sum of the rational pmf over every reachable point (should be exactly 1).
ExactRational total_mass_1d(std::int64_t n);
ExactRational total_mass_2d(std::int64_t n);

}  // namespace lclt::exact
