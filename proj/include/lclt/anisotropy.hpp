#pragma once

// Axis-versus-diagonal comparison of the planar walk at a common radius r.
//
// At radius r the exponents along the axis and along the diagonal differ only
// from the quartic term on, -r^4/(6n^3) against -r^4/(3n^3), so the law is
// close to rotationally symmetric while r^4 << n^3 and loses the symmetry
// once r grows past n^{3/4}.
//
// Sign convention: log_ratio = log P(diag) - log P(axis), so loss of symmetry
// shows up as increasingly negative values.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lclt/types.hpp"

namespace lclt::aniso {

struct RingPoints {
  LatticeQuery2D axis;
  LatticeQuery2D diag;
};

/// Axis point (r', 0) and diagonal point (d, d), both within [r-2, r+2] of
/// the origin and parity-compatible with n. Coordinates move by at most one
/// step to fix parity; for odd n the diagonal falls back to (d, d+1).
/// Among admissible candidates the norm closest to r wins, ties going to the
/// smaller point. Requires 0 <= r <= n; throws DomainError if none fits.
RingPoints pick_ring_points(std::int64_t n, std::int64_t r);

struct PredictedRatio {
  double magnitude = 0.0;  ///< r^4 / (6 n^3)
  double band = 0.0;       ///< r^6 / n^5, the order of the next term
};

/// The leading-order size of |log P(diag) - log P(axis)|.
PredictedRatio predicted_log_ratio(std::int64_t n, std::int64_t r);

struct AnisotropyRecord {
  std::int64_t n = 0;
  std::int64_t r = 0;
  LatticeQuery2D axis_point;
  LatticeQuery2D diag_point;
  double log_p_axis = 0.0;
  double log_p_diag = 0.0;
  double log_ratio_exact = 0.0;      ///< log P(diag) - log P(axis)
  double log_ratio_predicted = 0.0;  ///< -r^4/(6n^3), same convention
  double predicted_band = 0.0;
  std::string axis_regime;
  std::string diag_regime;
  /// r <= n / log^2 n, the radius range of the symmetry statement.
  bool within_corollary_range = false;
  std::optional<std::string> error;
};

/// Exact log-mode measurement at radius r. Requires 0 <= r <= n.
AnisotropyRecord measure_anisotropy(std::int64_t n, std::int64_t r);

struct SweepResult {
  std::vector<AnisotropyRecord> records;  ///< sorted by r
  /// |log_ratio_exact| non-decreasing (tolerance 1e-9) over the records with
  /// r >= n^{3/4}; vacuously true with fewer than two such records.
  bool monotone_beyond_threshold = true;
};

/// measure_anisotropy over r_grid, in parallel. A failing point keeps its
/// record with `error` set and the sweep continues.
SweepResult symmetry_radius_sweep(std::int64_t n, const std::vector<std::int64_t>& r_grid);

/// floor(n^e) for e in {0.5, 0.7, 0.75, 0.8, 0.85}.
std::vector<std::int64_t> auto_radius_grid(std::int64_t n);

struct ThresholdSummary {
  std::optional<std::int64_t> largest_symmetric_r;  ///< largest r with |ratio| < 0.5
  std::optional<std::int64_t> smallest_broken_r;    ///< smallest r with |ratio| > 1
};
ThresholdSummary threshold_summary(const SweepResult& sweep);

}  // namespace lclt::aniso
