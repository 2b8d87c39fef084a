#include "lclt/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lclt/estimator_2d.hpp"
#include "lclt/exact_pmf.hpp"
#include "parallel.hpp"

namespace lclt::aniso {

namespace {

struct Candidate {
  std::int64_t a = 0, b = 0;
  double dist = std::numeric_limits<double>::infinity();
};

// Keeps the candidate whose norm is closest to r; on a tie the smaller norm wins.
void offer(Candidate& best, std::int64_t n, std::int64_t r, std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || a + b > n) return;
  if (!LatticeQuery2D{n, a, b}.parity_ok()) return;
  const double norm = std::hypot(static_cast<double>(a), static_cast<double>(b));
  const double dist = std::abs(norm - static_cast<double>(r));
  if (dist > 2.0) return;
  const double best_norm = std::hypot(static_cast<double>(best.a), static_cast<double>(best.b));
  if (dist < best.dist || (dist == best.dist && norm < best_norm)) best = {a, b, dist};
}

}  // namespace

RingPoints pick_ring_points(std::int64_t n, std::int64_t r) {
  if (n < 1) throw DomainError("ring points need n >= 1");
  if (r < 0 || r > n) throw DomainError("ring points need 0 <= r <= n");

  Candidate axis;
  for (std::int64_t a = r - 1; a <= r + 1; ++a) offer(axis, n, r, a, 0);

  Candidate diag;
  const auto d0 = static_cast<std::int64_t>(std::floor(static_cast<double>(r) / std::numbers::sqrt2));
  // Parity admits (d, d) for even n and (d, d+1) for odd n, never both.
  for (std::int64_t d = d0 - 1; d <= d0 + 2; ++d) {
    offer(diag, n, r, d, d);
    offer(diag, n, r, d, d + 1);
  }
  if (!std::isfinite(axis.dist) || !std::isfinite(diag.dist)) {
    throw DomainError("no parity-compatible ring point within [r-2, r+2] for r=" +
                      std::to_string(r) + ", n=" + std::to_string(n));
  }
  return {{n, axis.a, axis.b}, {n, diag.a, diag.b}};
}

PredictedRatio predicted_log_ratio(std::int64_t n, std::int64_t r) {
  if (n < 1) throw DomainError("predicted ratio needs n >= 1");
  const double q = static_cast<double>(r) / static_cast<double>(n);  // r/n
  const double dn = static_cast<double>(n);
  // r^4/(6n^3) = n q^4 / 6, r^6/n^5 = n q^6
  return {dn * std::pow(q, 4) / 6.0, dn * std::pow(q, 6)};
}

AnisotropyRecord measure_anisotropy(std::int64_t n, std::int64_t r) {
  AnisotropyRecord rec;
  rec.n = n;
  rec.r = r;
  const RingPoints pts = pick_ring_points(n, r);
  rec.axis_point = pts.axis;
  rec.diag_point = pts.diag;
  rec.log_p_axis = exact::pmf2d_exact_log(pts.axis).log();
  rec.log_p_diag = exact::pmf2d_exact_log(pts.diag).log();
  rec.log_ratio_exact = rec.log_p_diag - rec.log_p_axis;
  const PredictedRatio pred = predicted_log_ratio(n, r);
  rec.log_ratio_predicted = -pred.magnitude;
  rec.predicted_band = pred.band;
  rec.axis_regime = est2d::label(est2d::classify_regime(n, pts.axis.x, pts.axis.y));
  rec.diag_regime = est2d::label(est2d::classify_regime(n, pts.diag.x, pts.diag.y));
  const double L = std::log(std::max(static_cast<double>(n), 3.0));
  rec.within_corollary_range = static_cast<double>(r) <= static_cast<double>(n) / (L * L);
  return rec;
}

SweepResult symmetry_radius_sweep(std::int64_t n, const std::vector<std::int64_t>& r_grid) {
  std::vector<std::int64_t> radii = r_grid;
  std::sort(radii.begin(), radii.end());
  SweepResult out;
  out.records.resize(radii.size());
  detail::parallel_for(radii.size(), detail::worker_count(), [&](std::size_t i) {
    try {
      out.records[i] = measure_anisotropy(n, radii[i]);
    } catch (const std::exception& ex) {
      AnisotropyRecord rec;
      rec.n = n;
      rec.r = radii[i];
      rec.error = ex.what();
      out.records[i] = rec;
    }
  });

  const double threshold = std::pow(static_cast<double>(n), 0.75);
  double prev = -1.0;
  for (const auto& rec : out.records) {
    if (rec.error || static_cast<double>(rec.r) < threshold) continue;
    const double mag = std::abs(rec.log_ratio_exact);
    if (prev >= 0.0 && mag < prev - 1e-9) out.monotone_beyond_threshold = false;
    prev = mag;
  }
  return out;
}

std::vector<std::int64_t> auto_radius_grid(std::int64_t n) {
  std::vector<std::int64_t> grid;
  for (const double e : {0.5, 0.7, 0.75, 0.8, 0.85}) {
    const double v = std::pow(static_cast<double>(n), e);
    // absorb pow() rounding just below an exact integer power
    grid.push_back(static_cast<std::int64_t>(std::floor(v * (1.0 + 1e-12))));
  }
  return grid;
}

ThresholdSummary threshold_summary(const SweepResult& sweep) {
  ThresholdSummary s;
  for (const auto& rec : sweep.records) {
    if (rec.error) continue;
    const double mag = std::abs(rec.log_ratio_exact);
    if (mag < 0.5) s.largest_symmetric_r = rec.r;
    if (mag > 1.0 && !s.smallest_broken_r) s.smallest_broken_r = rec.r;
  }
  return s;
}

}  // namespace lclt::aniso
