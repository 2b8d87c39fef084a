#pragma once

// Sweeps comparing the exact oracle with the closed-form estimators, error
// scaling fits and calibration of the band constants.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lclt/calibration.hpp"

namespace lclt::harness {

/// A malformed plan; field() names the offending entry.
class PlanError : public std::invalid_argument {
 public:
  PlanError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A real-valued expression in n: numbers, n, + - * / ^, unary minus,
/// parentheses and the functions log, sqrt, floor, ceil.
class Expr {
 public:
  /// Throws PlanError(field, ...) on a syntax error.
  static Expr parse(const std::string& text, const std::string& field = "profile");
  double operator()(double n) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// "x=EXPR" (1D) or "x=EXPR,y=EXPR" (2D). Coordinates are floor(EXPR(n));
/// the last coordinate then moves one step toward the origin (or away from
/// it at 0) when n + x + y is odd.
class Profile {
 public:
  static Profile parse(const std::string& text, int dim);
  /// Throws PlanError("profile", ...) when the point leaves |x| + |y| <= n.
  std::pair<std::int64_t, std::int64_t> point(std::int64_t n) const;
  const std::string& text() const { return text_; }
  int dim() const { return dim_; }

 private:
  std::string text_;
  int dim_ = 1;
  std::vector<Expr> coords_;
};

/// "a:b:xk" (geometric), "a:b:+s" (arithmetic) or "n1,n2,...".
std::vector<std::int64_t> parse_n_grid(const std::string& text);

struct SweepPlan {
  int dim = 1;
  std::vector<std::int64_t> ns;
  std::string profile;
  /// 1D: lclt, lclt-trunc:N, lawler-limic, baseline.
  /// 2D: regular, regular-trunc:N, irregular, baseline.
  std::vector<std::string> estimators;
  bool allow_out_of_guarantee = false;
  std::optional<std::string> sink;  ///< output path; stdout when empty

  /// Throws PlanError on an invalid dimension, unsorted or non-positive
  /// n-grid, unparsable profile, out-of-range point or unknown estimator.
  void validate() const;

  /// Reads {"dim", "ns" (array or grid string), "profile", "estimators",
  /// "allow_out_of_guarantee"?, "sink"?}.
  static SweepPlan from_json(const nlohmann::json& j);
};

struct ComparisonRecord {
  int dim = 1;
  std::int64_t n = 0, x = 0, y = 0;
  std::string regime;
  std::string estimator;
  std::optional<double> log_exact;
  std::optional<double> log_est;
  std::optional<double> rel_error;  ///< Estimate::error_against(log_exact)
  std::optional<double> band;
  std::optional<bool> within_band;
  bool out_of_guarantee = false;
  std::optional<std::string> error;  ///< set when the estimator refused the point
};

/// One record per (n, estimator), in plan order. Rows are computed in parallel
/// (LCLT_THREADS caps the worker count); the output does not depend on it.
std::vector<ComparisonRecord> run_sweep(const SweepPlan& plan);
std::vector<ComparisonRecord> run_sweep(const SweepPlan& plan, unsigned workers);

inline constexpr const char* kCsvHeader =
    "dim,n,x,y,regime,estimator,log_exact,log_est,rel_error,band,within_band";

/// Shortest round-trip decimal.
std::string format_double(double v);
void write_csv(std::ostream& out, const std::vector<ComparisonRecord>& records);
nlohmann::json to_json(const std::vector<ComparisonRecord>& records);

struct ScalingFit {
  std::string estimator;
  std::size_t points = 0;
  bool defined = false;  ///< false with fewer than 3 usable points
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares slope of log(rel_error) against log(n), one fit per
/// estimator in order of first appearance. Rows without a positive finite
/// rel_error are skipped.
std::vector<ScalingFit> error_scaling_report(const std::vector<ComparisonRecord>& records);

/// Calibration key and band shape of a record, when its estimator has one.
std::optional<std::pair<std::string, double>> band_shape(const ComparisonRecord& record);

/// Per key, the smallest C with rel_error <= C * shape on every usable record,
/// rounded up to three significant digits.
calibration::Table calibrate_constants(const std::vector<ComparisonRecord>& records);

/// The plans whose records define the frozen constants (n <= 2^20).
std::vector<SweepPlan> default_calibration_plans();
/// Canonical text of a plan list, the input of the calibration fingerprint.
std::string describe(const std::vector<SweepPlan>& plans);

}  // namespace lclt::harness
