#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lclt/anisotropy.hpp"
#include "lclt/calibration.hpp"
#include "lclt/estimator_1d.hpp"
#include "lclt/estimator_2d.hpp"
#include "lclt/exact_pmf.hpp"
#include "lclt/harness.hpp"
#include "lclt/series_kernels.hpp"

namespace lclt::cli {

namespace {

using Fields = std::vector<std::pair<std::string, nlohmann::json>>;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return harness::format_double(v); }

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

void emit_fields(std::ostream& out, const Fields& fields, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : fields) j[k] = v;
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : fields) {
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
}

// Writes through `write` either to --out or to `out`.
template <class Write>
void to_sink(const std::string& path, std::ostream& out, Write&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write(f);
  f.flush();
  if (!f) throw IoError("write failed for " + path);
}

std::vector<std::int64_t> parse_int_grid(const std::string& text) {
  const std::string t = text.rfind("n<=", 0) == 0 ? "1:" + text.substr(3) : text;
  const auto colon = t.find(':');
  if (colon != std::string::npos && t.find(':', colon + 1) == std::string::npos) {
    return harness::parse_n_grid(t + ":+1");
  }
  return harness::parse_n_grid(t);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size()) {
      throw UsageError("grid: not a number: \"" + item + "\"");
    }
    out.push_back(v);
  }
  return out;
}

// ------------------------------------------------------------------ identities

IdentityOutcome check_stirling(const std::vector<std::int64_t>& grid) {
  IdentityOutcome o;
  double worst = std::numeric_limits<double>::infinity();
  std::int64_t worst_n = 0;
  std::size_t failures = 0;
  for (const auto n : grid) {
    const auto c = series::stirling_bounds_check(n);
    if (!c.holds) ++failures;
    const double margin = std::min(c.r_n - c.lower, c.upper - c.r_n) / c.r_n;
    if (margin < worst) {
      worst = margin;
      worst_n = n;
    }
  }
  o.pass = failures == 0;
  o.summary = std::to_string(grid.size()) + " values of n, " + std::to_string(failures) +
              " violations, tightest relative margin " + sci(worst) + " at n=" + std::to_string(worst_n);
  return o;
}

IdentityOutcome check_taylor(const std::vector<std::int64_t>& grid) {
  IdentityOutcome o;
  std::ostringstream s;
  for (const auto L : grid) {
    const auto t = series::taylor_identity_partial(L);
    const double rem = std::numbers::ln2 - t.sum;
    const bool ok = t.tail_lower < rem && rem < t.tail_upper;
    o.pass = o.pass && ok;
    s << "\n  L=" << L << " S_L=" << fmt(t.sum) << " log2-S_L=" << fmt(rem) << " in ("
      << fmt(t.tail_lower) << ", " << fmt(t.tail_upper) << ") " << (ok ? "ok" : "VIOLATED");
  }
  o.summary = std::to_string(grid.size()) + " partial sums" + s.str();
  return o;
}

IdentityOutcome check_beta(const std::vector<std::int64_t>& grid) {
  IdentityOutcome o;
  std::size_t points = 0, failures = 0, bracket_failures = 0;
  double closest_floor = std::numeric_limits<double>::infinity();
  for (const auto n : grid) {
    for (std::int64_t x = -(n - 1); x <= n - 1; ++x) {
      ++points;
      if (!series::beta_interval_contained(n, x)) ++failures;
      const auto b = series::beta_factor(n, x);
      closest_floor = std::min(closest_floor, std::log(b.low) + 10.0 / 39.0);
      if ((n + x) % 2 == 0) {
        const double beta = series::beta_exact(n, x);
        if (!(b.low <= beta && beta <= b.high)) ++bracket_failures;
      }
    }
  }
  o.pass = failures == 0 && bracket_failures == 0;
  o.summary = std::to_string(points) + " intervals, " + std::to_string(failures) +
              " outside [e^-10/39, 1], " + std::to_string(bracket_failures) +
              " exact values outside their interval; min log(low)+10/39 = " + sci(closest_floor);
  return o;
}

IdentityOutcome check_gaussian(const std::vector<double>& grid) {
  IdentityOutcome o;
  std::ostringstream s;
  for (const double c : grid) {
    if (!(c > 0.0)) throw UsageError("grid: gaussian-tail needs c > 0");
    const auto g = series::gaussian_tail_check(c);
    const bool ok = g.relative_gap <= 1.0 / (1.0 + c * c);
    o.pass = o.pass && ok;
    s << "\n  c=" << fmt(c) << " gap=" << sci(g.relative_gap)
      << " gap*c^2=" << fmt(g.relative_gap * c * c) << " " << (ok ? "ok" : "VIOLATED");
  }
  o.summary = std::to_string(grid.size()) + " values of c" + s.str();
  return o;
}

int cmd_identities(const std::string& which, const std::string& grid, std::ostream& out) {
  static const std::vector<std::string> all = {"stirling", "taylor", "beta", "gaussian-tail"};
  std::vector<std::string> chosen;
  if (which == "all") {
    if (!grid.empty()) throw UsageError("--grid needs a single --which identity");
    chosen = all;
  } else {
    chosen = {which};
  }
  std::vector<IdentityOutcome> outcomes;
  for (const auto& id : chosen) {
    IdentityOutcome o;
    if (id == "stirling") {
      o = check_stirling(parse_int_grid(grid.empty() ? "1:2000" : grid));
    } else if (id == "taylor") {
      o = check_taylor(parse_int_grid(grid.empty() ? "1000000" : grid));
    } else if (id == "beta") {
      o = check_beta(parse_int_grid(grid.empty() ? "n<=500" : grid));
    } else {
      o = check_gaussian(parse_double_list(grid.empty() ? "2,5,10,20,50" : grid));
    }
    o.name = id;
    outcomes.push_back(std::move(o));
  }
  return report_identities(outcomes, out);
}

// ------------------------------------------------------------------- pmf1d/2d

struct PointFlags {
  std::int64_t n = 0, x = 0, y = 0;
  std::string method = "exact";
  int terms = 2;
  std::string precision = "auto";
  bool allow = false;
  std::string format = "text";
};

void exact_fields(Fields& f, const ExactRational& p) {
  f.emplace_back("value", p.str());
  f.emplace_back("linear", fmt(p.to_double()));
  f.emplace_back("log", fmt(p.log()));
}

void estimate_fields(Fields& f, const Estimate& e) {
  f.emplace_back("regime", e.regime);
  if (e.contract == Contract::LogAsymptotic) {
    f.emplace_back("contract", "log-asymptotic");
    f.emplace_back("exponent", fmt(e.log_value.log()));
  } else {
    f.emplace_back("linear", fmt(e.log_value.linear()));
    f.emplace_back("log", fmt(e.log_value.log()));
    if (e.log_lower) {
      f.emplace_back("linear_lower", fmt(std::exp(*e.log_lower)));
      f.emplace_back("log_lower", fmt(*e.log_lower));
    }
  }
  f.emplace_back("error_band", fmt(e.error_band));
  if (e.out_of_guarantee) f.emplace_back("out_of_guarantee", "true");
}

bool use_rational(const std::string& precision, std::int64_t n, std::int64_t budget, int dim) {
  if (precision == "rational") {
    if (n > budget) {
      throw BudgetError("rational mode is limited to n <= " + std::to_string(budget) + " in " +
                              std::to_string(dim) + "D; use --precision log");
    }
    return true;
  }
  return precision == "auto" && n <= budget;
}

int cmd_pmf1d(const PointFlags& p, std::ostream& out) {
  Fields f{{"n", p.n}, {"x", p.x}, {"method", p.method}};
  if (p.n < 1 && p.method != "exact") throw UsageError("--n must be >= 1");
  if (p.n < 0) throw UsageError("--n must be >= 0");
  const LatticeQuery1D q{p.n, p.x};
  if (!q.in_range()) throw UsageError("--x must satisfy |x| <= n");
  if (!q.parity_ok()) f.emplace_back("note", "x + n is odd: P(S(n)=x) = 0 by parity");
  if (p.method == "exact") {
    if (use_rational(p.precision, p.n, exact::kRationalBudget1D, 1)) {
      f.emplace_back("precision", "rational");
      exact_fields(f, exact::pmf1d_exact_rational(q));
    } else {
      const LogProb v = exact::pmf1d_exact_log(q);
      f.emplace_back("precision", "log");
      f.emplace_back("linear", fmt(v.linear()));
      f.emplace_back("log", fmt(v.log()));
    }
  } else if (p.method == "lclt") {
    estimate_fields(f, est1d::lclt_1d(p.n, p.x));
  } else if (p.method == "lclt-trunc") {
    f.emplace_back("terms", p.terms);
    estimate_fields(f, est1d::lclt_1d_truncated(p.n, p.x, p.terms));
  } else if (p.method == "lawler-limic") {
    estimate_fields(f, est1d::lawler_limic_1d(p.n, p.x));
  } else {
    estimate_fields(f, est1d::baseline_1d(p.n, p.x));
  }
  emit_fields(out, f, p.format);
  return kOk;
}

int cmd_pmf2d(const PointFlags& p, std::ostream& out) {
  Fields f{{"n", p.n}, {"x", p.x}, {"y", p.y}, {"method", p.method}};
  if (p.n < 1 && p.method != "exact") throw UsageError("--n must be >= 1");
  if (p.n < 0) throw UsageError("--n must be >= 0");
  const LatticeQuery2D q{p.n, p.x, p.y};
  if (!q.in_range()) throw UsageError("--x, --y must satisfy |x| + |y| <= n");
  if (!q.parity_ok()) f.emplace_back("note", "x + y + n is odd: P(S(n)=(x,y)) = 0 by parity");
  est2d::Options opt;
  opt.allow_out_of_guarantee = p.allow;
  if (p.method == "exact") {
    if (use_rational(p.precision, p.n, exact::kRationalBudget2D, 2)) {
      f.emplace_back("precision", "rational");
      exact_fields(f, exact::pmf2d_exact_rational(q));
    } else {
      const LogProb v = exact::pmf2d_exact_log(q);
      f.emplace_back("precision", "log");
      f.emplace_back("linear", fmt(v.linear()));
      f.emplace_back("log", fmt(v.log()));
    }
  } else if (p.method == "regular") {
    estimate_fields(f, est2d::lclt_2d_regular(p.n, p.x, p.y, opt));
  } else if (p.method == "regular-trunc") {
    f.emplace_back("terms", p.terms);
    estimate_fields(f, est2d::lclt_2d_truncated(p.n, p.x, p.y, p.terms, opt));
  } else if (p.method == "irregular") {
    estimate_fields(f, est2d::lclt_2d_irregular(p.n, p.x, p.y, opt));
  } else {
    estimate_fields(f, est2d::baseline_2d(p.n, p.x, p.y));
  }
  emit_fields(out, f, p.format);
  return kOk;
}

// ---------------------------------------------------------------------- sweep

struct SweepFlags {
  std::string plan_path;
  int dim = 1;
  std::string profile;
  std::string ns;
  std::string estimators;
  bool allow = false;
  std::string format = "csv";
  std::string out_path;
};

void write_records(std::ostream& out, const std::vector<harness::ComparisonRecord>& recs,
                   const std::string& format) {
  if (format == "json") {
    out << harness::to_json(recs).dump(2) << '\n';
  } else {
    harness::write_csv(out, recs);
  }
}

int cmd_sweep(const SweepFlags& s, std::ostream& out, std::ostream& err) {
  harness::SweepPlan plan;
  if (!s.plan_path.empty()) {
    std::ifstream in(s.plan_path);
    if (!in) throw IoError("cannot read plan " + s.plan_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw harness::PlanError("plan", std::string("invalid JSON: ") + e.what());
    }
    plan = harness::SweepPlan::from_json(j);
  } else {
    if (s.profile.empty()) throw harness::PlanError("profile", "missing (--profile or --plan)");
    if (s.estimators.empty()) throw harness::PlanError("estimators", "missing (--estimators)");
    plan.dim = s.dim;
    plan.ns = harness::parse_n_grid(s.ns);
    plan.profile = s.profile;
    std::stringstream ss(s.estimators);
    for (std::string e; std::getline(ss, e, ',');) plan.estimators.push_back(e);
    plan.allow_out_of_guarantee = s.allow;
    plan.validate();
  }
  const std::string sink = !s.out_path.empty() ? s.out_path : plan.sink.value_or("");
  const auto recs = harness::run_sweep(plan);
  to_sink(sink, out, [&](std::ostream& o) { write_records(o, recs, s.format); });
  for (const auto& fit : harness::error_scaling_report(recs)) {
    err << "# " << fit.estimator << ": ";
    if (fit.defined) {
      err << "slope " << fmt(fit.slope) << " over " << fit.points << " points\n";
    } else {
      err << "slope undefined (" << fit.points << " usable points)\n";
    }
  }
  return kOk;
}

// ----------------------------------------------------------------- anisotropy

int cmd_anisotropy(std::int64_t n, const std::string& r_grid, const std::string& format,
                   const std::string& out_path, std::ostream& out) {
  if (n < 1) throw UsageError("--n must be >= 1");
  const std::vector<std::int64_t> grid =
      r_grid == "auto" ? aniso::auto_radius_grid(n) : harness::parse_n_grid(r_grid);
  const auto sweep = aniso::symmetry_radius_sweep(n, grid);
  const auto summary = aniso::threshold_summary(sweep);

  to_sink(out_path, out, [&](std::ostream& o) {
    if (format == "json") {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : sweep.records) {
        nlohmann::ordered_json j;
        j["n"] = r.n;
        j["r"] = r.r;
        if (r.error) {
          j["error"] = *r.error;
        } else {
          j["axis"] = {r.axis_point.x, r.axis_point.y};
          j["diag"] = {r.diag_point.x, r.diag_point.y};
          j["log_p_axis"] = r.log_p_axis;
          j["log_p_diag"] = r.log_p_diag;
          j["log_ratio_exact"] = r.log_ratio_exact;
          j["log_ratio_predicted"] = r.log_ratio_predicted;
          j["predicted_band"] = r.predicted_band;
          j["axis_regime"] = r.axis_regime;
          j["diag_regime"] = r.diag_regime;
          j["within_corollary_range"] = r.within_corollary_range;
        }
        arr.push_back(j);
      }
      nlohmann::ordered_json doc;
      doc["records"] = arr;
      doc["monotone_beyond_threshold"] = sweep.monotone_beyond_threshold;
      doc["largest_symmetric_r"] = summary.largest_symmetric_r ? nlohmann::ordered_json(*summary.largest_symmetric_r) : nlohmann::ordered_json(nullptr);
      doc["smallest_broken_r"] = summary.smallest_broken_r ? nlohmann::ordered_json(*summary.smallest_broken_r) : nlohmann::ordered_json(nullptr);
      o << doc.dump(2) << '\n';
      return;
    }
    o << "n,r,axis_x,axis_y,diag_x,diag_y,log_p_axis,log_p_diag,log_ratio_exact,"
         "log_ratio_predicted,predicted_band,axis_regime,diag_regime,within_corollary_range,error\n";
    for (const auto& r : sweep.records) {
      o << r.n << ',' << r.r << ',';
      if (r.error) {
        o << ",,,,,,,,,,,," << '"' << *r.error << '"' << '\n';
        continue;
      }
      o << r.axis_point.x << ',' << r.axis_point.y << ',' << r.diag_point.x << ',' << r.diag_point.y
        << ',' << fmt(r.log_p_axis) << ',' << fmt(r.log_p_diag) << ',' << fmt(r.log_ratio_exact)
        << ',' << fmt(r.log_ratio_predicted) << ',' << fmt(r.predicted_band) << ','
        << r.axis_regime << ',' << r.diag_regime << ','
        << (r.within_corollary_range ? "true" : "false") << ",\n";
    }
  });
  if (format != "json") {
    const auto opt = [](const std::optional<std::int64_t>& v) {
      return v ? std::to_string(*v) : std::string("none");
    };
    out << "# largest r with |log ratio| < 0.5: " << opt(summary.largest_symmetric_r) << '\n'
        << "# smallest r with |log ratio| > 1: " << opt(summary.smallest_broken_r) << '\n'
        << "# monotone beyond n^(3/4): " << (sweep.monotone_beyond_threshold ? "yes" : "no") << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------ calibrate

int cmd_calibrate(const std::string& out_path, std::ostream& out) {
  const auto plans = harness::default_calibration_plans();
  std::vector<harness::ComparisonRecord> all;
  for (const auto& plan : plans) {
    auto recs = harness::run_sweep(plan);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  calibration::CalibrationFile file;
  file.grid = "default calibration plans, n = 64..1048576 (x2)";
  file.fingerprint = calibration::fingerprint(harness::describe(plans));
  file.constants = harness::calibrate_constants(all);
  if (out_path.empty()) {
    out << "fingerprint " << file.fingerprint << '\n';
  } else {
    try {
      calibration::save(out_path, file);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }
  for (const auto& [key, c] : file.constants) out << key << " = " << fmt(c) << '\n';
  return kOk;
}

}  // namespace

int report_identities(const std::vector<IdentityOutcome>& outcomes, std::ostream& out) {
  bool pass = true;
  for (const auto& o : outcomes) {
    pass = pass && o.pass;
    out << o.name << ": " << (o.pass ? "pass" : "FAIL") << " (" << o.summary << ")\n";
  }
  return pass ? kOk : kIdentityFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic point probabilities of simple random walk", "lclt"};
  app.require_subcommand(1);

  PointFlags p1, p2;
  auto* pmf1d = app.add_subcommand("pmf1d", "P(S(n)=x) on Z");
  pmf1d->add_option("--n", p1.n, "walk length")->required();
  pmf1d->add_option("--x", p1.x, "target")->required();
  pmf1d->add_option("--method", p1.method)
      ->check(CLI::IsMember({"exact", "lclt", "lclt-trunc", "lawler-limic", "baseline"}));
  pmf1d->add_option("--terms", p1.terms, "truncation order N for lclt-trunc")->check(CLI::Range(2, 1000));
  pmf1d->add_option("--precision", p1.precision)->check(CLI::IsMember({"auto", "rational", "log"}));
  pmf1d->add_option("--format", p1.format)->check(CLI::IsMember({"text", "json"}));

  auto* pmf2d = app.add_subcommand("pmf2d", "P(S(n)=(x,y)) on Z^2");
  pmf2d->add_option("--n", p2.n, "walk length")->required();
  pmf2d->add_option("--x", p2.x)->required();
  pmf2d->add_option("--y", p2.y)->required();
  pmf2d->add_option("--method", p2.method)
      ->check(CLI::IsMember({"exact", "regular", "regular-trunc", "irregular", "baseline"}));
  pmf2d->add_option("--terms", p2.terms, "truncation order N for regular-trunc")->check(CLI::Range(2, 1000));
  pmf2d->add_option("--precision", p2.precision)->check(CLI::IsMember({"auto", "rational", "log"}));
  pmf2d->add_flag("--allow-out-of-guarantee", p2.allow, "evaluate outside the estimator's regime");
  pmf2d->add_option("--format", p2.format)->check(CLI::IsMember({"text", "json"}));

  std::string which = "all", grid;
  auto* ids = app.add_subcommand("identities", "numeric identities behind the error bounds");
  ids->add_option("--which", which)->check(CLI::IsMember({"stirling", "taylor", "beta", "gaussian-tail", "all"}));
  ids->add_option("--grid", grid, "a:b, n<=N, or a comma list");

  SweepFlags sw;
  auto* sweep = app.add_subcommand("sweep", "exact-vs-estimator comparison sweep");
  sweep->add_option("--plan", sw.plan_path, "JSON plan file");
  sweep->add_option("--dim", sw.dim)->check(CLI::IsMember({1, 2}));
  sweep->add_option("--profile", sw.profile, "e.g. \"x=n^0.6\" or \"x=0,y=n^0.8\"");
  sweep->add_option("--ns", sw.ns, "a:b:xK, a:b:+S or a comma list");
  sweep->add_option("--estimators", sw.estimators, "comma-separated estimator names");
  sweep->add_flag("--allow-out-of-guarantee", sw.allow);
  sweep->add_option("--format", sw.format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sw.out_path);

  std::int64_t an = 0;
  std::string r_grid = "auto", a_format = "csv", a_out;
  auto* aniso_cmd = app.add_subcommand("anisotropy", "axis vs diagonal ratios at common radii");
  aniso_cmd->add_option("--n", an)->required();
  aniso_cmd->add_option("--r-grid", r_grid, "auto, a:b:xK, a:b:+S or a comma list");
  aniso_cmd->add_option("--format", a_format)->check(CLI::IsMember({"csv", "json"}));
  aniso_cmd->add_option("--out", a_out);

  std::string c_out;
  auto* calib = app.add_subcommand("calibrate", "recompute the band constants on the default grid");
  calib->add_option("--out", c_out, "write the calibration JSON here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*pmf1d) return cmd_pmf1d(p1, out);
    if (*pmf2d) return cmd_pmf2d(p2, out);
    if (*ids) return cmd_identities(which, grid, out);
    if (*sweep) return cmd_sweep(sw, out, err);
    if (*aniso_cmd) return cmd_anisotropy(an, r_grid, a_format, a_out, out);
    if (*calib) return cmd_calibrate(c_out, out);
  } catch (const harness::PlanError& e) {
    err << "error: malformed plan: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const RegimeError& e) {
    err << "error: regime " << e.regime() << ": " << e.what() << '\n';
    return kRegimeError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace lclt::cli
