#include "lclt/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "lclt/estimator_1d.hpp"
#include "lclt/estimator_2d.hpp"
#include "lclt/exact_pmf.hpp"
#include "parallel.hpp"

namespace lclt::harness {

// ---------------------------------------------------------------- expressions

struct Expr::Node {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Log, Sqrt, Floor, Ceil };
  Kind kind = Kind::Num;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;

  double eval(double n) const {
    switch (kind) {
      case Kind::Num:
        return value;
      case Kind::Var:
        return n;
      case Kind::Add:
        return a->eval(n) + b->eval(n);
      case Kind::Sub:
        return a->eval(n) - b->eval(n);
      case Kind::Mul:
        return a->eval(n) * b->eval(n);
      case Kind::Div:
        return a->eval(n) / b->eval(n);
      case Kind::Pow:
        return std::pow(a->eval(n), b->eval(n));
      case Kind::Neg:
        return -a->eval(n);
      case Kind::Log:
        return std::log(a->eval(n));
      case Kind::Sqrt:
        return std::sqrt(a->eval(n));
      case Kind::Floor:
        return std::floor(a->eval(n));
      case Kind::Ceil:
        return std::ceil(a->eval(n));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = k;
  node->a = std::move(a);
  node->b = std::move(b);
  node->value = v;
  return node;
}

// expr  := term (('+' | '-') term)*
// term  := unary (('*' | '/') unary | <implicit> unary)*
// unary := '-' unary | power
// power := primary ('^' unary)?
class Parser {
 public:
  Parser(const std::string& text, const std::string& field) : s_(text), field_(field) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PlanError(field_, msg + " in expression \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = make(Kind::Add, lhs, term());
      } else if (eat('-')) {
        lhs = make(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = make(Kind::Mul, lhs, unary());
      } else if (eat('/')) {
        lhs = make(Kind::Div, lhs, unary());
      } else if (starts_primary()) {  // "0.5n", "2sqrt(n)"
        lhs = make(Kind::Mul, lhs, unary());
      } else {
        return lhs;
      }
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Kind::Neg, unary());
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Kind::Pow, base, unary());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = s_.data() + pos_;
      const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Kind::Num, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "n") return make(Kind::Var);
      static const std::map<std::string, Kind> funcs = {
          {"log", Kind::Log}, {"sqrt", Kind::Sqrt}, {"floor", Kind::Floor}, {"ceil", Kind::Ceil}};
      const auto it = funcs.find(name);
      if (it == funcs.end()) fail("unknown name '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!eat(')')) fail("missing ')'");
      return make(it->second, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::string& field_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::int64_t parse_int(const std::string& s, const std::string& field) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw PlanError(field, "not an integer: \"" + s + "\"");
  }
  return v;
}

// ----------------------------------------------------------------- estimators

enum class EstKind { Lclt1d, Lclt1dTrunc, LawlerLimic, Baseline1d, Regular, RegularTrunc, Irregular, Baseline2d };

struct EstSpec {
  EstKind kind;
  int N = 0;
};

EstSpec parse_estimator(const std::string& name, int dim) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  int N = 0;
  if (colon != std::string::npos) {
    N = static_cast<int>(parse_int(name.substr(colon + 1), "estimators"));
    if (N < 2) throw PlanError("estimators", "truncation order must be >= 2 in \"" + name + "\"");
  }
  const bool truncated = colon != std::string::npos;
  if (dim == 1) {
    if (head == "lclt" && !truncated) return {EstKind::Lclt1d};
    if (head == "lclt-trunc" && truncated) return {EstKind::Lclt1dTrunc, N};
    if (head == "lawler-limic" && !truncated) return {EstKind::LawlerLimic};
    if (head == "baseline" && !truncated) return {EstKind::Baseline1d};
  } else {
    if (head == "regular" && !truncated) return {EstKind::Regular};
    if (head == "regular-trunc" && truncated) return {EstKind::RegularTrunc, N};
    if (head == "irregular" && !truncated) return {EstKind::Irregular};
    if (head == "baseline" && !truncated) return {EstKind::Baseline2d};
  }
  throw PlanError("estimators", "unknown " + std::to_string(dim) + "D estimator \"" + name + "\"");
}

Estimate evaluate(const EstSpec& spec, std::int64_t n, std::int64_t x, std::int64_t y, bool allow) {
  est2d::Options opt;
  opt.allow_out_of_guarantee = allow;
  switch (spec.kind) {
    case EstKind::Lclt1d:
      return est1d::lclt_1d(n, x);
    case EstKind::Lclt1dTrunc:
      return est1d::lclt_1d_truncated(n, x, spec.N);
    case EstKind::LawlerLimic:
      return est1d::lawler_limic_1d(n, x);
    case EstKind::Baseline1d:
      return est1d::baseline_1d(n, x);
    case EstKind::Regular:
      return est2d::lclt_2d_regular(n, x, y, opt);
    case EstKind::RegularTrunc:
      return est2d::lclt_2d_truncated(n, x, y, spec.N, opt);
    case EstKind::Irregular:
      return est2d::lclt_2d_irregular(n, x, y, opt);
    case EstKind::Baseline2d:
      return est2d::baseline_2d(n, x, y);
  }
  throw std::logic_error("unhandled estimator");
}

std::string regime_label(int dim, std::int64_t n, std::int64_t x, std::int64_t y) {
  try {
    if (dim == 1) return est1d::classify_regime(n, x).label();
    return est2d::label(est2d::classify_regime(n, x, y));
  } catch (const DomainError&) {
    return "OutOfRange";
  }
}

double round_up_3(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) return c;
  const double unit = std::pow(10.0, std::floor(std::log10(c)) - 2.0);
  double r = std::ceil(c / unit) * unit;
  while (r < c) r += unit;
  // Re-read through the shortest decimal so the value survives a JSON round trip.
  return std::stod(format_double(r));
}

}  // namespace

Expr Expr::parse(const std::string& text, const std::string& field) {
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text, field).parse();
  return e;
}

double Expr::operator()(double n) const { return root_->eval(n); }

// -------------------------------------------------------------------- profile

Profile Profile::parse(const std::string& text, int dim) {
  if (dim != 1 && dim != 2) throw PlanError("dim", "must be 1 or 2");
  Profile p;
  p.text_ = text;
  p.dim_ = dim;
  const auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != dim) {
    throw PlanError("profile", "expected " + std::string(dim == 1 ? "x=EXPR" : "x=EXPR,y=EXPR") +
                                   ", got \"" + text + "\"");
  }
  const char names[] = {'x', 'y'};
  for (int i = 0; i < dim; ++i) {
    const std::string& part = parts[static_cast<std::size_t>(i)];
    const auto eq = part.find('=');
    if (eq == std::string::npos || trim(part.substr(0, eq)) != std::string(1, names[i])) {
      throw PlanError("profile", "expected '" + std::string(1, names[i]) + "=...' in \"" + text + "\"");
    }
    p.coords_.push_back(Expr::parse(part.substr(eq + 1), "profile"));
  }
  return p;
}

std::pair<std::int64_t, std::int64_t> Profile::point(std::int64_t n) const {
  std::int64_t c[2] = {0, 0};
  for (int i = 0; i < dim_; ++i) {
    const double v = std::floor(coords_[static_cast<std::size_t>(i)](static_cast<double>(n)));
    if (!std::isfinite(v) || std::abs(v) > 9e15) {
      throw PlanError("profile", "\"" + text_ + "\" is not finite at n=" + std::to_string(n));
    }
    c[i] = static_cast<std::int64_t>(v);
  }
  std::int64_t& last = c[dim_ - 1];
  if (((n + c[0] + c[1]) % 2 + 2) % 2 != 0) last += (last > 0) ? -1 : 1;
  const std::int64_t l1 = std::abs(c[0]) + std::abs(c[1]);
  if (l1 > n) {
    throw PlanError("profile", "\"" + text_ + "\" leaves the reachable range at n=" + std::to_string(n));
  }
  return {c[0], c[1]};
}

std::vector<std::int64_t> parse_n_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  if (t.find(':') == std::string::npos) {
    std::vector<std::int64_t> out;
    for (const auto& part : split(t, ',')) out.push_back(parse_int(part, "ns"));
    return out;
  }
  const auto parts = split(t, ':');
  if (parts.size() != 3 || parts[2].size() < 2) {
    throw PlanError("ns", "expected a:b:xK or a:b:+S, got \"" + text + "\"");
  }
  const std::int64_t a = parse_int(parts[0], "ns");
  const std::int64_t b = parse_int(parts[1], "ns");
  const std::int64_t step = parse_int(parts[2].substr(1), "ns");
  if (a < 1 || b < a) throw PlanError("ns", "need 1 <= a <= b in \"" + text + "\"");
  std::vector<std::int64_t> out;
  if (parts[2][0] == 'x') {
    if (step < 2) throw PlanError("ns", "geometric factor must be >= 2");
    for (std::int64_t n = a; n <= b; n *= step) {
      out.push_back(n);
      if (n > b / step) break;
    }
  } else if (parts[2][0] == '+') {
    if (step < 1) throw PlanError("ns", "arithmetic step must be >= 1");
    for (std::int64_t n = a; n <= b; n += step) out.push_back(n);
  } else {
    throw PlanError("ns", "step must start with 'x' or '+' in \"" + text + "\"");
  }
  return out;
}

// ---------------------------------------------------------------------- plans

void SweepPlan::validate() const {
  if (dim != 1 && dim != 2) throw PlanError("dim", "must be 1 or 2");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw PlanError("ns", "entries must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1]) throw PlanError("ns", "must be strictly ascending");
  }
  const Profile p = Profile::parse(profile, dim);
  for (const auto n : ns) p.point(n);
  if (estimators.empty()) throw PlanError("estimators", "empty list");
  for (const auto& name : estimators) parse_estimator(name, dim);
}

SweepPlan SweepPlan::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PlanError("plan", "must be a JSON object");
  const auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw PlanError(key, "missing");
    return j.at(key);
  };
  SweepPlan plan;
  try {
    plan.dim = need("dim").get<int>();
  } catch (const nlohmann::json::exception&) {
    throw PlanError("dim", "must be an integer");
  }
  const auto& ns = need("ns");
  if (ns.is_string()) {
    plan.ns = parse_n_grid(ns.get<std::string>());
  } else if (ns.is_array()) {
    for (const auto& v : ns) {
      if (!v.is_number_integer()) throw PlanError("ns", "entries must be integers");
      plan.ns.push_back(v.get<std::int64_t>());
    }
  } else {
    throw PlanError("ns", "must be an array or a grid string");
  }
  if (!need("profile").is_string()) throw PlanError("profile", "must be a string");
  plan.profile = j.at("profile").get<std::string>();
  const auto& est = need("estimators");
  if (!est.is_array()) throw PlanError("estimators", "must be an array of names");
  for (const auto& v : est) {
    if (!v.is_string()) throw PlanError("estimators", "entries must be strings");
    plan.estimators.push_back(v.get<std::string>());
  }
  if (j.contains("allow_out_of_guarantee")) {
    if (!j.at("allow_out_of_guarantee").is_boolean()) {
      throw PlanError("allow_out_of_guarantee", "must be a boolean");
    }
    plan.allow_out_of_guarantee = j.at("allow_out_of_guarantee").get<bool>();
  }
  if (j.contains("sink")) {
    if (!j.at("sink").is_string()) throw PlanError("sink", "must be a string path");
    plan.sink = j.at("sink").get<std::string>();
  }
  plan.validate();
  return plan;
}

// ---------------------------------------------------------------------- sweep

std::vector<ComparisonRecord> run_sweep(const SweepPlan& plan) {
  return run_sweep(plan, detail::worker_count());
}

std::vector<ComparisonRecord> run_sweep(const SweepPlan& plan, unsigned workers) {
  plan.validate();
  const Profile profile = Profile::parse(plan.profile, plan.dim);
  std::vector<EstSpec> specs;
  for (const auto& name : plan.estimators) specs.push_back(parse_estimator(name, plan.dim));

  const std::size_t E = specs.size();
  std::vector<ComparisonRecord> out(plan.ns.size() * E);
  detail::parallel_for(plan.ns.size(), workers, [&](std::size_t i) {
    const std::int64_t n = plan.ns[i];
    const auto [x, y] = profile.point(n);
    const double log_exact = plan.dim == 1 ? exact::pmf1d_exact_log({n, x}).log()
                                           : exact::pmf2d_exact_log({n, x, y}).log();
    for (std::size_t e = 0; e < E; ++e) {
      ComparisonRecord& rec = out[i * E + e];
      rec.dim = plan.dim;
      rec.n = n;
      rec.x = x;
      rec.y = y;
      rec.estimator = plan.estimators[e];
      rec.log_exact = log_exact;
      try {
        const Estimate est = evaluate(specs[e], n, x, y, plan.allow_out_of_guarantee);
        rec.regime = est.regime;
        rec.log_est = est.log_value.log();
        rec.rel_error = est.error_against(log_exact);
        rec.band = est.error_band;
        rec.within_band = *rec.rel_error <= est.error_band;
        rec.out_of_guarantee = est.out_of_guarantee;
      } catch (const RegimeError& ex) {
        rec.regime = ex.regime();
        rec.error = ex.what();
      } catch (const DomainError& ex) {
        rec.regime = regime_label(plan.dim, n, x, y);
        rec.error = ex.what();
      }
    }
  });
  return out;
}

// --------------------------------------------------------------------- output

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_csv(std::ostream& out, const std::vector<ComparisonRecord>& records) {
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.dim << ',' << r.n << ',' << r.x << ',' << r.y << ',' << r.regime << ','
        << r.estimator << ',' << opt(r.log_exact) << ',' << opt(r.log_est) << ','
        << opt(r.rel_error) << ',' << opt(r.band) << ','
        << (r.within_band ? (*r.within_band ? "true" : "false") : "") << '\n';
  }
}

nlohmann::json to_json(const std::vector<ComparisonRecord>& records) {
  // Non-finite values become strings, matching the CSV spelling.
  const auto num = [](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    if (!std::isfinite(*v)) return format_double(*v);
    return *v;
  };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["dim"] = r.dim;
    j["n"] = r.n;
    j["x"] = r.x;
    j["y"] = r.y;
    j["regime"] = r.regime;
    j["estimator"] = r.estimator;
    j["log_exact"] = num(r.log_exact);
    j["log_est"] = num(r.log_est);
    j["rel_error"] = num(r.rel_error);
    j["band"] = num(r.band);
    j["within_band"] = r.within_band ? nlohmann::json(*r.within_band) : nlohmann::json(nullptr);
    if (r.out_of_guarantee) j["out_of_guarantee"] = true;
    if (r.error) j["error"] = *r.error;
    arr.push_back(std::move(j));
  }
  return arr;
}

// -------------------------------------------------------------------- scaling

std::vector<ScalingFit> error_scaling_report(const std::vector<ComparisonRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> pts;
  for (const auto& r : records) {
    if (!pts.count(r.estimator)) order.push_back(r.estimator);
    auto& v = pts[r.estimator];
    if (r.rel_error && std::isfinite(*r.rel_error) && *r.rel_error > 0.0) {
      v.emplace_back(std::log(static_cast<double>(r.n)), std::log(*r.rel_error));
    }
  }
  std::vector<ScalingFit> out;
  for (const auto& name : order) {
    const auto& v = pts[name];
    ScalingFit fit;
    fit.estimator = name;
    fit.points = v.size();
    if (v.size() >= 3) {
      double mx = 0.0, my = 0.0;
      for (const auto& [a, b] : v) {
        mx += a;
        my += b;
      }
      mx /= static_cast<double>(v.size());
      my /= static_cast<double>(v.size());
      double sxx = 0.0, sxy = 0.0;
      for (const auto& [a, b] : v) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
      }
      if (sxx > 0.0) {
        fit.defined = true;
        fit.slope = sxy / sxx;
        fit.intercept = my - fit.slope * mx;
      }
    }
    out.push_back(fit);
  }
  return out;
}

// ---------------------------------------------------------------- calibration

std::optional<std::pair<std::string, double>> band_shape(const ComparisonRecord& r) {
  if (r.error || !r.log_est) return std::nullopt;
  const int dim = r.dim;
  EstSpec spec{};
  try {
    spec = parse_estimator(r.estimator, dim);
  } catch (const PlanError&) {
    return std::nullopt;
  }
  const double n = static_cast<double>(r.n);
  const double x = static_cast<double>(std::abs(r.x));
  const double y = static_cast<double>(std::abs(r.y));
  switch (spec.kind) {
    case EstKind::Lclt1d: {
      const auto regime = est1d::classify_regime(r.n, r.x);
      const std::string key = est1d::lclt_calibration_key(regime);
      if (key.empty()) return std::nullopt;
      return std::pair{key, est1d::shape_lclt(regime, n, x)};
    }
    case EstKind::Lclt1dTrunc:
      return std::pair{std::string(calibration::kLclt1dTruncated), est1d::shape_truncated(n, x, spec.N)};
    case EstKind::LawlerLimic:
      return std::pair{std::string(calibration::kLawlerLimic), est1d::shape_lawler_limic(n, x)};
    case EstKind::Baseline1d:
      return std::pair{std::string(calibration::kBaseline1d), est1d::shape_lawler_limic(n, x)};
    case EstKind::Regular:
      return std::pair{std::string(calibration::kRegular2d), est2d::shape_regular(n)};
    case EstKind::RegularTrunc:
      return std::pair{std::string(calibration::kRegular2dTruncated),
                       est2d::shape_truncated(n, x, y, spec.N)};
    case EstKind::Irregular:
      if (*r.log_est == 0.0) return std::nullopt;
      return std::pair{std::string(calibration::kIrregular2d), est2d::shape_irregular(n, *r.log_est)};
    case EstKind::Baseline2d:
      return std::pair{std::string(calibration::kBaseline2d), est2d::shape_baseline(n, x, y)};
  }
  return std::nullopt;
}

calibration::Table calibrate_constants(const std::vector<ComparisonRecord>& records) {
  calibration::Table table;
  for (const auto& r : records) {
    if (!r.rel_error || !std::isfinite(*r.rel_error)) continue;
    const auto ks = band_shape(r);
    if (!ks || !(ks->second > 0.0)) continue;
    double& c = table[ks->first];
    c = std::max(c, *r.rel_error / ks->second);
  }
  for (auto& [key, c] : table) c = round_up_3(c);
  return table;
}

std::vector<SweepPlan> default_calibration_plans() {
  const auto grid = parse_n_grid("64:1048576:x2");
  std::vector<SweepPlan> plans;
  const auto add = [&](int dim, const std::string& profile, std::vector<std::string> est,
                       bool allow = false) {
    SweepPlan p;
    p.dim = dim;
    p.ns = grid;
    p.profile = profile;
    p.estimators = std::move(est);
    p.allow_out_of_guarantee = allow;
    plans.push_back(std::move(p));
  };
  // 1D: moderate deviations, where every estimator has a meaningful band
  for (const char* prof : {"x=0", "x=n^0.5", "x=n^0.6", "x=n^0.7"}) {
    add(1, prof, {"lclt", "lawler-limic", "baseline", "lclt-trunc:2", "lclt-trunc:3", "lclt-trunc:6"});
  }
  for (const char* prof : {"x=n^0.75", "x=n^0.8"}) {
    add(1, prof, {"lclt", "lawler-limic", "baseline", "lclt-trunc:3", "lclt-trunc:6"});
  }
  // 1D: the remaining regimes, including both sides of each regime cutoff
  for (const char* prof : {"x=n^0.85", "x=0.98*n/log(n)", "x=1.02*n/log(n)", "x=0.25n", "x=0.5n",
                           "x=0.9n", "x=n-0.98*n/log(n)^2", "x=n-n/log(n)^2-4", "x=n-2",
                           "x=n-10"}) {
    add(1, prof, {"lclt"});
  }
  // 2D regular regime: centre, moderate radii and the edge of the region
  for (const char* prof : {"x=0,y=0", "x=n^0.5,y=n^0.5", "x=0,y=n^0.6", "x=n^0.6,y=n^0.6",
                           "x=0,y=0.999*n/log(n)^2",
                           "x=0.999*n/log(n)^2/sqrt(2),y=0.999*n/log(n)^2/sqrt(2)",
                           "x=0.4*n/log(n)^2,y=0.9*n/log(n)^2"}) {
    add(2, prof, {"regular", "regular-trunc:2", "regular-trunc:3", "regular-trunc:6", "baseline"});
  }
  // 2D irregular exponent; the regime is empty at these n, so it is
  // evaluated out of guarantee
  for (const char* prof : {"x=0,y=n^0.8", "x=0,y=n^0.75", "x=n^0.5,y=n^0.8"}) {
    add(2, prof, {"irregular"}, true);
  }
  return plans;
}

std::string describe(const std::vector<SweepPlan>& plans) {
  std::string out;
  for (const auto& p : plans) {
    nlohmann::json j;
    j["dim"] = p.dim;
    j["ns"] = p.ns;
    j["profile"] = p.profile;
    j["estimators"] = p.estimators;
    j["allow_out_of_guarantee"] = p.allow_out_of_guarantee;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace lclt::harness
