// Python bindings. Rationals cross the boundary as fractions.Fraction built
// from decimal numerator/denominator strings, so no precision is lost.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lclt/anisotropy.hpp"
#include "lclt/calibration.hpp"
#include "lclt/estimator_1d.hpp"
#include "lclt/estimator_2d.hpp"
#include "lclt/exact_pmf.hpp"
#include "lclt/harness.hpp"
#include "lclt/series_kernels.hpp"

namespace py = pybind11;
using namespace lclt;

namespace {

py::object to_fraction(const ExactRational& q) {
  static const py::object Fraction = py::module_::import("fractions").attr("Fraction");
  const py::object PyInt = py::module_::import("builtins").attr("int");
  return Fraction(PyInt(q.numerator().get_str()), PyInt(q.denominator().get_str()));
}

void check_budget(std::int64_t n, std::int64_t budget) {
  if (n > budget) {
    throw py::value_error("rational evaluation is limited to n <= " + std::to_string(budget) +
                          "; use the log form");
  }
}

py::dict record_dict(const harness::ComparisonRecord& r) {
  py::dict d;
  d["dim"] = r.dim;
  d["n"] = r.n;
  d["x"] = r.x;
  d["y"] = r.y;
  d["regime"] = r.regime;
  d["estimator"] = r.estimator;
  d["log_exact"] = r.log_exact;
  d["log_est"] = r.log_est;
  d["rel_error"] = r.rel_error;
  d["band"] = r.band;
  d["within_band"] = r.within_band;
  d["out_of_guarantee"] = r.out_of_guarantee;
  d["error"] = r.error;
  return d;
}

est2d::Options options(bool allow) {
  est2d::Options o;
  o.allow_out_of_guarantee = allow;
  return o;
}

}  // namespace

PYBIND11_MODULE(_lclt, m) {
  m.doc() = "Exact and asymptotic point probabilities of simple random walk on Z and Z^2";

  static py::exception<RegimeError> regime_error(m, "RegimeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const RegimeError& e) {
      py::set_error(regime_error, (e.regime() + ": " + e.what()).c_str());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const harness::PlanError& e) {
      PyErr_SetString(PyExc_ValueError, (e.field() + ": " + e.what()).c_str());
    }
  });

  py::enum_<Contract>(m, "Contract")
      .value("Relative", Contract::Relative)
      .value("LogAsymptotic", Contract::LogAsymptotic);

  py::class_<Estimate>(m, "Estimate")
      .def_property_readonly("log", [](const Estimate& e) { return e.log_value.log(); })
      .def_property_readonly("value", [](const Estimate& e) { return e.log_value.linear(); })
      .def_readonly("error_band", &Estimate::error_band)
      .def_readonly("regime", &Estimate::regime)
      .def_readonly("contract", &Estimate::contract)
      .def_readonly("log_lower", &Estimate::log_lower)
      .def_readonly("out_of_guarantee", &Estimate::out_of_guarantee)
      .def("error_against", &Estimate::error_against, py::arg("log_exact"))
      .def("within_band", &Estimate::within_band, py::arg("log_exact"))
      .def("__repr__", [](const Estimate& e) {
        return "Estimate(log=" + harness::format_double(e.log_value.log()) +
               ", band=" + harness::format_double(e.error_band) + ", regime=" + e.regime + ")";
      });

  // exact
  m.attr("RATIONAL_BUDGET_1D") = exact::kRationalBudget1D;
  m.attr("RATIONAL_BUDGET_2D") = exact::kRationalBudget2D;
  m.def("pmf1d_exact", [](std::int64_t n, std::int64_t x) {
        check_budget(n, exact::kRationalBudget1D);
        return to_fraction(exact::pmf1d_exact_rational({n, x}));
      }, py::arg("n"), py::arg("x"), "P(S(n)=x) as a Fraction");
  m.def("pmf1d_log", [](std::int64_t n, std::int64_t x) { return exact::pmf1d_exact_log({n, x}).log(); },
        py::arg("n"), py::arg("x"), "log P(S(n)=x); -inf when unreachable");
  m.def("pmf2d_exact", [](std::int64_t n, std::int64_t x, std::int64_t y) {
        check_budget(n, exact::kRationalBudget2D);
        return to_fraction(exact::pmf2d_exact_rational({n, x, y}));
      }, py::arg("n"), py::arg("x"), py::arg("y"), "P(S(n)=(x,y)) as a Fraction");
  m.def("pmf2d_log",
        [](std::int64_t n, std::int64_t x, std::int64_t y) { return exact::pmf2d_exact_log({n, x, y}).log(); },
        py::arg("n"), py::arg("x"), py::arg("y"), "log P(S(n)=(x,y)); -inf when unreachable");

  // 1D estimators
  m.def("regime_1d", [](std::int64_t n, std::int64_t x) { return est1d::classify_regime(n, x).label(); },
        py::arg("n"), py::arg("x"));
  m.def("lclt_1d", &est1d::lclt_1d, py::arg("n"), py::arg("x"));
  m.def("lclt_1d_truncated", &est1d::lclt_1d_truncated, py::arg("n"), py::arg("x"), py::arg("terms"));
  m.def("lawler_limic_1d", &est1d::lawler_limic_1d, py::arg("n"), py::arg("x"));
  m.def("baseline_1d", &est1d::baseline_1d, py::arg("n"), py::arg("x"));
  m.def("upper_bound_check", &est1d::upper_bound_check, py::arg("n"), py::arg("x"));

  // 2D estimators
  m.def("regime_2d", [](std::int64_t n, std::int64_t x, std::int64_t y) {
        return est2d::label(est2d::classify_regime(n, x, y));
      }, py::arg("n"), py::arg("x"), py::arg("y"));
  m.def("lclt_2d_regular", [](std::int64_t n, std::int64_t x, std::int64_t y, bool allow) {
        return est2d::lclt_2d_regular(n, x, y, options(allow));
      }, py::arg("n"), py::arg("x"), py::arg("y"), py::arg("allow_out_of_guarantee") = false);
  m.def("lclt_2d_truncated", [](std::int64_t n, std::int64_t x, std::int64_t y, int terms, bool allow) {
        return est2d::lclt_2d_truncated(n, x, y, terms, options(allow));
      }, py::arg("n"), py::arg("x"), py::arg("y"), py::arg("terms"),
      py::arg("allow_out_of_guarantee") = false);
  m.def("lclt_2d_irregular", [](std::int64_t n, std::int64_t x, std::int64_t y, bool allow) {
        return est2d::lclt_2d_irregular(n, x, y, options(allow));
      }, py::arg("n"), py::arg("x"), py::arg("y"), py::arg("allow_out_of_guarantee") = false);
  m.def("baseline_2d", &est2d::baseline_2d, py::arg("n"), py::arg("x"), py::arg("y"));
  m.def("saddle_max", [](std::int64_t n, std::int64_t x, std::int64_t y) {
        const est2d::SaddleInfo s = est2d::saddle_max(n, x, y);
        return py::make_tuple(s.j0, s.j0p, s.f_at_max);
      }, py::arg("n"), py::arg("x"), py::arg("y"), "(j0, j0', f(j*)) for the step-split exponent");

  // anisotropy
  m.def("measure_anisotropy", [](std::int64_t n, std::int64_t r) {
        const aniso::AnisotropyRecord a = aniso::measure_anisotropy(n, r);
        py::dict d;
        d["n"] = a.n;
        d["r"] = a.r;
        d["axis"] = py::make_tuple(a.axis_point.x, a.axis_point.y);
        d["diag"] = py::make_tuple(a.diag_point.x, a.diag_point.y);
        d["log_ratio_exact"] = a.log_ratio_exact;
        d["log_ratio_predicted"] = a.log_ratio_predicted;
        d["predicted_band"] = a.predicted_band;
        d["within_corollary_range"] = a.within_corollary_range;
        return d;
      }, py::arg("n"), py::arg("r"));
  m.def("auto_radius_grid", &aniso::auto_radius_grid, py::arg("n"));

  // harness
  m.def("run_sweep", [](const std::string& plan_json, unsigned workers) {
        const auto plan = harness::SweepPlan::from_json(nlohmann::json::parse(plan_json));
        std::vector<harness::ComparisonRecord> recs;
        {
          py::gil_scoped_release release;
          recs = workers == 0 ? harness::run_sweep(plan) : harness::run_sweep(plan, workers);
        }
        py::list out;
        for (const auto& r : recs) out.append(record_dict(r));
        return out;
      }, py::arg("plan_json"), py::arg("workers") = 0,
      "Run a sweep plan given as a JSON string; returns one dict per (n, estimator)");

  m.def("calibration_constants", [] { return calibration::frozen(); });

  // identities
  m.def("stirling_check", [](std::int64_t n) {
        const auto s = series::stirling_bounds_check(n);
        return py::make_tuple(s.lower, s.r_n, s.upper, s.holds);
      }, py::arg("n"), "(1/(12n+1), r_n, 1/(12n), holds)");
  m.def("taylor_partial", [](std::int64_t L) {
        const auto t = series::taylor_identity_partial(L);
        return py::make_tuple(t.sum, t.tail_lower, t.tail_upper);
      }, py::arg("L"), "(S_L, lower, upper) with lower < log 2 - S_L < upper");
  m.def("beta_interval_contained", &series::beta_interval_contained, py::arg("n"), py::arg("x"));
  m.def("gaussian_tail_gap", [](double c) { return series::gaussian_tail_check(c).relative_gap; },
        py::arg("c"));
}
