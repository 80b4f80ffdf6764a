// Python bindings for the core operations: envelope classification,
// certified construction, half-plane checks, motion-group coefficients, and
// free evolution. Containers cross the boundary as plain lists and dicts so
// the module has no runtime dependency beyond the interpreter.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <vector>

#include "pwmotion/envelopes.hpp"
#include "pwmotion/errors.hpp"
#include "pwmotion/euclid.hpp"
#include "pwmotion/grid.hpp"
#include "pwmotion/halfplane.hpp"
#include "pwmotion/motion_group.hpp"
#include "pwmotion/pw_construct.hpp"
#include "pwmotion/schrodinger.hpp"

namespace py = pybind11;
using namespace pwmotion;

namespace {

py::dict verdict_dict(const LogIntegralVerdict& v) {
  py::dict d;
  d["verdict"] = to_string(v.verdict);
  d["value"] = v.value;
  d["partial"] = v.partial;
  d["tail_estimate"] = v.tail_estimate;
  d["window_count"] = static_cast<int>(v.windows.size());
  d["note"] = v.note;
  return d;
}

py::dict design_dict(const ConstructionReport& rep) {
  py::dict d;
  d["widths"] = rep.design.widths;
  d["total_support"] = rep.design.total_support;
  d["term_count"] = rep.design.term_count();
  d["log_c"] = rep.certificate.log_c;
  d["max_residual"] = rep.certificate.max_residual;
  d["passed"] = rep.certificate.passed();
  return d;
}

py::dict uniqueness_dict(const UniquenessReport& rep) {
  py::dict d;
  d["verdict"] = to_string(rep.theta_verdict);
  d["input_zero"] = rep.input_zero;
  d["envelope_holds"] = rep.envelope_holds;
  d["fitted_log_c"] = rep.fitted_log_c;
  d["max_violation"] = rep.max_violation;
  d["violation_radius"] = rep.violation_radius;
  d["consistent"] = rep.consistent;
  return d;
}

SampledFunction line_function(const std::vector<std::complex<double>>& values,
                              double half_width, double support) {
  const int n = static_cast<int>(values.size());
  SampledFunction f(GridSpec{1, n, half_width}, support);
  f.values() = values;
  f.check_finite();
  return f;
}

}  // namespace

PYBIND11_MODULE(_pwmotion, m) {
  m.doc() = "numerical toolkit: decay envelopes, certified compactly "
            "supported constructions, half-plane majorants, motion-group "
            "transforms, and free evolution";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DivergentLogIntegral>(m, "DivergentLogIntegral",
                                               base.ptr());
  py::register_exception<InconclusiveLogIntegral>(m, "InconclusiveLogIntegral",
                                                  base.ptr());
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", base.ptr());

  m.def(
      "classify",
      [](const std::string& theta, int dim) {
        DecayEnvelope env = parse_envelope(theta);
        return verdict_dict(dim <= 1 ? log_integral_1d(env)
                                     : log_integral_radial(env, dim));
      },
      py::arg("theta"), py::arg("dim") = 1,
      "Classify the decay-budget integral of an envelope spec "
      "(e.g. 'sqrt', 'pow:0.5', 'linear', 'table:<csv>').");

  m.def(
      "construct",
      [](const std::string& theta, double budget) {
        return design_dict(construct_report(parse_envelope(theta), budget));
      },
      py::arg("theta"), py::arg("budget"),
      "Width design and certificate for a compactly supported function "
      "whose transform decays like exp(-theta). Raises DivergentLogIntegral "
      "when no such function exists.");

  m.def(
      "realize",
      [](const std::string& theta, double budget, int n, double half_width) {
        SincProductDesign design =
            design_widths(parse_envelope(theta), budget);
        SampledFunction g = symmetrize_and_shift(
            realize_time_domain(design, GridSpec{1, n, half_width}));
        py::dict d;
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          xs[static_cast<std::size_t>(i)] = g.grid().coord(i);
        d["x"] = xs;
        d["values"] = g.values();
        d["support"] = g.support_radius();
        return d;
      },
      py::arg("theta"), py::arg("budget"), py::arg("n") = 1024,
      py::arg("half_width") = 8.0,
      "Sample the even time-domain realization of the certified design on a "
      "centered 1-D grid.");

  m.def(
      "matrix_coefficient",
      [](double r, int mode, int mode_prime, double x1, double x2, double beta,
         bool closed_form) {
        RepresentationPoint rep{r};
        MotionElement g(x1, x2, beta);
        return closed_form
                   ? matrix_coefficient_closed_form(rep, mode, mode_prime, g)
                   : matrix_coefficient(rep, mode, mode_prime, g);
      },
      py::arg("r"), py::arg("mode"), py::arg("mode_prime"), py::arg("x1"),
      py::arg("x2"), py::arg("beta"), py::arg("closed_form") = true,
      "Matrix coefficient of the radius-r representation at the group "
      "element ((x1, x2), beta); closed_form=False uses circle quadrature.");

  m.def(
      "default_band", &default_band, py::arg("r"), py::arg("support_radius"),
      "Matrix band that captures a function of the given support at radius r.");

  m.def(
      "poisson_integral",
      [](const std::vector<double>& t, const std::vector<double>& log_mod,
         double tail_p, double tail_q, double x, double y) {
        BoundaryLogData b;
        b.t = t;
        b.log_mod = log_mod;
        b.tail = TailModel{tail_p, tail_q};
        return poisson_integral(b, x, y);
      },
      py::arg("t"), py::arg("log_mod"), py::arg("tail_p"), py::arg("tail_q"),
      py::arg("x"), py::arg("y"),
      "Harmonic extension of boundary data to the upper half-plane point "
      "(x, y); the tail behaves like tail_p * log|t| + tail_q.");

  m.def(
      "divergence_scan",
      [](const std::string& theta, double x, double y, double target) {
        auto scan =
            poisson_divergence_scan(parse_envelope(theta), x, y, target);
        py::dict d;
        d["crossed"] = scan.crossed;
        d["doublings"] = scan.doublings;
        d["value"] = scan.value;
        d["exhausted_numeric_range"] = scan.exhausted_numeric_range;
        return d;
      },
      py::arg("theta"), py::arg("x") = 0.0, py::arg("y") = 1.0,
      py::arg("target") = -1e3,
      "Truncated Poisson integrals of -theta(|t|) over dyadically growing "
      "windows until the target is crossed.");

  m.def(
      "free_propagate",
      [](const std::vector<std::complex<double>>& values, double half_width,
         double support, double t) {
        EvolvedState ev =
            free_propagate(line_function(values, half_width, support), t);
        py::dict d;
        d["values"] = ev.state.values();
        d["support"] = ev.state.support_radius();
        d["time"] = ev.time;
        return d;
      },
      py::arg("values"), py::arg("half_width"), py::arg("support"),
      py::arg("t"),
      "Free evolution of 1-D samples on a centered grid by the spectral "
      "multiplier; the returned support accounts for dispersive spreading.");

  m.def(
      "uniqueness_rn",
      [](const std::vector<std::complex<double>>& values, double half_width,
         double support, double t0, const std::string& theta) {
        return uniqueness_dict(uniqueness_experiment_rn(
            line_function(values, half_width, support), t0,
            parse_envelope(theta)));
      },
      py::arg("values"), py::arg("half_width"), py::arg("support"),
      py::arg("t0"), py::arg("theta"),
      "Evolve 1-D samples to time t0 and test |u| against C exp(-theta(|x|)); "
      "reports whether the outcome is consistent with the envelope's class.");
}
