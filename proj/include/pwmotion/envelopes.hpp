#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pwmotion/errors.hpp"

namespace pwmotion {

/// Outcome of the tail classification of integral( theta(t)/(1+t^2) ).
enum class Verdict { Convergent, Divergent, Inconclusive };

std::string to_string(Verdict v);

/// Optional symbolic description of an envelope's tail,
/// theta(t) ~ scale * t^power / log(e+t)^log_power for large t.
///
/// The numeric classifier never reads this; it exists for the opt-in
/// symbolic fast path and for scans that must walk far beyond double range
/// (the half-plane divergence mechanism), where only closed-form window
/// increments remain computable.
struct TailClass {
  double power = 0.0;
  double log_power = 0.0;
  double scale = 1.0;
};

/// A decay envelope theta: [0, inf) -> [0, inf). The classifier integrates
/// theta(t)/(1+t^2) over dyadic windows, so theta only needs to be locally
/// integrable; it is evaluated pointwise through `evaluate`.
struct DecayEnvelope {
  std::function<double(double)> evaluate;
  bool monotone_nondecreasing = false;
  std::optional<TailClass> tail_class;
  std::string label;  // parse spec or human-readable tag, used in reports

  /// Evaluates with the domain checks every caller relies on: throws
  /// NegativeEnvelope on theta(t) < 0 and NonFiniteSample on NaN/inf.
  double operator()(double t) const;
};

/// Classification result together with the evidence that produced it.
/// `windows` holds the dyadic partial integrals (the integral over [0,1] or
/// [1,2) start window first, then [2^k, 2^{k+1}) in order); their partial
/// sums are non-decreasing because every window is non-negative.
struct LogIntegralVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double value = 0.0;        // partial + extrapolated tail when Convergent
  double partial = 0.0;      // integral up to t_max, always reported
  double tail_estimate = 0.0;
  std::vector<double> windows;
  std::string note;          // which decision branch fired, for reports
};

struct ClassifierOptions {
  double t_max = 1048576.0;  // 2^20
  double window_abs_tol = 1e-9;
  double eps_div = 1e-3;     // floor for the non-decaying-window test
};

/// Classifies integral_0^inf theta(t)/(1+t^2) dt by adaptive quadrature over
/// dyadic windows followed by a ratio-decay test, and reports the value with
/// an extrapolated tail when Convergent.
LogIntegralVerdict log_integral_1d(const DecayEnvelope& theta,
                                   const ClassifierOptions& opt = {});

/// Radial analogue: integral over ||y|| >= 1 of theta(||y||)/||y||^{n+1},
/// reduced to surface(S^{n-1}) * integral_1^inf theta(r)/r^2 dr. Same
/// dyadic machinery, same verdict semantics.
LogIntegralVerdict log_integral_radial(const DecayEnvelope& theta, int dim,
                                       const ClassifierOptions& opt = {});

/// Verdict from the symbolic tail class alone (no quadrature). Opt-in fast
/// path; throws Error when the envelope carries no tail class.
Verdict classify_symbolic(const DecayEnvelope& theta);

/// Surface area of the unit sphere S^{n-1} in R^n (2, 2 pi, 4 pi for
/// n = 1, 2, 3).
double unit_sphere_surface(int dim);

/// Parses the envelope mini-language:
///   "zero"        theta = 0
///   "linear"      theta = t
///   "sqrt"        theta = sqrt(t)
///   "pow:a"       theta = t^a          (a >= 0)
///   "log2damped"  theta = t / log^2(e+t)
///   "powlog:a"    theta = t^a / log(e+t)
///   "powlog2:a"   theta = t^a / log^2(e+t)
///   "table:path"  piecewise-linear interpolation of a two-column CSV
///                 (t, theta); beyond the last point the last slope is
///                 extended linearly and clamped at zero.
DecayEnvelope parse_envelope(const std::string& spec);

/// Table-backed envelope from explicit samples (the "table:" spec goes
/// through this after reading the CSV).
DecayEnvelope make_table_envelope(std::vector<double> t, std::vector<double> theta,
                                  std::string label = "table");

}  // namespace pwmotion
