#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pwmotion/envelopes.hpp"
#include "pwmotion/grid.hpp"

namespace pwmotion {

/// Design of a compactly supported function as an iterated convolution of
/// centered unit-mass boxes with widths a_1 >= ... >= a_K > 0. Its transform
/// is the product of the factors sin(a_k y / 2) / (a_k y / 2), the support
/// radius is (sum a_k) / 2, and the decay of the product along the real axis
/// is what the width schedule buys.
struct SincProductDesign {
  std::vector<double> widths;
  double total_support = 0.0;  // sum of widths
  double fitted_c = 1.0;       // envelope constant from the certificate
  double max_residual = 0.0;   // certificate residual at acceptance

  int term_count() const { return static_cast<int>(widths.size()); }
};

/// Pointwise evidence for |F(y)| <= C exp(-theta(y)) on a frequency grid.
/// Residuals are log|F(y)| + theta(y) - log C; the certificate passes when
/// none exceeds a small slack.
struct EnvelopeCertificate {
  std::vector<double> y_grid;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double log_c = 0.0;

  bool passed() const { return max_residual <= 1e-9; }
};

/// log of the transform modulus of a width design at frequency y, i.e.
/// sum_k log|sin(a_k y/2) / (a_k y/2)|. Exact zeros of a factor floor the
/// result at -1e300: isolated nulls only help a decay bound.
double log_abs_sinc_product(const std::vector<double>& widths, double y);

/// Checks |F| <= C exp(-theta) on a log-spaced grid over [0, y_max].
/// The constant is fitted as the sup of log|F| + theta over the head region
/// y <= y_max / 100 only, and residuals are then reported over the whole
/// grid. Fitting over the full grid would make every certificate pass by
/// construction; restricting the fit turns the tail into a real test.
/// A caller-supplied `fixed_log_c` skips the fit (used by the monotonicity
/// property checks).
EnvelopeCertificate verify_envelope(const std::function<double(double)>& log_abs_f,
                                    const DecayEnvelope& theta, double y_max = 1e4,
                                    int n_points = 4096,
                                    std::optional<double> fixed_log_c = std::nullopt);

EnvelopeCertificate verify_envelope(const SincProductDesign& design,
                                    const DecayEnvelope& theta, double y_max = 1e4);

/// Chooses box widths for a monotone envelope with Convergent verdict.
/// Schedule: raw widths theta(2^{k+1})/2^k made non-increasing by a suffix
/// maximum, scaled by a budget factor found by bisection against the
/// envelope certificate. Throws DivergentLogIntegral / InconclusiveLogIntegral
/// on the wrong verdict and BudgetExhausted when no scaling passes.
SincProductDesign design_widths(const DecayEnvelope& theta, double support_budget,
                                int k_max = 64);

/// Samples the design's time-domain function on the given 1-D grid by
/// evaluating the analytic transform product on the dual grid and inverting.
/// Grid half-width must be at least total_support.
SampledFunction realize_time_domain(const SincProductDesign& design,
                                    const GridSpec& grid);

/// Even part of g1 shifted by s (rounded to a whole number of grid cells):
/// g(x) = (g1(x - s) + g1(-x - s)) / 2. Retries a few larger shifts when the
/// even part collapses, then throws AnnihilatedSymmetrization.
SampledFunction symmetrize_and_shift(const SampledFunction& g1, double shift = 0.0);

/// Full pipeline: design widths for theta, realize on a 1-D grid, take the
/// even part, and lift to the radial function on R^dim whose transform is
/// the sinc product of the design. `n_points` controls both grids.
SampledFunction construct_radial(const DecayEnvelope& theta, int dim,
                                 double support_budget, int n_points = 512);

/// Design report for the CLI: the accepted design plus its certificate.
struct ConstructionReport {
  SincProductDesign design;
  EnvelopeCertificate certificate;
};

ConstructionReport construct_report(const DecayEnvelope& theta, double support_budget,
                                    int k_max = 64);

}  // namespace pwmotion
