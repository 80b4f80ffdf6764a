#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "pwmotion/envelopes.hpp"

namespace pwmotion {

/// Polynomial-log model for boundary data outside the sampled range:
/// log|g(t)| ~ p * log|t| + q for |t| beyond the grid. The test class
/// (transforms of compactly supported data) always admits such a bound
/// off the zero set.
struct TailModel {
  double p = 0.0;
  double q = 0.0;
};

/// log|g(t)| samples on a uniform grid, with isolated -inf entries allowed
/// at zeros of g. The Poisson machinery integrates this data against the
/// half-plane kernel.
struct BoundaryLogData {
  std::vector<double> t;        // uniform, increasing
  std::vector<double> log_mod;  // same length; -inf marks zeros
  std::optional<TailModel> tail;
};

/// Harmonic extension (1/pi) int y v(t) / (y^2 + (x-t)^2) dt of the boundary
/// data to the interior point (x, y), y > 0. Piecewise-linear data is
/// integrated cell by cell in closed form (arctan / log antiderivatives), so
/// the kernel itself contributes no quadrature error; -inf nodes are
/// replaced by the cell average of the local log-singularity model; tails
/// beyond the grid use the tail model (closed form for constant data,
/// dyadic quadrature otherwise). Throws InsufficientCoverage when more than
/// 1e-8 of the kernel mass falls outside the grid and no tail model exists.
double poisson_integral(const BoundaryLogData& b, double x, double y);

struct MajorantPoint {
  double x = 0.0;
  double y = 0.0;
  double lhs = 0.0;     // log|g(x + iy)|
  double rhs = 0.0;     // Poisson integral of the boundary data
  double margin = 0.0;  // rhs - lhs, >= 0 when the majorant inequality holds
};

/// Evaluates the log-modulus majorant inequality log|g(z)| <= P[log|g|](z)
/// at the given interior points for a function bounded by 1 on the closed
/// upper half-plane. The boundedness precondition is spot-checked on the
/// real axis (|g(t)| <= 1 + 1e-9) and the caller is expected to normalize.
std::vector<MajorantPoint> log_majorant_check(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const BoundaryLogData& boundary,
    const std::vector<std::pair<double, double>>& points);

/// Least-squares fit of log|g(i r)| ~ slope * r + intercept over the top
/// decade of the r grid. For transforms of compactly supported data the
/// slope estimates the exponential type, i.e. the support radius.
struct TypeEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double max_fit_deviation = 0.0;  // worst |data - fit| over the fitted decade
  std::vector<double> r_grid;
};

TypeEstimate estimate_exponential_type(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const std::vector<double>& r_grid);

/// Truncated Poisson integrals of the boundary data -theta(|t|) at a fixed
/// interior point, truncation growing dyadically: T_j = 2^j. For a
/// divergent envelope the sequence decreases without bound; the scan stops
/// when it crosses `target` or after `max_doublings` windows. Far windows
/// are computed in rescaled form so the scan runs arbitrarily deep without
/// forming 2^j as a double; that regime needs the envelope's symbolic tail
/// class and stops with `exhausted_numeric_range` set when it is absent.
struct DivergenceScan {
  bool crossed = false;
  long doublings = 0;    // first j with value < target, or windows consumed
  double value = 0.0;    // truncated integral at the stopping point
  bool exhausted_numeric_range = false;
};

DivergenceScan poisson_divergence_scan(const DecayEnvelope& theta, double x,
                                       double y, double target = -1e3,
                                       long max_doublings = 1L << 20);

}  // namespace pwmotion
