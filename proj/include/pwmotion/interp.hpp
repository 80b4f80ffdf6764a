#pragma once

#include "pwmotion/grid.hpp"

namespace pwmotion {

/// Cubic B-spline interpolant of a sampled function. Construction runs the
/// standard recursive prefilter along each axis so that the spline passes
/// through the samples exactly; evaluation is then a separable 4-point
/// stencil per axis. For smooth data the interpolation error is O(h^4),
/// which line integrals of moderately fine grids need to reach 1e-6 level
/// accuracy. Points outside the grid box evaluate to zero, matching the
/// compact support of every function this project samples.
class CubicSpline {
 public:
  explicit CubicSpline(const SampledFunction& f);

  const GridSpec& grid() const { return grid_; }

  /// Value of the interpolant at (x0[, x1[, x2]]).
  cplx eval(double x0, double x1 = 0.0, double x2 = 0.0) const;

 private:
  void filter_axis(int axis);

  GridSpec grid_;
  std::vector<cplx> coef_;
};

}  // namespace pwmotion
