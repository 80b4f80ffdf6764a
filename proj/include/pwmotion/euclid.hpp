#pragma once

#include <array>
#include <vector>

#include "pwmotion/grid.hpp"

namespace pwmotion {

/// Forward transform F(xi) = sum f(x_j) exp(-i x_j . xi) h^n on the dual
/// grid xi_k = (k - N/2) * pi/L. No prefactor on the forward side; the
/// inverse carries (2 pi)^-n. Throws GridTooCoarse when the declared
/// support is sampled by fewer than four points per axis.
Spectrum fourier(const SampledFunction& f);

/// Inverse transform onto the position grid determined by the spectrum
/// (half-width L = pi / freq_step). `support_radius` declares the support
/// of the result; it defaults to the full box.
SampledFunction inverse_fourier(const Spectrum& F, double support_radius = -1.0);

/// Exact evaluation of the discrete forward transform at one arbitrary
/// frequency, sum f(x_j) exp(-i x_j . xi) h^n. This is the same Riemann sum
/// the gridded transform uses, so it agrees with `fourier` on dual-grid
/// points to rounding error, and it is alias-free off the grid. Used as the
/// direct side of the slice identity and for radial spectrum evaluation.
cplx fourier_at(const SampledFunction& f, const std::array<double, 3>& xi);

/// Hyperplane integrals Rf(omega, t) for a list of unit directions and a
/// uniform offset grid.
struct Sinogram {
  int dim = 2;
  std::vector<std::array<double, 3>> directions;
  std::vector<double> offsets;
  double offset_step = 0.0;
  std::vector<cplx> values;  // directions.size() x offsets.size(), row-major

  cplx& at(std::size_t d, std::size_t j) { return values[d * offsets.size() + j]; }
  const cplx& at(std::size_t d, std::size_t j) const {
    return values[d * offsets.size() + j];
  }
};

/// Radon transform over hyperplanes H = {x . omega = t} for n in {2, 3}.
/// Each entry integrates a cubic spline interpolant of f over the hyperplane
/// trace by the midpoint rule with spacing `quad_step` (defaults to the grid
/// spacing when <= 0). Offsets must be uniformly spaced.
Sinogram radon(const SampledFunction& f,
               const std::vector<std::array<double, 3>>& directions,
               const std::vector<double>& offsets, double quad_step = -1.0);

/// Max over the lambda grid of |A(lambda) - B(lambda)| where A is the n-D
/// transform evaluated directly at lambda * omega and B is the 1-D transform
/// of the hyperplane-integral profile in direction omega. The two sides are
/// computed by independent pipelines; for exact arithmetic they coincide.
double slice_projection_residual(const SampledFunction& f,
                                 const std::array<double, 3>& direction,
                                 const std::vector<double>& lambdas);

/// Builds the radial function f on R^n whose transform satisfies
/// f_hat(y) = (F_1 g)(|y|) for an even 1-D profile g. The 1-D transform is
/// evaluated exactly (cosine sum) at every grid radius of the dual n-D grid
/// and inverted; no radial interpolation is involved. The result reuses g's
/// point count and half-width per axis.
SampledFunction radialize(const SampledFunction& g, int dim);

}  // namespace pwmotion
