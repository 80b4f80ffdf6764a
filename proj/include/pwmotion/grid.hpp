#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "pwmotion/errors.hpp"

namespace pwmotion {

using cplx = std::complex<double>;

/// Uniform centered grid description shared by position-space and
/// frequency-space containers.
///
/// Position grid: x_j = (j - N/2) * h with h = 2L/N, j = 0..N-1, so the box
/// is [-L, L) per axis and x = 0 lies on the grid (N must be even).
/// The dual frequency grid uses spacing pi/L with the same layout.
struct GridSpec {
  int dim = 1;         // 1, 2 or 3
  int n = 0;           // points per axis (even)
  double half_width = 0.0;

  double step() const { return 2.0 * half_width / n; }
  std::size_t size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
    return s;
  }
  /// Coordinate of index i along one axis.
  double coord(int i) const { return (i - n / 2) * step(); }
  void validate() const {
    if (dim < 1 || dim > 3) throw GridTooCoarse("grid dim must be 1, 2 or 3");
    if (n < 4 || n % 2 != 0) throw GridTooCoarse("grid needs an even point count >= 4");
    if (!(half_width > 0.0)) throw GridTooCoarse("grid half-width must be positive");
  }
};

/// A function sampled on a uniform centered box in R^n together with its
/// declared support radius. Values are complex; real-valued data simply has
/// zero imaginary parts.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(GridSpec g, double support_radius)
      : grid_(g), support_radius_(support_radius), values_(g.size(), cplx(0.0, 0.0)) {
    grid_.validate();
    if (support_radius_ < 0.0) throw GridTooCoarse("support radius must be >= 0");
    if (support_radius_ > grid_.half_width + 1e-12)
      throw GridTooCoarse("declared support radius exceeds the grid box");
  }

  const GridSpec& grid() const { return grid_; }
  double support_radius() const { return support_radius_; }
  void set_support_radius(double r) { support_radius_ = r; }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  /// Flat index of the multi-index (i0[,i1[,i2]]).
  std::size_t flat(int i0, int i1 = 0, int i2 = 0) const {
    const auto n = static_cast<std::size_t>(grid_.n);
    switch (grid_.dim) {
      case 1: return static_cast<std::size_t>(i0);
      case 2: return static_cast<std::size_t>(i0) * n + i1;
      default: return (static_cast<std::size_t>(i0) * n + i1) * n + i2;
    }
  }

  cplx& at(int i0, int i1 = 0, int i2 = 0) { return values_[flat(i0, i1, i2)]; }
  const cplx& at(int i0, int i1 = 0, int i2 = 0) const { return values_[flat(i0, i1, i2)]; }

  /// Euclidean length of the grid point with the given multi-index.
  double radius_at(int i0, int i1 = 0, int i2 = 0) const {
    double x = grid_.coord(i0);
    double r2 = x * x;
    if (grid_.dim >= 2) {
      double y = grid_.coord(i1);
      r2 += y * y;
    }
    if (grid_.dim >= 3) {
      double z = grid_.coord(i2);
      r2 += z * z;
    }
    return std::sqrt(r2);
  }

  /// Fills values from a callable taking the position vector.
  void sample(const std::function<cplx(const std::array<double, 3>&)>& f);

  /// Largest |value| at grid points strictly outside radius r.
  double max_abs_outside(double r) const;
  /// Largest |value| over the whole grid.
  double max_abs() const;
  /// Discrete L2 norm, h^{n/2} * sqrt(sum |v|^2), approximating the
  /// continuous L2 norm.
  double l2_norm() const;
  /// Throws NonFiniteSample if any value is NaN or infinite.
  void check_finite() const;

 private:
  GridSpec grid_;
  double support_radius_ = 0.0;
  std::vector<cplx> values_;
};

/// Fourier data on the dual grid of a SampledFunction. The forward
/// convention is F(xi) = integral f(x) exp(-i x.xi) dx with no prefactor;
/// the inverse carries (2 pi)^-n. Frequencies are xi_k = (k - N/2) * pi/L.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(int dim, int n, double freq_step)
      : dim_(dim), n_(n), freq_step_(freq_step) {
    GridSpec g{dim, n, freq_step * n / 2.0};
    g.validate();
    values_.assign(g.size(), cplx(0.0, 0.0));
  }

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double freq_step() const { return freq_step_; }
  /// Frequency coordinate of index k along one axis.
  double freq(int k) const { return (k - n_ / 2) * freq_step_; }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  std::size_t flat(int k0, int k1 = 0, int k2 = 0) const {
    const auto n = static_cast<std::size_t>(n_);
    switch (dim_) {
      case 1: return static_cast<std::size_t>(k0);
      case 2: return static_cast<std::size_t>(k0) * n + k1;
      default: return (static_cast<std::size_t>(k0) * n + k1) * n + k2;
    }
  }
  cplx& at(int k0, int k1 = 0, int k2 = 0) { return values_[flat(k0, k1, k2)]; }
  const cplx& at(int k0, int k1 = 0, int k2 = 0) const { return values_[flat(k0, k1, k2)]; }

  double max_abs() const;
  /// (2 pi)^-n * dxi^n * sum |F|^2, the frequency-side Parseval sum.
  double parseval_energy() const;

 private:
  int dim_ = 1;
  int n_ = 0;
  double freq_step_ = 0.0;
  std::vector<cplx> values_;
};

}  // namespace pwmotion
