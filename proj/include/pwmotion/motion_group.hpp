#pragma once

#include <array>
#include <complex>
#include <vector>

#include "pwmotion/grid.hpp"

namespace pwmotion {

/// Rigid motion of the plane: rotation by angle beta followed by translation
/// by x. Composition (x1,b1)(x2,b2) = (x1 + R(b1) x2, b1 + b2).
struct MotionElement {
  std::array<double, 2> x{0.0, 0.0};
  double beta = 0.0;  // normalized to [0, 2 pi)

  MotionElement() = default;
  MotionElement(double x0, double x1, double b);
};

MotionElement multiply(const MotionElement& g1, const MotionElement& g2);
MotionElement inverse(const MotionElement& g);

/// Principal-series parameter: orbit radius r, identified with the base
/// frequency (r, 0). The rotation stabilizer of a point in the plane's
/// frequency orbit is trivial, so no further label is needed.
struct RepresentationPoint {
  double r = 1.0;
};

/// Function on the motion group sampled on a centered 2-D position grid
/// and M uniform angles beta_l = 2 pi l / M. Values are stored position-major
/// (x index drives the slow axis, angle the fast one). The angular Fourier
/// coefficients f_m(x) = (1/M) sum_l f(x, beta_l) exp(-i m beta_l) realize
/// the normalized-Haar integral exactly for band-limited data.
class MotionGroupFunction {
 public:
  MotionGroupFunction() = default;
  MotionGroupFunction(GridSpec position_grid, int angle_count, double support_radius);

  const GridSpec& position_grid() const { return grid_; }
  int angle_count() const { return angles_; }
  double support_radius() const { return support_radius_; }
  double angle(int l) const;

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  std::size_t flat(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * grid_.n + j) * angles_ + l;
  }
  cplx& at(int i, int j, int l) { return values_[flat(i, j, l)]; }
  const cplx& at(int i, int j, int l) const { return values_[flat(i, j, l)]; }

  void sample(const std::function<cplx(double, double, double)>& f);

  /// Angular mode coefficients f_m as 2-D sampled functions; the returned
  /// vector covers m = -M/2 .. M/2 - 1 in that order.
  std::vector<SampledFunction> angular_modes() const;
  static int mode_value(int index, int angle_count) { return index - angle_count / 2; }

  /// Rebuilds values from mode coefficients f(x, beta) = sum_m f_m(x) e^{i m beta}.
  static MotionGroupFunction from_modes(const std::vector<SampledFunction>& modes,
                                        double support_radius);

  /// Discrete L2 norm over the group, (h^2 / M * sum |f|^2)^(1/2), matching
  /// Lebesgue measure in x and normalized Haar measure on the circle.
  double l2_norm() const;
  double max_abs() const;

 private:
  GridSpec grid_;
  int angles_ = 0;
  double support_radius_ = 0.0;
  std::vector<cplx> values_;
};

/// Operator Fourier coefficient at one representation: complex matrix over
/// circle modes m, m' in [-B, B], plus its Hilbert-Schmidt norm.
struct GroupFourierMatrix {
  RepresentationPoint rep;
  int band = 0;
  std::vector<cplx> entries;  // (2B+1)^2, row m' (out), column m (in)
  double hs_norm = 0.0;

  int side() const { return 2 * band + 1; }
  cplx& at(int m_out, int m_in) {
    return entries[static_cast<std::size_t>(m_out + band) * side() + (m_in + band)];
  }
  const cplx& at(int m_out, int m_in) const {
    return entries[static_cast<std::size_t>(m_out + band) * side() + (m_in + band)];
  }
};

/// Matrix coefficient <T_r(x, beta) e_m, e_m'> computed by trapezoidal
/// quadrature on the circle. The representation acts on L2 of the circle by
/// [T_r(x,beta) phi](alpha) = exp(i r x . w(alpha)) phi(alpha - beta) with
/// w(alpha) = (cos alpha, sin alpha) and basis vectors e_m(alpha) =
/// exp(-i m alpha); this convention makes the closed form
/// e^{i m beta} i^{m'-m} e^{i (m'-m) arg x} J_{m'-m}(r |x|) hold exactly.
cplx matrix_coefficient(const RepresentationPoint& rep, int m, int m_prime,
                        const MotionElement& g);

/// Bessel closed form of the same coefficient; the independent oracle for
/// the quadrature route.
cplx matrix_coefficient_closed_form(const RepresentationPoint& rep, int m,
                                    int m_prime, const MotionElement& g);

/// Band limit sufficient for radius r and support R: entries beyond
/// ceil(r R) + 16 are below 1e-12 by Bessel decay.
int default_band(double r, double support_radius);

/// Operator-valued Fourier coefficient f_hat(T_r), entries
/// (m', m) = int f(x, beta) <T_r(x,beta) e_m, e_m'> dx dbeta/(2 pi),
/// assembled by contracting angular modes with Bessel factors. Throws
/// GridTooCoarse when the position grid cannot resolve oscillation at
/// radius r and BandCapExceeded for bands beyond the implementation cap.
GroupFourierMatrix group_fourier(const MotionGroupFunction& f,
                                 const RepresentationPoint& rep, int band);

/// (r, |f_hat(T_r)|_HS) across a radius grid.
std::vector<std::pair<double, double>> hs_decay_profile(
    const MotionGroupFunction& f, const std::vector<double>& r_grid, int band);

/// One matrix entry of f_hat(T_r) continued to complex r; the integrand is
/// entire in r, so the same contraction evaluates the continuation. Throws
/// OverflowGuard when |Im r| * support_radius exceeds exp overflow range.
cplx complexified_entry(const MotionGroupFunction& f, int m, int m_prime,
                        std::complex<double> r);

/// Plancherel consistency: P(f) = int_0^rmax |f_hat(T_r)|_HS^2 r dr and the
/// ratio |f|_2^2 / P(f) per function. The measure density r dr is fixed by
/// the theory; the overall constant is only required to be the same for
/// every function, which is what the report records.
struct PlancherelReport {
  std::vector<double> norms_sq;
  std::vector<double> plancherel_integrals;
  std::vector<double> ratios;
  double max_relative_spread = 0.0;  // max |ratio - mean| / mean
  bool consistent = false;           // spread within 0.5%
};

PlancherelReport plancherel_consistency(const std::vector<MotionGroupFunction>& fs,
                                        int band, double r_max, int r_points = 257);

}  // namespace pwmotion
