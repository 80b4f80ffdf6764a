#include "pwmotion/bessel.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>

#include "pwmotion/errors.hpp"

namespace pwmotion {

namespace {

using cplx = std::complex<double>;

// Start order for the downward recurrence. Empirically M - max(nmax, |z|)
// extra orders in the exponentially decaying regime give full double
// precision; the sqrt term covers the transition region near order ~ |z|.
int miller_start(int nmax, double az) {
  double base = std::max(static_cast<double>(nmax), az);
  return static_cast<int>(base + 12.0 + 3.0 * std::sqrt(base + 1.0));
}

}  // namespace

std::vector<double> bessel_j_array(int nmax, double x) {
  if (nmax < 0) throw Error("bessel_j_array: nmax must be >= 0");
  if (x < 0.0) throw Error("bessel_j_array: x must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x < 1e-10) {
    // Leading series terms; the recurrence growth factor 2k/x would
    // overflow past the rescale guard at arguments this small.
    double q = x * x / 4.0;
    double lead = 1.0;  // (x/2)^k / k!
    for (int k = 0; k <= nmax && lead != 0.0; ++k) {
      out[static_cast<std::size_t>(k)] = lead * (1.0 - q / (k + 1));
      lead *= 0.5 * x / (k + 1);
    }
    return out;
  }

  const int m = miller_start(nmax, x);
  // Unnormalized downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}.
  double jp = 0.0;        // J_{k+1}
  double jc = 1e-300;     // J_k seed
  double norm = 0.0;      // J_0 + 2 sum J_{2k}
  for (int k = m; k >= 1; --k) {
    double jm = (2.0 * k / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = jc;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {
      const double s = 1e-250;
      jc *= s;
      jp *= s;
      norm *= s;
      for (double& v : out) v *= s;
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

std::vector<cplx> bessel_j_array_complex(int nmax, cplx z) {
  if (nmax < 0) throw Error("bessel_j_array_complex: nmax must be >= 0");
  std::vector<cplx> out(static_cast<std::size_t>(nmax) + 1, cplx(0.0, 0.0));

  if (z == cplx(0.0, 0.0)) {
    out[0] = 1.0;
    return out;
  }

  if (z.imag() == 0.0) {
    // J_n(-x) = (-1)^n J_n(x).
    double x = std::abs(z.real());
    auto re = bessel_j_array(nmax, x);
    for (int k = 0; k <= nmax; ++k) {
      double sgn = (z.real() < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
      out[static_cast<std::size_t>(k)] = sgn * re[static_cast<std::size_t>(k)];
    }
    return out;
  }

  if (z.real() == 0.0) {
    // J_n(iy) = i^n I_n(y) and I_n(-y) = (-1)^n I_n(y), so both signs of y
    // reduce to modified Bessel values at |y|.
    double y = std::abs(z.imag());
    if (y > 700.0)
      throw OverflowGuard("imaginary Bessel argument too large: |Im z| = " +
                          std::to_string(y));
    const cplx unit = (z.imag() > 0.0) ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    cplx phase(1.0, 0.0);
    for (int k = 0; k <= nmax; ++k) {
      out[static_cast<std::size_t>(k)] = phase * std::cyl_bessel_i(k, y);
      phase *= unit;
    }
    return out;
  }

  if (std::abs(z.imag()) > 700.0)
    throw OverflowGuard("imaginary Bessel argument too large: |Im z| = " +
                        std::to_string(std::abs(z.imag())));

  if (std::abs(z) < 1e-10) {
    cplx q = z * z / 4.0;
    cplx lead(1.0, 0.0);
    for (int k = 0; k <= nmax && lead != cplx(0.0, 0.0); ++k) {
      out[static_cast<std::size_t>(k)] = lead * (1.0 - q / static_cast<double>(k + 1));
      lead *= 0.5 * z / static_cast<double>(k + 1);
    }
    return out;
  }

  const int m = miller_start(nmax, std::abs(z));
  cplx jp(0.0, 0.0);
  cplx jc(1e-300, 0.0);
  cplx norm(0.0, 0.0);
  for (int k = m; k >= 1; --k) {
    cplx jm = (2.0 * k / z) * jc - jp;
    jp = jc;
    jc = jm;
    if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = jc;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {
      const double s = 1e-250;
      jc *= s;
      jp *= s;
      norm *= s;
      for (cplx& v : out) v *= s;
    }
  }
  if (norm == cplx(0.0, 0.0))
    throw OverflowGuard("Bessel normalization sum vanished");
  for (cplx& v : out) v /= norm;
  return out;
}

}  // namespace pwmotion
