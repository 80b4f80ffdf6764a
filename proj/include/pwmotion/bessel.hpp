#pragma once

#include <complex>
#include <vector>

namespace pwmotion {

/// Bessel functions J_0(x)..J_nmax(x) of the first kind at real x >= 0,
/// computed together by downward recurrence and normalized with the even-sum
/// identity. Much faster than nmax separate calls when whole mode ranges are
/// needed, and uniformly accurate for small and moderate orders.
std::vector<double> bessel_j_array(int nmax, double x);

/// J_0(z)..J_nmax(z) for complex z. Real and purely imaginary arguments take
/// exact fast paths (standard library J and I evaluations); general complex
/// arguments use the same downward recurrence in complex arithmetic with
/// overflow rescaling. Throws OverflowGuard when |Im z| is so large that the
/// values themselves overflow double range.
std::vector<std::complex<double>> bessel_j_array_complex(int nmax,
                                                         std::complex<double> z);

}  // namespace pwmotion
