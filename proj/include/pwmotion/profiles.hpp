#pragma once

#include <cmath>

namespace pwmotion::profiles {

/// Radial battery profiles shared by the CLI, the bundled fixtures, and the
/// test batteries. Each takes the squared distance from the origin and the
/// squared support radius, vanishes outside the support, and peaks at 1 at
/// the origin.

/// cos^8 window in the normalized radius: seven continuous derivatives at
/// the edge, analytic inside.
inline double cos8_bump(double rho2, double support2) {
  double u = rho2 / support2;
  if (u >= 1.0) return 0.0;
  double c = std::cos(1.5707963267948966 * std::sqrt(u));
  double c2 = c * c;
  return c2 * c2 * c2 * c2;
}

/// (1 - u)^4 in u = rho^2 / support^2: polynomial inside, three continuous
/// derivatives at the edge.
inline double poly_bump(double rho2, double support2) {
  double u = rho2 / support2;
  if (u >= 1.0) return 0.0;
  double w = 1.0 - u;
  double w2 = w * w;
  return w2 * w2;
}

/// Classic smooth mollifier exp(1 - 1/(1 - u)), infinitely differentiable
/// with all derivatives vanishing at the edge.
inline double mollifier(double rho2, double support2) {
  double u = rho2 / support2;
  if (u >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u));
}

/// Indicator of the closed ball.
inline double disc(double rho2, double support2) {
  return rho2 <= support2 ? 1.0 : 0.0;
}

/// exp(-rho^2 / 2). Not compactly supported; callers declare an effective
/// support radius where the tail drops below their tolerance.
inline double gaussian(double rho2) { return std::exp(-0.5 * rho2); }

}  // namespace pwmotion::profiles
