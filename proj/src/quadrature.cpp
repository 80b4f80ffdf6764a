#include "pwmotion/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "pwmotion/errors.hpp"

namespace pwmotion {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// Absolute-tolerance adaptive bisection over single Gauss-Kronrod panels.
// The boost driver terminates on relative error, which never converges on
// subintervals whose integral is far below the scale of the whole problem;
// integrands here (dyadic tail windows, log-singular cells) hit that case
// constantly, so termination is controlled on absolute error instead.
double adapt(const std::function<double(double)>& f, double a, double b,
             double abs_tol, int depth) {
  double err = 0.0;
  double v = GK::integrate(f, a, b, 0, 0.0, &err);
  if (err <= abs_tol || depth >= 14) return v;
  double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * abs_tol, depth + 1) +
         adapt(f, m, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!(b >= a)) throw Error("integrate: interval is reversed");
  if (a == b) return 0.0;
  if (!(abs_tol > 0.0)) throw Error("integrate: tolerance must be positive");
  double v = adapt(f, a, b, abs_tol, 0);
  if (std::isnan(v)) throw NonFiniteSample("integrand produced NaN");
  return v;
}

}  // namespace pwmotion
