#include "pwmotion/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pwmotion/quadrature.hpp"

namespace pwmotion {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact integral over [t0, t1] of the Poisson kernel against the linear
// function v(t) = alpha + beta t:
//   (1/pi) int y (alpha + beta t) / (y^2 + (t - x)^2) dt
// via the antiderivatives arctan((t-x)/y) and (y/2) log(y^2 + (t-x)^2).
double linear_cell(double alpha, double beta, double x, double y, double t0,
                   double t1) {
  double atan_diff = std::atan2(t1 - x, y) - std::atan2(t0 - x, y);
  double log_ratio = std::log((y * y + (t1 - x) * (t1 - x)) /
                              (y * y + (t0 - x) * (t0 - x)));
  return ((alpha + beta * x) * atan_diff + beta * 0.5 * y * log_ratio) / kPi;
}

// Tail contribution over [t_start, +inf) (side = +1) or (-inf, -t_start]
// (side = -1) for the model v(t) = p log|t| + q. The constant part has a
// closed form; the log part is integrated in u = 1/t over dyadic windows,
// where the integrand is smooth and the substituted interval is finite.
double tail_contribution(const TailModel& tm, double x, double y, double t_start,
                         int side) {
  double const_part =
      tm.q / kPi *
      (kPi / 2.0 - std::atan2(side > 0 ? (t_start - x) : (t_start + x), y));
  if (tm.p == 0.0) return const_part;

  auto integrand = [&](double u) {
    // t = side / u; dt = -du/u^2 folded into the orientation below.
    double t = static_cast<double>(side) / u;
    double kern = y / (y * y + (t - x) * (t - x)) / kPi;
    return kern * (-std::log(u)) / (u * u);
  };
  // Dyadic windows in u from 1/t_start down to underflow; each window is
  // smooth so fixed-order quadrature is accurate.
  double log_part = 0.0;
  double hi = 1.0 / t_start;
  for (int j = 0; j < 64; ++j) {
    double lo = hi * 0.5;
    double w = integrate(integrand, lo, hi, 1e-13);
    log_part += w;
    hi = lo;
    if (std::abs(w) < 1e-15 && j > 8) break;
  }
  return const_part + tm.p * log_part;
}

}  // namespace

double poisson_integral(const BoundaryLogData& b, double x, double y) {
  if (!(y > 0.0)) throw ConfigError("poisson_integral needs y > 0");
  if (b.t.size() < 3 || b.t.size() != b.log_mod.size())
    throw DegenerateData("boundary data needs at least 3 matched samples");
  const std::size_t n = b.t.size();
  const double dt = b.t[1] - b.t[0];
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(b.t[i] - b.t[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw DegenerateData("boundary grid must be uniform");

  // Coverage: kernel mass outside the grid must be modeled or negligible.
  double mass_out = 1.0 - (std::atan2(b.t.back() - x, y) - std::atan2(b.t.front() - x, y)) / kPi;
  if (!b.tail && mass_out > 1e-8)
    throw InsufficientCoverage("kernel mass " + std::to_string(mass_out) +
                               " outside the boundary grid and no tail model given");

  // Repair -inf nodes (isolated zeros of g): replace the node value by the
  // cell average of the local model log|s (t - t_i)|, with log|s| read from
  // the finite neighbors. Averaging log|s u| over a half-cell of length
  // dt/2 gives log|s| + log(dt/2) - 1.
  std::vector<double> v(b.log_mod);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isinf(v[i])) {
      if (std::isnan(v[i])) throw NonFiniteSample("boundary data contains NaN");
      continue;
    }
    if (v[i] > 0.0) throw NonFiniteSample("boundary data contains +inf");
    double neighbors = 0.0;
    int count = 0;
    if (i > 0 && std::isfinite(b.log_mod[i - 1])) {
      neighbors += b.log_mod[i - 1];
      ++count;
    }
    if (i + 1 < n && std::isfinite(b.log_mod[i + 1])) {
      neighbors += b.log_mod[i + 1];
      ++count;
    }
    if (count == 0)
      throw DegenerateData("adjacent -inf samples: zeros must be isolated");
    double log_slope = neighbors / count - std::log(dt);
    v[i] = log_slope + std::log(0.5 * dt) - 1.0;
  }

  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double beta = (v[i + 1] - v[i]) / dt;
    double alpha = v[i] - beta * b.t[i];
    acc += linear_cell(alpha, beta, x, y, b.t[i], b.t[i + 1]);
  }

  if (b.tail) {
    double right_start = b.t.back();
    double left_start = -b.t.front();
    if (right_start <= 1.0 || left_start <= 1.0)
      throw InsufficientCoverage("tail model needs the grid to reach past |t| = 1");
    acc += tail_contribution(*b.tail, x, y, right_start, +1);
    acc += tail_contribution(*b.tail, x, y, left_start, -1);
  }
  return acc;
}

std::vector<MajorantPoint> log_majorant_check(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const BoundaryLogData& boundary,
    const std::vector<std::pair<double, double>>& points) {
  // Boundedness spot check on the axis; catches un-normalized callers.
  for (std::size_t i = 0; i < boundary.t.size(); i += std::max<std::size_t>(1, boundary.t.size() / 32)) {
    double m = std::abs(g(std::complex<double>(boundary.t[i], 0.0)));
    if (m > 1.0 + 1e-9)
      throw ConfigError("|g| exceeds 1 on the real axis; normalize per the majorant setup");
  }

  std::vector<MajorantPoint> out;
  out.reserve(points.size());
  for (auto [x, y] : points) {
    MajorantPoint p;
    p.x = x;
    p.y = y;
    double m = std::abs(g(std::complex<double>(x, y)));
    p.lhs = (m == 0.0) ? -kInf : std::log(m);
    p.rhs = poisson_integral(boundary, x, y);
    p.margin = p.rhs - p.lhs;
    out.push_back(p);
  }
  return out;
}

TypeEstimate estimate_exponential_type(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const std::vector<double>& r_grid) {
  if (r_grid.size() < 8) throw ConfigError("type fit needs at least 8 radii");
  TypeEstimate est;
  est.r_grid = r_grid;
  double r_max = *std::max_element(r_grid.begin(), r_grid.end());

  std::vector<double> xs, ys;
  for (double r : r_grid) {
    if (r < r_max / 10.0) continue;  // fit the top decade only
    double m = std::abs(g(std::complex<double>(0.0, r)));
    if (m <= 0.0 || !std::isfinite(m)) continue;
    xs.push_back(r);
    ys.push_back(std::log(m));
  }
  if (xs.size() < 4)
    throw DegenerateData("function vanishes or overflows on the fitted decade");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    est.max_fit_deviation = std::max(
        est.max_fit_deviation, std::abs(ys[i] - est.slope * xs[i] - est.intercept));
  return est;
}

DivergenceScan poisson_divergence_scan(const DecayEnvelope& theta, double x,
                                       double y, double target,
                                       long max_doublings) {
  if (!(y > 0.0)) throw ConfigError("scan needs y > 0");
  DivergenceScan scan;

  // Head: boundary data -theta(|t|) over [-1, 1].
  auto head_integrand = [&](double t) {
    return -(y / kPi) * (theta(std::abs(t))) / (y * y + (t - x) * (t - x));
  };
  double value = integrate(head_integrand, -1.0, 1.0, 1e-12);

  // Dyadic windows [T, 2T], T = 2^j, both signs of t. Written in the
  // rescaled variable u = t / T the window is always [1, 2]:
  //   -(1/pi) int_1^2 (y theta(Tu) / T) * [((u - x/T)^2 + (y/T)^2)^-1 +
  //                                        ((u + x/T)^2 + (y/T)^2)^-1] du.
  // The shifts x/T, y/T underflow to zero for deep windows, which is the
  // correct limit; theta(Tu)/T must then come from the symbolic tail class
  // because Tu itself leaves double range.
  const double kNumericLimit = std::ldexp(1.0, 500);
  const TailClass* tc = theta.tail_class ? &*theta.tail_class : nullptr;

  for (long j = 0; j < max_doublings; ++j) {
    double T = (j < 1020) ? std::ldexp(1.0, static_cast<int>(j)) : kInf;
    double log_t = static_cast<double>(j) * std::numbers::ln2;
    bool numeric_ok = std::isfinite(T) && T < kNumericLimit;
    if (!numeric_ok && !tc) {
      scan.exhausted_numeric_range = true;
      scan.doublings = j;
      scan.value = value;
      return scan;
    }

    double ex = numeric_ok ? x / T : 0.0;
    double ey = numeric_ok ? y / T : 0.0;
    auto scaled_theta_over_t = [&](double u) -> double {
      if (numeric_ok) return theta(T * u) / T;
      // theta(Tu)/T ~ scale * T^(p-1) u^p / log(e + Tu)^q in log space.
      double log_val = std::log(tc->scale) + (tc->power - 1.0) * log_t +
                       tc->power * std::log(u) -
                       tc->log_power * std::log(log_t + std::log(u));
      if (log_val > 700.0) return kInf;
      return std::exp(log_val);
    };
    auto window_integrand = [&](double u) {
      double th = scaled_theta_over_t(u);
      double k1 = 1.0 / ((u - ex) * (u - ex) + ey * ey);
      double k2 = 1.0 / ((u + ex) * (u + ex) + ey * ey);
      return -(y / kPi) * th * (k1 + k2);
    };
    // An overflowing window alone overshoots any finite target.
    if (!std::isfinite(scaled_theta_over_t(1.5))) {
      scan.crossed = true;
      scan.doublings = j;
      scan.value = -kInf;
      return scan;
    }
    value += integrate(window_integrand, 1.0, 2.0, 1e-12);
    if (value < target) {
      scan.crossed = true;
      scan.doublings = j + 1;
      scan.value = value;
      return scan;
    }
  }
  scan.doublings = max_doublings;
  scan.value = value;
  return scan;
}

}  // namespace pwmotion
