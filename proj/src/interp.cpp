#include "pwmotion/interp.hpp"

#include <cmath>
#include <vector>

namespace pwmotion {

namespace {

// Interpolation pole of the cubic B-spline, the root of z^2 + 4z + 1.
constexpr double kPole = -0.26794919243112270;  // sqrt(3) - 2

// Cubic B-spline weights on the 4-point stencil {i-1, i, i+1, i+2} for a
// fractional offset t in [0, 1) from node i.
inline void stencil_weights(double t, double w[4]) {
  const double s = 1.0 - t;
  w[0] = s * s * s / 6.0;
  w[1] = 2.0 / 3.0 - t * t + 0.5 * t * t * t;
  w[2] = 2.0 / 3.0 - s * s + 0.5 * s * s * s;
  w[3] = t * t * t / 6.0;
}

}  // namespace

CubicSpline::CubicSpline(const SampledFunction& f)
    : grid_(f.grid()), coef_(f.values()) {
  for (int axis = 0; axis < grid_.dim; ++axis) filter_axis(axis);
}

void CubicSpline::filter_axis(int axis) {
  const int n = grid_.n;
  const auto un = static_cast<std::size_t>(n);

  // Enumerate the 1-D lines along `axis` as (base offset, stride).
  std::vector<std::pair<std::size_t, std::size_t>> lines;
  if (grid_.dim == 1) {
    lines.emplace_back(0, 1);
  } else if (grid_.dim == 2) {
    if (axis == 0)
      for (std::size_t j = 0; j < un; ++j) lines.emplace_back(j, un);
    else
      for (std::size_t i = 0; i < un; ++i) lines.emplace_back(i * un, 1);
  } else {
    for (std::size_t a = 0; a < un; ++a)
      for (std::size_t b = 0; b < un; ++b) {
        if (axis == 0)
          lines.emplace_back(a * un + b, un * un);
        else if (axis == 1)
          lines.emplace_back(a * un * un + b, un);
        else
          lines.emplace_back(a * un * un + b * un, 1);
      }
  }

  // Horizon beyond which pole powers are below double precision.
  const int horizon = std::min(n, 32);
  std::vector<cplx> line(un);
  for (auto [base, stride] : lines) {
    for (int i = 0; i < n; ++i) line[static_cast<std::size_t>(i)] = coef_[base + i * stride];

    // Causal pass. The init sum is exact for data that vanishes toward the
    // boundary, which holds for everything sampled here (compact support).
    cplx cp = line[0];
    double zk = kPole;
    for (int k = 1; k < horizon; ++k) {
      cp += zk * line[static_cast<std::size_t>(k)];
      zk *= kPole;
    }
    line[0] = 6.0 * cp;
    for (int i = 1; i < n; ++i)
      line[static_cast<std::size_t>(i)] = 6.0 * line[static_cast<std::size_t>(i)] +
                                          kPole * line[static_cast<std::size_t>(i - 1)];

    // Anti-causal pass.
    cplx last = (kPole / (kPole * kPole - 1.0)) *
                (line[un - 1] + kPole * line[un - 2]);
    line[un - 1] = last;
    for (int i = n - 2; i >= 0; --i)
      line[static_cast<std::size_t>(i)] =
          kPole * (line[static_cast<std::size_t>(i + 1)] - line[static_cast<std::size_t>(i)]);

    for (int i = 0; i < n; ++i) coef_[base + i * stride] = line[static_cast<std::size_t>(i)];
  }
}

cplx CubicSpline::eval(double x0, double x1, double x2) const {
  const int n = grid_.n;
  const double h = grid_.step();
  const double coords[3] = {x0, x1, x2};

  int base[3] = {0, 0, 0};
  double w[3][4];
  for (int d = 0; d < grid_.dim; ++d) {
    double u = coords[d] / h + n / 2.0;  // grid index coordinate
    double fl = std::floor(u);
    base[d] = static_cast<int>(fl);
    if (u < -2.0 || u > n + 1.0) return cplx(0.0, 0.0);
    stencil_weights(u - fl, w[d]);
  }

  auto coef_at = [this, n](int i, int j, int k) -> cplx {
    if (i < 0 || i >= n) return cplx(0.0, 0.0);
    if (grid_.dim >= 2 && (j < 0 || j >= n)) return cplx(0.0, 0.0);
    if (grid_.dim >= 3 && (k < 0 || k >= n)) return cplx(0.0, 0.0);
    const auto un = static_cast<std::size_t>(n);
    switch (grid_.dim) {
      case 1: return coef_[static_cast<std::size_t>(i)];
      case 2: return coef_[static_cast<std::size_t>(i) * un + j];
      default: return coef_[(static_cast<std::size_t>(i) * un + j) * un + k];
    }
  };

  cplx acc(0.0, 0.0);
  switch (grid_.dim) {
    case 1:
      for (int a = 0; a < 4; ++a)
        acc += w[0][a] * coef_at(base[0] - 1 + a, 0, 0);
      break;
    case 2:
      for (int a = 0; a < 4; ++a) {
        cplx row(0.0, 0.0);
        for (int b = 0; b < 4; ++b)
          row += w[1][b] * coef_at(base[0] - 1 + a, base[1] - 1 + b, 0);
        acc += w[0][a] * row;
      }
      break;
    default:
      for (int a = 0; a < 4; ++a) {
        cplx plane(0.0, 0.0);
        for (int b = 0; b < 4; ++b) {
          cplx row(0.0, 0.0);
          for (int c = 0; c < 4; ++c)
            row += w[2][c] * coef_at(base[0] - 1 + a, base[1] - 1 + b, base[2] - 1 + c);
          plane += w[1][b] * row;
        }
        acc += w[0][a] * plane;
      }
  }
  return acc;
}

}  // namespace pwmotion
