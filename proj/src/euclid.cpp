#include "pwmotion/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "pwmotion/fft.hpp"
#include "pwmotion/interp.hpp"

namespace pwmotion {

namespace {

constexpr double kPi = std::numbers::pi;

void check_support_sampling(const SampledFunction& f) {
  const double r = f.support_radius();
  if (r > 0.0 && 2.0 * r / f.grid().step() < 4.0)
    throw GridTooCoarse("declared support spans fewer than 4 grid cells per axis");
}

// Orthonormal basis of the hyperplane with unit normal omega.
void tangent_basis(int dim, const std::array<double, 3>& omega,
                   std::array<double, 3>& e1, std::array<double, 3>& e2) {
  if (dim == 2) {
    e1 = {-omega[1], omega[0], 0.0};
    e2 = {0.0, 0.0, 0.0};
    return;
  }
  // Cross omega with its least-aligned coordinate axis.
  int least = 0;
  for (int d = 1; d < 3; ++d)
    if (std::abs(omega[d]) < std::abs(omega[least])) least = d;
  std::array<double, 3> a{0.0, 0.0, 0.0};
  a[least] = 1.0;
  e1 = {omega[1] * a[2] - omega[2] * a[1], omega[2] * a[0] - omega[0] * a[2],
        omega[0] * a[1] - omega[1] * a[0]};
  double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& c : e1) c /= n1;
  e2 = {omega[1] * e1[2] - omega[2] * e1[1], omega[2] * e1[0] - omega[0] * e1[2],
        omega[0] * e1[1] - omega[1] * e1[0]};
}

void check_unit(const std::array<double, 3>& omega) {
  double n2 = omega[0] * omega[0] + omega[1] * omega[1] + omega[2] * omega[2];
  if (std::abs(n2 - 1.0) > 1e-10)
    throw DegenerateData("direction vector is not unit length");
}

}  // namespace

Spectrum fourier(const SampledFunction& f) {
  check_support_sampling(f);
  const GridSpec& g = f.grid();
  const double h = g.step();
  const double dxi = kPi / g.half_width;
  Spectrum out(g.dim, g.n, dxi);
  detail::centered_dft(g.dim, g.n, f.values().data(), out.values().data(), +1);
  const double scale = std::pow(h, g.dim);
  for (cplx& v : out.values()) v *= scale;
  return out;
}

SampledFunction inverse_fourier(const Spectrum& F, double support_radius) {
  const double L = kPi / F.freq_step();
  GridSpec g{F.dim(), F.points_per_axis(), L};
  g.validate();
  if (support_radius < 0.0) support_radius = L;
  SampledFunction out(g, std::min(support_radius, L));
  detail::centered_dft(g.dim, g.n, F.values().data(), out.values().data(), -1);
  const double scale =
      std::pow(F.freq_step() / (2.0 * kPi), F.dim());
  for (cplx& v : out.values()) v *= scale;
  return out;
}

cplx fourier_at(const SampledFunction& f, const std::array<double, 3>& xi) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  const double h = g.step();

  // Separable phases along each axis keep this at O(N^dim) additions.
  std::array<std::vector<cplx>, 3> phase;
  for (int d = 0; d < g.dim; ++d) {
    phase[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double arg = -g.coord(i) * xi[static_cast<std::size_t>(d)];
      phase[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] =
          cplx(std::cos(arg), std::sin(arg));
    }
  }

  cplx acc(0.0, 0.0);
  switch (g.dim) {
    case 1:
      for (int i = 0; i < n; ++i) acc += f.at(i) * phase[0][static_cast<std::size_t>(i)];
      break;
    case 2:
      for (int i = 0; i < n; ++i) {
        cplx row(0.0, 0.0);
        for (int j = 0; j < n; ++j) row += f.at(i, j) * phase[1][static_cast<std::size_t>(j)];
        acc += row * phase[0][static_cast<std::size_t>(i)];
      }
      break;
    default:
      for (int i = 0; i < n; ++i) {
        cplx plane(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
          cplx row(0.0, 0.0);
          for (int k = 0; k < n; ++k)
            row += f.at(i, j, k) * phase[2][static_cast<std::size_t>(k)];
          plane += row * phase[1][static_cast<std::size_t>(j)];
        }
        acc += plane * phase[0][static_cast<std::size_t>(i)];
      }
  }
  return acc * std::pow(h, g.dim);
}

Sinogram radon(const SampledFunction& f,
               const std::vector<std::array<double, 3>>& directions,
               const std::vector<double>& offsets, double quad_step) {
  const GridSpec& g = f.grid();
  if (g.dim != 2 && g.dim != 3)
    throw GridTooCoarse("radon needs dim 2 or 3");
  if (directions.empty() || offsets.size() < 2)
    throw DegenerateData("radon needs at least one direction and two offsets");
  const double h = g.step();
  if (quad_step <= 0.0) quad_step = h;
  if (quad_step > 2.0 * h)
    throw GridTooCoarse("hyperplane quadrature step exceeds twice the grid spacing");

  const double dt = offsets[1] - offsets[0];
  for (std::size_t j = 1; j < offsets.size(); ++j)
    if (std::abs(offsets[j] - offsets[j - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw DegenerateData("radon offsets must be uniformly spaced");

  CubicSpline spline(f);
  Sinogram out;
  out.dim = g.dim;
  out.directions = directions;
  out.offsets = offsets;
  out.offset_step = dt;
  out.values.assign(directions.size() * offsets.size(), cplx(0.0, 0.0));

  const double pad = 4.0 * h;
  const double extent = f.support_radius() + pad;
  const int m = std::max(2, static_cast<int>(std::ceil(2.0 * extent / quad_step)));
  const double du = 2.0 * extent / m;

  for (std::size_t d = 0; d < directions.size(); ++d) {
    const auto& omega = directions[d];
    check_unit(omega);
    std::array<double, 3> e1{}, e2{};
    tangent_basis(g.dim, omega, e1, e2);
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      const double t = offsets[j];
      if (std::abs(t) > extent) continue;  // hyperplane misses the support
      cplx acc(0.0, 0.0);
      if (g.dim == 2) {
        for (int p = 0; p < m; ++p) {
          double u = -extent + (p + 0.5) * du;
          acc += spline.eval(t * omega[0] + u * e1[0], t * omega[1] + u * e1[1]);
        }
        acc *= du;
      } else {
        for (int p = 0; p < m; ++p) {
          double u = -extent + (p + 0.5) * du;
          cplx row(0.0, 0.0);
          for (int q = 0; q < m; ++q) {
            double v = -extent + (q + 0.5) * du;
            row += spline.eval(t * omega[0] + u * e1[0] + v * e2[0],
                               t * omega[1] + u * e1[1] + v * e2[1],
                               t * omega[2] + u * e1[2] + v * e2[2]);
          }
          acc += row;
        }
        acc *= du * du;
      }
      out.at(d, j) = acc;
    }
  }
  return out;
}

double slice_projection_residual(const SampledFunction& f,
                                 const std::array<double, 3>& direction,
                                 const std::vector<double>& lambdas) {
  check_unit(direction);
  const GridSpec& g = f.grid();

  // Profile side: hyperplane integrals on the function's own axis grid,
  // then a 1-D transform of that profile by direct summation.
  std::vector<double> offsets(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) offsets[static_cast<std::size_t>(i)] = g.coord(i);
  Sinogram sino = radon(f, {direction}, offsets);

  const double h = g.step();
  double worst = 0.0;
  for (double lam : lambdas) {
    std::array<double, 3> xi{lam * direction[0], lam * direction[1],
                             lam * direction[2]};
    cplx a_side = fourier_at(f, xi);
    cplx b_side(0.0, 0.0);
    for (int p = 0; p < g.n; ++p) {
      double arg = -offsets[static_cast<std::size_t>(p)] * lam;
      b_side += sino.at(0, static_cast<std::size_t>(p)) * cplx(std::cos(arg), std::sin(arg));
    }
    b_side *= h;
    worst = std::max(worst, std::abs(a_side - b_side));
  }
  return worst;
}

SampledFunction radialize(const SampledFunction& g1, int dim) {
  if (g1.grid().dim != 1)
    throw GridTooCoarse("radialize expects a 1-D profile");
  if (dim < 2 || dim > 3)
    throw GridTooCoarse("radialize targets dim 2 or 3");
  const GridSpec& gg = g1.grid();

  // Even check on the samples (x = 0 sits on the grid, index N/2).
  double scale = std::max(g1.max_abs(), 1e-30);
  for (int i = 1; i < gg.n / 2; ++i) {
    cplx left = g1.at(gg.n / 2 - i);
    cplx right = g1.at(gg.n / 2 + i);
    if (std::abs(left - right) > 1e-8 * scale)
      throw DegenerateData("radialize input profile is not even");
  }

  const double dxi = kPi / gg.half_width;
  Spectrum F(dim, gg.n, dxi);
  const int n = gg.n;

  // Exact 1-D transform of the even profile at one radius: a cosine sum
  // over the samples. Results are cached per distinct squared radius since
  // grid radii repeat heavily across the dual grid (the squared radii of
  // symmetric index pairs are bitwise identical).
  std::unordered_map<double, cplx> cache;
  auto profile_at = [&](double r2) -> cplx {
    auto it = cache.find(r2);
    if (it != cache.end()) return it->second;
    cplx v = fourier_at(g1, {std::sqrt(r2), 0.0, 0.0});
    cache.emplace(r2, v);
    return v;
  };

  if (dim == 2) {
    for (int a = 0; a < n; ++a) {
      double xa = F.freq(a);
      for (int b = 0; b < n; ++b) {
        double xb = F.freq(b);
        F.at(a, b) = profile_at(xa * xa + xb * xb);
      }
    }
  } else {
    for (int a = 0; a < n; ++a) {
      double xa = F.freq(a);
      for (int b = 0; b < n; ++b) {
        double xb = F.freq(b);
        for (int c = 0; c < n; ++c) {
          double xc = F.freq(c);
          F.at(a, b, c) = profile_at(xa * xa + xb * xb + xc * xc);
        }
      }
    }
  }

  return inverse_fourier(F, std::min(g1.support_radius(), gg.half_width));
}

}  // namespace pwmotion
