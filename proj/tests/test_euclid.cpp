#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pwmotion/errors.hpp"
#include "pwmotion/euclid.hpp"
#include "pwmotion/grid.hpp"
#include "pwmotion/profiles.hpp"

using namespace pwmotion;

namespace {

SampledFunction gaussian_1d(int n, double half_width) {
  SampledFunction f(GridSpec{1, n, half_width}, half_width - 1.0);
  f.sample([](const std::array<double, 3>& x) {
    return cplx(std::exp(-x[0] * x[0] / 2.0), 0.0);
  });
  return f;
}

SampledFunction gaussian_2d(int n, double half_width) {
  SampledFunction f(GridSpec{2, n, half_width}, half_width - 1.0);
  f.sample([](const std::array<double, 3>& x) {
    return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0), 0.0);
  });
  return f;
}

SampledFunction unit_disc(int n, double half_width) {
  SampledFunction f(GridSpec{2, n, half_width}, 1.0);
  f.sample([](const std::array<double, 3>& x) {
    return cplx(x[0] * x[0] + x[1] * x[1] <= 1.0 ? 1.0 : 0.0, 0.0);
  });
  return f;
}

}  // namespace

TEST_CASE("gaussian transform pair in one dimension") {
  auto f = gaussian_1d(512, 16.0);
  auto F = fourier(f);
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int k = 0; k < 512; ++k) {
    double xi = F.freq(k);
    worst = std::max(worst,
                     std::abs(F.at(k) - cplx(root_two_pi * std::exp(-xi * xi / 2.0), 0.0)));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("gaussian transform pair in two dimensions") {
  auto f = gaussian_2d(128, 12.0);
  auto F = fourier(f);
  double worst = 0.0;
  for (int k0 = 0; k0 < 128; k0 += 3) {
    for (int k1 = 0; k1 < 128; k1 += 3) {
      double r2 = F.freq(k0) * F.freq(k0) + F.freq(k1) * F.freq(k1);
      worst = std::max(
          worst,
          std::abs(F.at(k0, k1) -
                   cplx(2.0 * std::numbers::pi * std::exp(-r2 / 2.0), 0.0)));
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("box transform matches two sin over xi at sampling accuracy") {
  // The sampled indicator carries its edge samples at full weight, so the
  // Riemann sum differs from 2 sin(xi)/xi by O(h).
  SampledFunction f(GridSpec{1, 2048, 8.0}, 1.0);
  f.sample([](const std::array<double, 3>& x) {
    return cplx(std::abs(x[0]) <= 1.0 ? 1.0 : 0.0, 0.0);
  });
  auto F = fourier(f);
  double worst = 0.0;
  for (int k = 0; k < 2048; ++k) {
    double xi = F.freq(k);
    double ref = std::abs(xi) < 1e-12 ? 2.0 : 2.0 * std::sin(xi) / xi;
    worst = std::max(worst, std::abs(F.at(k) - cplx(ref, 0.0)));
  }
  CHECK(worst < 1.5 * f.grid().step());
}

TEST_CASE("disc transform matches the first order Bessel profile") {
  auto f = unit_disc(256, 2.0);
  auto F = fourier(f);
  double worst = 0.0;
  for (int k0 = 0; k0 < 256; k0 += 7) {
    for (int k1 = 0; k1 < 256; k1 += 7) {
      double r = std::hypot(F.freq(k0), F.freq(k1));
      double ref = r < 1e-12
                       ? std::numbers::pi
                       : 2.0 * std::numbers::pi * std::cyl_bessel_j(1.0, r) / r;
      worst = std::max(worst, std::abs(F.at(k0, k1) - cplx(ref, 0.0)));
    }
  }
  CHECK(worst < 1e-2);
}

TEST_CASE("round trip returns the samples") {
  auto f = gaussian_2d(64, 8.0);
  auto g = inverse_fourier(fourier(f), f.support_radius());
  REQUIRE(g.grid().n == f.grid().n);
  CHECK(g.grid().half_width == doctest::Approx(f.grid().half_width));
  double worst = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    worst = std::max(worst, std::abs(g.values()[i] - f.values()[i]));
  CHECK(worst < 1e-13);
  CHECK(g.support_radius() == doctest::Approx(f.support_radius()));
}

TEST_CASE("parseval identity is exact") {
  auto f1 = gaussian_1d(256, 12.0);
  CHECK(fourier(f1).parseval_energy() ==
        doctest::Approx(f1.l2_norm() * f1.l2_norm()).epsilon(1e-13));
  auto f2 = unit_disc(128, 2.0);
  CHECK(fourier(f2).parseval_energy() ==
        doctest::Approx(f2.l2_norm() * f2.l2_norm()).epsilon(1e-13));
}

TEST_CASE("pointwise transform agrees with the gridded one on dual points") {
  auto f = gaussian_1d(128, 10.0);
  auto F = fourier(f);
  for (int k : {5, 33, 64, 100}) {
    cplx direct = fourier_at(f, {F.freq(k), 0.0, 0.0});
    CHECK(std::abs(direct - F.at(k)) < 1e-12);
  }
  // Off-grid frequencies still track the analytic transform.
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  for (double xi : {0.37, 1.91, 4.44}) {
    cplx direct = fourier_at(f, {xi, 0.0, 0.0});
    CHECK(std::abs(direct - cplx(root_two_pi * std::exp(-xi * xi / 2.0), 0.0)) <
          1e-12);
  }
}

TEST_CASE("radon of the disc yields chord lengths") {
  auto f = unit_disc(256, 2.0);
  std::vector<double> offsets;
  for (int j = 0; j <= 16; ++j) offsets.push_back(-0.8 + 0.1 * j);
  const double s = std::sqrt(0.5);
  auto sino = radon(f, {{1.0, 0.0, 0.0}, {s, s, 0.0}}, offsets);
  REQUIRE(sino.directions.size() == 2);
  REQUIRE(sino.offsets.size() == offsets.size());
  double worst = 0.0;
  for (std::size_t d = 0; d < 2; ++d) {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      double chord = 2.0 * std::sqrt(std::max(0.0, 1.0 - offsets[j] * offsets[j]));
      worst = std::max(worst, std::abs(sino.at(d, j) - cplx(chord, 0.0)));
    }
  }
  CHECK(worst < 3e-2);
}

TEST_CASE("radon of a gaussian is a gaussian profile") {
  auto f = gaussian_2d(128, 10.0);
  std::vector<double> offsets;
  for (int j = 0; j <= 8; ++j) offsets.push_back(-2.0 + 0.5 * j);
  auto sino = radon(f, {{0.0, 1.0, 0.0}, {0.6, 0.8, 0.0}}, offsets);
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  double worst = 0.0;
  for (std::size_t d = 0; d < 2; ++d) {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      double ref = root_two_pi * std::exp(-offsets[j] * offsets[j] / 2.0);
      worst = std::max(worst, std::abs(sino.at(d, j) - cplx(ref, 0.0)));
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("radon rejects non uniform offsets") {
  auto f = unit_disc(64, 2.0);
  CHECK_THROWS_AS((void)radon(f, {{1.0, 0.0, 0.0}}, {0.0, 0.1, 0.3}),
                  DegenerateData);
}

TEST_CASE("slice identity holds for smooth data") {
  auto f = gaussian_2d(128, 8.0);
  std::vector<double> lambdas = {0.0, 0.5, 1.0, 2.0, 3.5, 5.0};
  CHECK(slice_projection_residual(f, {1.0, 0.0, 0.0}, lambdas) < 1e-11);
  CHECK(slice_projection_residual(f, {0.28, 0.96, 0.0}, lambdas) < 1e-5);
}

TEST_CASE("slice identity degrades gracefully on the disc") {
  auto f = unit_disc(256, 2.0);
  std::vector<double> lambdas = {0.0, 0.5, 1.0, 2.0, 3.5, 5.0};
  CHECK(slice_projection_residual(f, {0.6, 0.8, 0.0}, lambdas) < 1e-4);
}

TEST_CASE("radialize reproduces the gaussian in two dimensions") {
  // Profile exp(-x^2/2) has 1-D transform sqrt(2 pi) exp(-r^2/2); the radial
  // function with that transform profile is exp(-|x|^2/2)/sqrt(2 pi).
  SampledFunction g(GridSpec{1, 128, 10.0}, 9.0);
  g.sample([](const std::array<double, 3>& x) {
    return cplx(std::exp(-x[0] * x[0] / 2.0), 0.0);
  });
  auto f2 = radialize(g, 2);
  REQUIRE(f2.grid().dim == 2);
  REQUIRE(f2.grid().n == 128);
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int i = 0; i < 128; i += 3) {
    for (int j = 0; j < 128; j += 3) {
      double r = f2.radius_at(i, j);
      worst = std::max(worst,
                       std::abs(f2.at(i, j) -
                                cplx(std::exp(-r * r / 2.0) / root_two_pi, 0.0)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("radialize matches the even profile transform in three dimensions") {
  SampledFunction g(GridSpec{1, 64, 6.0}, 1.0);
  g.sample([](const std::array<double, 3>& x) {
    return cplx(profiles::cos8_bump(x[0] * x[0], 1.0), 0.0);
  });
  auto f3 = radialize(g, 3);
  auto F3 = fourier(f3);
  double worst = 0.0;
  for (int k : {3, 17, 40, 60}) {
    double r = std::abs(F3.freq(k));
    worst = std::max(worst,
                     std::abs(F3.at(k, 32, 32) - fourier_at(g, {r, 0.0, 0.0})));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("grid guards reject unusable setups") {
  CHECK_THROWS_AS(SampledFunction(GridSpec{1, 64, 4.0}, 5.0), GridTooCoarse);
  CHECK_THROWS_AS(SampledFunction(GridSpec{1, 63, 4.0}, 1.0), GridTooCoarse);
  CHECK_THROWS_AS(SampledFunction(GridSpec{4, 64, 4.0}, 1.0), GridTooCoarse);

  // Declared support narrower than four samples per axis.
  SampledFunction f(GridSpec{1, 64, 16.0}, 0.6);
  f.sample([](const std::array<double, 3>& x) {
    return cplx(profiles::cos8_bump(x[0] * x[0], 0.36), 0.0);
  });
  CHECK_THROWS_AS((void)fourier(f), GridTooCoarse);
}

TEST_CASE("non finite samples are detected") {
  SampledFunction f(GridSpec{1, 64, 4.0}, 1.0);
  f.values()[10] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(f.check_finite(), NonFiniteSample);
}
