#include "pwmotion/grid.hpp"

#include <cmath>
#include <numbers>

namespace pwmotion {

void SampledFunction::sample(const std::function<cplx(const std::array<double, 3>&)>& f) {
  const int n = grid_.n;
  std::array<double, 3> x{0.0, 0.0, 0.0};
  switch (grid_.dim) {
    case 1:
      for (int i = 0; i < n; ++i) {
        x[0] = grid_.coord(i);
        values_[flat(i)] = f(x);
      }
      break;
    case 2:
      for (int i = 0; i < n; ++i) {
        x[0] = grid_.coord(i);
        for (int j = 0; j < n; ++j) {
          x[1] = grid_.coord(j);
          values_[flat(i, j)] = f(x);
        }
      }
      break;
    default:
      for (int i = 0; i < n; ++i) {
        x[0] = grid_.coord(i);
        for (int j = 0; j < n; ++j) {
          x[1] = grid_.coord(j);
          for (int k = 0; k < n; ++k) {
            x[2] = grid_.coord(k);
            values_[flat(i, j, k)] = f(x);
          }
        }
      }
  }
}

double SampledFunction::max_abs_outside(double r) const {
  const int n = grid_.n;
  double m = 0.0;
  switch (grid_.dim) {
    case 1:
      for (int i = 0; i < n; ++i)
        if (radius_at(i) > r) m = std::max(m, std::abs(values_[flat(i)]));
      break;
    case 2:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (radius_at(i, j) > r) m = std::max(m, std::abs(values_[flat(i, j)]));
      break;
    default:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (radius_at(i, j, k) > r) m = std::max(m, std::abs(values_[flat(i, j, k)]));
  }
  return m;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SampledFunction::l2_norm() const {
  double s = 0.0;
  for (const cplx& v : values_) s += std::norm(v);
  return std::sqrt(s * std::pow(grid_.step(), grid_.dim));
}

void SampledFunction::check_finite() const {
  for (const cplx& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteSample("sampled function contains a non-finite value");
}

double Spectrum::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Spectrum::parseval_energy() const {
  double s = 0.0;
  for (const cplx& v : values_) s += std::norm(v);
  double scale = std::pow(freq_step_ / (2.0 * std::numbers::pi), dim_);
  return s * scale;
}

}  // namespace pwmotion
