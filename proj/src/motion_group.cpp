#include "pwmotion/motion_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "pwmotion/bessel.hpp"

namespace pwmotion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kBandCap = 512;

double normalize_angle(double b) {
  b = std::fmod(b, kTwoPi);
  if (b < 0.0) b += kTwoPi;
  return b;
}

cplx ipow(int d) {
  switch (((d % 4) + 4) % 4) {
    case 0: return cplx(1.0, 0.0);
    case 1: return cplx(0.0, 1.0);
    case 2: return cplx(-1.0, 0.0);
    default: return cplx(0.0, -1.0);
  }
}

double bessel_parity(int d) { return (d >= 0 || d % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

MotionElement::MotionElement(double x0, double x1, double b)
    : x{x0, x1}, beta(normalize_angle(b)) {}

MotionElement multiply(const MotionElement& g1, const MotionElement& g2) {
  const double c = std::cos(g1.beta), s = std::sin(g1.beta);
  MotionElement out;
  out.x = {g1.x[0] + c * g2.x[0] - s * g2.x[1],
           g1.x[1] + s * g2.x[0] + c * g2.x[1]};
  out.beta = normalize_angle(g1.beta + g2.beta);
  return out;
}

MotionElement inverse(const MotionElement& g) {
  const double c = std::cos(g.beta), s = std::sin(g.beta);
  MotionElement out;
  // -R(-beta) x
  out.x = {-(c * g.x[0] + s * g.x[1]), -(-s * g.x[0] + c * g.x[1])};
  out.beta = normalize_angle(-g.beta);
  return out;
}

MotionGroupFunction::MotionGroupFunction(GridSpec position_grid, int angle_count,
                                         double support_radius)
    : grid_(position_grid), angles_(angle_count), support_radius_(support_radius) {
  grid_.validate();
  if (grid_.dim != 2) throw GridTooCoarse("motion-group functions live over a 2-D position grid");
  if (angles_ < 2 || angles_ % 2 != 0)
    throw GridTooCoarse("angle count must be even and at least 2");
  if (support_radius_ < 0.0 || support_radius_ > grid_.half_width + 1e-12)
    throw GridTooCoarse("support radius must lie within the position box");
  values_.assign(static_cast<std::size_t>(grid_.size()) * angles_, cplx(0.0, 0.0));
}

double MotionGroupFunction::angle(int l) const { return kTwoPi * l / angles_; }

void MotionGroupFunction::sample(const std::function<cplx(double, double, double)>& f) {
  for (int i = 0; i < grid_.n; ++i) {
    double x0 = grid_.coord(i);
    for (int j = 0; j < grid_.n; ++j) {
      double x1 = grid_.coord(j);
      for (int l = 0; l < angles_; ++l) values_[flat(i, j, l)] = f(x0, x1, angle(l));
    }
  }
}

std::vector<SampledFunction> MotionGroupFunction::angular_modes() const {
  const int M = angles_;
  std::vector<SampledFunction> modes;
  modes.reserve(static_cast<std::size_t>(M));
  for (int idx = 0; idx < M; ++idx) modes.emplace_back(grid_, support_radius_);

  // Phase table e^{-i m beta_l} for all m, l at once.
  std::vector<cplx> phase(static_cast<std::size_t>(M) * M);
  for (int idx = 0; idx < M; ++idx) {
    int m = mode_value(idx, M);
    for (int l = 0; l < M; ++l) {
      double arg = -m * angle(l);
      phase[static_cast<std::size_t>(idx) * M + l] = cplx(std::cos(arg), std::sin(arg));
    }
  }

  for (int i = 0; i < grid_.n; ++i)
    for (int j = 0; j < grid_.n; ++j) {
      const std::size_t base = flat(i, j, 0);
      for (int idx = 0; idx < M; ++idx) {
        cplx acc(0.0, 0.0);
        const cplx* ph = &phase[static_cast<std::size_t>(idx) * M];
        for (int l = 0; l < M; ++l) acc += values_[base + l] * ph[l];
        modes[static_cast<std::size_t>(idx)].at(i, j) = acc / static_cast<double>(M);
      }
    }
  return modes;
}

MotionGroupFunction MotionGroupFunction::from_modes(
    const std::vector<SampledFunction>& modes, double support_radius) {
  if (modes.empty()) throw DegenerateData("mode list is empty");
  const GridSpec g = modes.front().grid();
  const int M = static_cast<int>(modes.size());
  MotionGroupFunction out(g, M, support_radius);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < M; ++l) {
        cplx acc(0.0, 0.0);
        for (int idx = 0; idx < M; ++idx) {
          int m = mode_value(idx, M);
          double arg = m * (kTwoPi * l / M);
          acc += modes[static_cast<std::size_t>(idx)].at(i, j) *
                 cplx(std::cos(arg), std::sin(arg));
        }
        out.at(i, j, l) = acc;
      }
  return out;
}

double MotionGroupFunction::l2_norm() const {
  double s = 0.0;
  for (const cplx& v : values_) s += std::norm(v);
  return std::sqrt(s * grid_.step() * grid_.step() / angles_);
}

double MotionGroupFunction::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

cplx matrix_coefficient(const RepresentationPoint& rep, int m, int m_prime,
                        const MotionElement& g) {
  if (std::abs(m) > kBandCap || std::abs(m_prime) > kBandCap)
    throw BandCapExceeded("mode index beyond the band cap");
  const double rho = std::hypot(g.x[0], g.x[1]);
  // Trapezoid on the circle is exact once the count clears all active
  // angular frequencies: the plane-wave factor feeds modes up to about
  // r * |x| (fast Bessel decay beyond), shifted by m' - m.
  const int quad_n =
      2 * (static_cast<int>(std::ceil(rep.r * rho)) + std::abs(m) + std::abs(m_prime) + 48);
  cplx acc(0.0, 0.0);
  for (int l = 0; l < quad_n; ++l) {
    double alpha = kTwoPi * l / quad_n;
    double phase = rep.r * (g.x[0] * std::cos(alpha) + g.x[1] * std::sin(alpha)) +
                   m * g.beta + (m_prime - m) * alpha;
    acc += cplx(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(quad_n);
}

cplx matrix_coefficient_closed_form(const RepresentationPoint& rep, int m,
                                    int m_prime, const MotionElement& g) {
  const double rho = std::hypot(g.x[0], g.x[1]);
  const int d = m_prime - m;
  const double j = bessel_parity(d) * std::cyl_bessel_j(std::abs(d), rep.r * rho);
  const double phi = (rho == 0.0) ? 0.0 : std::atan2(g.x[1], g.x[0]);
  double arg = m * g.beta + d * phi;
  return ipow(d) * cplx(std::cos(arg), std::sin(arg)) * j;
}

int default_band(double r, double support_radius) {
  return static_cast<int>(std::ceil(std::abs(r) * support_radius)) + 16;
}

GroupFourierMatrix group_fourier(const MotionGroupFunction& f,
                                 const RepresentationPoint& rep, int band) {
  if (band <= 0) band = default_band(rep.r, f.support_radius());
  if (band > kBandCap) throw BandCapExceeded("requested band exceeds the cap");
  const GridSpec& g = f.position_grid();
  const double h = g.step();
  if (rep.r * h > std::numbers::pi)
    throw GridTooCoarse("position grid cannot resolve oscillation at this radius");

  GroupFourierMatrix out;
  out.rep = rep;
  out.band = band;
  out.entries.assign(static_cast<std::size_t>(out.side()) * out.side(), cplx(0.0, 0.0));

  const auto modes = f.angular_modes();
  const int M = f.angle_count();
  double mode_scale = 0.0;
  for (const auto& md : modes) mode_scale = std::max(mode_scale, md.max_abs());

  // Columns needing work: entry (m', m) contracts the angular coefficient
  // f_{-m}, so column m is active only when that mode carries mass. The
  // relative floor absorbs rounding residue in modes that are analytically
  // zero (angle-independent data feeds every m != 0 only through the
  // imperfect cancellation of the phase sums, at a few ulps).
  std::vector<int> active;  // m values
  for (int m = -band; m <= band; ++m) {
    int idx = -m + M / 2;
    if (idx < 0 || idx >= M) continue;
    if (modes[static_cast<std::size_t>(idx)].max_abs() > 1e-13 * mode_scale)
      active.push_back(m);
  }
  if (active.empty()) return out;

  const int d_max = 2 * band;
  std::vector<cplx> w(static_cast<std::size_t>(2 * d_max) + 1);
  const double cell = h * h;
  for (int i = 0; i < g.n; ++i) {
    double x0 = g.coord(i);
    for (int j = 0; j < g.n; ++j) {
      double x1 = g.coord(j);
      double rho = std::hypot(x0, x1);
      if (rho > f.support_radius() + h) continue;
      auto bess = bessel_j_array(d_max, rep.r * rho);
      double phi = (rho == 0.0) ? 0.0 : std::atan2(x1, x0);
      const cplx rot(std::cos(phi), std::sin(phi));
      // w[d + d_max] = i^d e^{i d phi} J_d(r rho)
      cplx fwd(1.0, 0.0);
      for (int d = 0; d <= d_max; ++d) {
        cplx common = ipow(d) * fwd * bess[static_cast<std::size_t>(d)];
        w[static_cast<std::size_t>(d + d_max)] = common;
        w[static_cast<std::size_t>(-d + d_max)] =
            ipow(-d) * std::conj(fwd) * bessel_parity(-d) * bess[static_cast<std::size_t>(d)];
        fwd *= rot;
      }
      for (int m : active) {
        cplx c = modes[static_cast<std::size_t>(-m + M / 2)].at(i, j) * cell;
        if (c == cplx(0.0, 0.0)) continue;
        for (int mp = -band; mp <= band; ++mp)
          out.at(mp, m) += c * w[static_cast<std::size_t>(mp - m + d_max)];
      }
    }
  }

  double s = 0.0;
  for (const cplx& e : out.entries) s += std::norm(e);
  out.hs_norm = std::sqrt(s);
  return out;
}

std::vector<std::pair<double, double>> hs_decay_profile(
    const MotionGroupFunction& f, const std::vector<double>& r_grid, int band) {
  std::vector<std::pair<double, double>> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    GroupFourierMatrix m = group_fourier(f, RepresentationPoint{r}, band);
    out.emplace_back(r, m.hs_norm);
  }
  return out;
}

cplx complexified_entry(const MotionGroupFunction& f, int m, int m_prime,
                        std::complex<double> r) {
  if (std::abs(m) > kBandCap || std::abs(m_prime) > kBandCap)
    throw BandCapExceeded("mode index beyond the band cap");
  if (std::abs(r.imag()) * (f.support_radius() + f.position_grid().step()) > 700.0)
    throw OverflowGuard("entry would overflow: |Im r| * support too large");

  const GridSpec& g = f.position_grid();
  const int M = f.angle_count();
  const int idx = -m + M / 2;
  if (idx < 0 || idx >= M) return cplx(0.0, 0.0);
  const auto modes = f.angular_modes();
  const SampledFunction& coef = modes[static_cast<std::size_t>(idx)];

  const int d = m_prime - m;
  const int ad = std::abs(d);
  const double h = g.step();
  const cplx phase_d = ipow(d);

  // Bessel values repeat across grid points of equal radius; the squared
  // radius of symmetric index pairs is bitwise identical, so a hash cache
  // collapses the dominant cost.
  std::unordered_map<double, cplx> cache;
  auto bessel_at = [&](double rho2) -> cplx {
    auto it = cache.find(rho2);
    if (it != cache.end()) return it->second;
    cplx z = r * std::sqrt(rho2);
    cplx v = bessel_parity(d) * bessel_j_array_complex(ad, z)[static_cast<std::size_t>(ad)];
    cache.emplace(rho2, v);
    return v;
  };

  cplx acc(0.0, 0.0);
  for (int i = 0; i < g.n; ++i) {
    double x0 = g.coord(i);
    for (int j = 0; j < g.n; ++j) {
      cplx c = coef.at(i, j);
      if (c == cplx(0.0, 0.0)) continue;
      double x1 = g.coord(j);
      double rho2 = x0 * x0 + x1 * x1;
      double phi = (rho2 == 0.0) ? 0.0 : std::atan2(x1, x0);
      double arg = d * phi;
      acc += c * phase_d * cplx(std::cos(arg), std::sin(arg)) * bessel_at(rho2);
    }
  }
  return acc * (h * h);
}

PlancherelReport plancherel_consistency(const std::vector<MotionGroupFunction>& fs,
                                        int band, double r_max, int r_points) {
  if (fs.empty()) throw DegenerateData("empty function list");
  if (r_points < 5 || r_points % 2 == 0)
    throw ConfigError("r_points must be odd and at least 5 for Simpson integration");

  PlancherelReport rep;
  const double dr = r_max / (r_points - 1);
  for (const auto& f : fs) {
    double p = 0.0;
    for (int i = 0; i < r_points; ++i) {
      double r = i * dr;
      GroupFourierMatrix mat = group_fourier(f, RepresentationPoint{r}, band);
      double w = (i == 0 || i == r_points - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      p += w * mat.hs_norm * mat.hs_norm * r;
    }
    p *= dr / 3.0;
    double n2 = f.l2_norm();
    n2 *= n2;
    rep.norms_sq.push_back(n2);
    rep.plancherel_integrals.push_back(p);
    rep.ratios.push_back(n2 / p);
  }
  double mean = 0.0;
  for (double v : rep.ratios) mean += v;
  mean /= rep.ratios.size();
  for (double v : rep.ratios)
    rep.max_relative_spread = std::max(rep.max_relative_spread, std::abs(v - mean) / mean);
  rep.consistent = rep.max_relative_spread <= 5e-3;
  return rep;
}

}  // namespace pwmotion
