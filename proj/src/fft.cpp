#include "pwmotion/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace pwmotion::detail {
namespace {

// Plans are cached per (dim, n, sign) and created with FFTW_UNALIGNED so the
// same plan can be re-executed on any caller buffer via fftw_execute_dft.
// FFTW_ESTIMATE keeps planning deterministic (no runtime measurement).
class PlanCache {
 public:
  fftw_plan get(int dim, int n, int sign) {
    std::scoped_lock lock(mu_);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t total = 1;
    int dims[3] = {n, n, n};
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
    std::vector<fftw_complex> scratch(total);
    fftw_plan p = fftw_plan_dft(dim, dims, scratch.data(), scratch.data(), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// Parity of the multi-index with flat index `idx` on a dim-dimensional grid
// with n points per axis.
inline int index_parity(std::size_t idx, int dim, int n) {
  int parity = 0;
  const auto un = static_cast<std::size_t>(n);
  for (int d = 0; d < dim; ++d) {
    parity ^= static_cast<int>(idx % un) & 1;
    idx /= un;
  }
  return parity;
}

}  // namespace

void centered_dft(int dim, int n, const std::complex<double>* in,
                  std::complex<double>* out, int sign) {
  if (n % 2 != 0) throw std::runtime_error("centered_dft requires even n");
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);

  // Centered grids x_j = (j - N/2) h, xi_k = (k - N/2) 2pi/(Nh) turn the
  // plain DFT phase w^{jk} into w^{(j-N/2)(k-N/2)}; expanding the product
  // gives a (-1)^j input modulation, a (-1)^k output modulation and a global
  // (-1)^{N/2} per axis.
  std::vector<std::complex<double>> buf(in, in + total);
  for (std::size_t i = 0; i < total; ++i)
    if (index_parity(i, dim, n)) buf[i] = -buf[i];

  int fftw_sign = (sign < 0) ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = cache().get(dim, n, fftw_sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));

  // The per-axis factor is (-1)^{N/2}; dim axes give (-1)^{dim*N/2}.
  const long e = (static_cast<long>(n) / 2) * dim;
  const double global = (e % 2 == 0) ? 1.0 : -1.0;

  for (std::size_t i = 0; i < total; ++i) {
    double s = index_parity(i, dim, n) ? -global : global;
    out[i] = buf[i] * s;
  }
}

}  // namespace pwmotion::detail
