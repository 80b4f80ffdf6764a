#pragma once

#include <complex>
#include <vector>

namespace pwmotion::detail {

/// Centered DFT layer over FFTW.
///
/// centered_dft computes, for every output index k on the centered grid,
///   out[k] = sum_j in[j] * exp(-i sign * x_j . xi_k)
/// where x_j = (j - N/2) h per axis and xi_k = (k - N/2) * 2pi/(N h).
/// Both arrays are in centered layout; the phase bookkeeping that maps this
/// onto a plain FFT happens inside. No h^n or (2 pi)^-n scaling is applied;
/// callers own their measure factors.
void centered_dft(int dim, int n, const std::complex<double>* in,
                  std::complex<double>* out, int sign);

}  // namespace pwmotion::detail
