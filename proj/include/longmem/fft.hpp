#ifndef LONGMEM_FFT_HPP
#define LONGMEM_FFT_HPP

#include <complex>
#include <vector>

namespace longmem::fft {

// Forward real-to-complex transform: out[k] = sum_t in[t] exp(-2*pi*i*k*t/n),
// k = 0..n/2. FFTW plan creation is serialized internally, so these are safe
// to call from parallel replication loops.
std::vector<std::complex<double>> real_forward(const std::vector<double>& in);

// Inverse of real_forward without the 1/n factor:
// out[t] = sum_k spectrum[k] exp(2*pi*i*k*t/n) over the Hermitian extension.
std::vector<double> halfcomplex_backward(const std::vector<std::complex<double>>& spectrum,
                                         std::size_t n);

}  // namespace longmem::fft

#endif
