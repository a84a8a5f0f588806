#pragma once

#include <complex>
#include <span>
#include <vector>

namespace charsum::detail {

// out[k] = sum_i a[i] * b[(k - i) mod n], n = a.size() = b.size().
// Backed by FFTW; any length is accepted (prime lengths use FFTW's
// Rader/Bluestein codelets).
std::vector<std::complex<double>> cyclic_convolve(std::span<const std::complex<double>> a,
                                                  std::span<const std::complex<double>> b);

// out[s] = sum_x a[x] * b[(x + s) mod n]
std::vector<std::complex<double>> cyclic_correlate(std::span<const std::complex<double>> a,
                                                   std::span<const std::complex<double>> b);

// Unnormalized DFT: out[k] = sum_t a[t] * exp(sign * 2 pi i k t / n), sign = +1 or -1.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> a, int sign);

}  // namespace charsum::detail
