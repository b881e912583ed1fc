#pragma once

#include <complex>
#include <span>
#include <vector>

namespace noisebench::fft {

/// Unnormalized complex DFT (FFTW backend, any length, thread-safe).
void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         bool inverse = false);

/// Real-to-complex forward DFT; out must have n/2 + 1 bins for input length n.
void rfft(std::span<const double> in, std::span<std::complex<double>> out);

/// Complex-to-real inverse of rfft; unnormalized (caller divides by n).
/// out must have length n where in has n/2 + 1 bins.
void irfft(std::span<const std::complex<double>> in, std::span<double> out);

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in,
                                      bool inverse = false);

}  // namespace noisebench::fft
