#ifndef SERRO_FFT_HPP
#define SERRO_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace serro::detail {

/// Unnormalized forward DFT, X_k = sum_n x_n exp(-2*pi*i*k*n/L).
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x);

/// Forward real-to-complex DFT; returns the L/2+1 nonnegative-frequency bins.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Inverse of rfft, scaled by 1/L so irfft(rfft(x)) == x. n is the real
/// output length the half spectrum came from.
std::vector<double> irfft(std::span<const std::complex<double>> half,
                          std::size_t n);

} // namespace serro::detail

#endif
