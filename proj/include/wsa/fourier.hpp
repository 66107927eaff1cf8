#pragma once

#include "wsa/series.hpp"

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace wsa {

/// Full DFT of a real series, unnormalized forward convention:
/// X_k = sum_{n=0}^{N-1} x_n exp(-2 pi i k n / N).
/// Real input implies Hermitian symmetry X_{N-k} == conj(X_k) and
/// Parseval sum |X_k|^2 == N sum x_n^2.
struct FourierSpectrum {
    std::vector<std::complex<double>> coeffs;
    std::vector<double> freqs; // cycles/day, f_k = k / (N dt)
    std::size_t n = 0;
    double dt = 1.0;
};

/// One-sided Fourier power, bins 0 .. floor(N/2). The dominant bin is the
/// argmax over k >= 1 (DC excluded); dominant_period = N dt / dominant_bin.
struct Periodogram {
    std::vector<double> power;
    std::vector<double> freqs;
    std::size_t dominant_bin = 0;
    double dominant_period = 0.0;
};

/// Direct O(N^2) evaluation of the definition. Oracle for fft().
FourierSpectrum dft_naive(const TimeSeries& ts);

/// Fast transform, any N (radix-2 plus Bluestein for arbitrary lengths).
FourierSpectrum fft(const TimeSeries& ts);

/// (re, im) of each coefficient k = 1 .. N-1, DC excluded, in bin order.
std::vector<std::pair<double, double>> coefficient_scatter(const FourierSpectrum& spectrum);

/// Power-weighted normalized radial spread of the non-DC coefficients:
/// sqrt( sum |X_k|^2 (r_k - rbar)^2 / sum |X_k|^2 ) / rbar with r_k = |X_k|.
/// Dimensionless; 0 for a pure sinusoid (all nonzero radii equal).
/// Throws DegenerateSpectrum if every non-DC coefficient is zero.
double scatter_dispersion(const FourierSpectrum& spectrum);

/// One-sided power with peak search over k >= 1, ties toward the lower bin.
/// Throws NoDominantPeak when all non-DC power is below 1e-12 * P_0
/// (effectively constant input). Requires N >= 4.
Periodogram periodogram(const FourierSpectrum& spectrum);

/// N dt / dominant_bin, in days.
double dominant_period(const Periodogram& pg);

} // namespace wsa
