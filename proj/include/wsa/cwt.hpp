#pragma once

#include "wsa/matrix.hpp"
#include "wsa/series.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace wsa {

enum class WaveletKind { Morlet, Cgau2 };

/// Mother wavelet with its derived constants, all fixed at construction.
/// Morlet: psi(t) = pi^{-1/4} exp(i omega0 t) exp(-t^2/2).
/// Cgau2: psi(t) = C2 (4t^2 + 4it - 3) exp(-it - t^2), the normalized
/// second derivative of exp(-it) exp(-t^2); C2 is found by quadrature,
/// not hardcoded.
struct MotherWavelet {
    WaveletKind kind = WaveletKind::Morlet;
    double omega0 = 6.0;           // Morlet parameter; unused by Cgau2
    double center_frequency = 0.0; // numeric argmax over omega > 0 of |psi_hat|
    double norm = 1.0;             // amplitude factor giving unit energy
    double efold = 1.0;            // |t| where |psi| falls to 1/e of its peak
};

/// Builds the wavelet and derives center_frequency, norm and efold
/// numerically. Unit energy is verified by quadrature to 1e-6.
MotherWavelet make_wavelet(WaveletKind kind, double omega0 = 6.0);

std::complex<double> wavelet_value(const MotherWavelet& w, double t);

/// The cached spectral peak (radians per unit of nondimensional time).
/// For Morlet this equals omega0 to about 1e-3 or better.
double center_frequency(const MotherWavelet& w);

/// Equivalent Fourier period of scale s, in days. Morlet uses the closed
/// form 4 pi s / (omega0 + sqrt(2 + omega0^2)); Cgau2 uses 2 pi s / omega_c.
double scale_to_period(double s, const MotherWavelet& w);

/// Dyadic scale ladder scales[j] = s0 2^{j dj}, j = 0..J with
/// J = floor(log2(n dt / s0) / dj), never negative.
struct ScaleGrid {
    std::vector<double> scales; // days, strictly increasing
    double s0 = 0.0;
    double dj = 0.0;
};

/// Throws InvalidResolution if dj <= 0 or s0 < 2 dt.
ScaleGrid make_scale_grid(std::size_t n, double dt, double dj, double s0);

struct CwtField {
    Matrix<std::complex<double>> coeffs; // [n_scales x n_times]
    ScaleGrid grid;
    MotherWavelet wavelet;
    double dt = 1.0;
    std::size_t n = 0;
};

/// W(s, t) = sum_n x_n conj(psi((n dt - t)/s)) dt / sqrt(s) at every sample
/// time, L2-normalized, with the series demeaned internally. Computed by
/// frequency-domain convolution zero-padded to the next power of two >= 2n,
/// which reproduces the direct summation exactly up to rounding.
CwtField cwt(const TimeSeries& ts, const MotherWavelet& w, const ScaleGrid& grid);

/// percent(s,t) = 100 |W|^2 / total energy; dominant_scales are the scale
/// values at strict interior local maxima of the time-marginal energy
/// E(s) = sum_t |W(s,t)|^2, strongest first, at most 5.
struct Scalogram {
    Matrix<double> percent;
    std::vector<double> dominant_scales;
};

/// Throws EmptyField if every coefficient is zero.
Scalogram scalogram(const CwtField& field);

/// max_trusted_scale[t] = dt min(t, n-1-t) / efold: the largest scale whose
/// wavelet envelope has decayed by 1/e before reaching the series edge.
struct ConeOfInfluence {
    std::vector<double> max_trusted_scale; // length n, days
};

ConeOfInfluence coi(std::size_t n, double dt, const MotherWavelet& w);

} // namespace wsa
