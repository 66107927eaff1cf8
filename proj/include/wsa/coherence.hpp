#pragma once

#include "wsa/cwt.hpp"
#include "wsa/matrix.hpp"
#include "wsa/series.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace wsa {

/// Pointwise cross-wavelet spectrum Wx conj(Wy); its magnitude acts as a
/// local time-scale covariance between the two series.
struct CrossSpectrum {
    Matrix<std::complex<double>> wxy;
    ScaleGrid grid;
    double dt = 1.0;
};

/// Throws GridMismatch unless both fields share grid, dt and length.
CrossSpectrum cross_spectrum(const CwtField& wx, const CwtField& wy);

/// The smoothing operator behind coherence: per-row Gaussian in time with
/// sigma = s/dt samples (truncated at +/-3 sigma), then a per-column boxcar
/// over 0.6/dj scale bins (odd-rounded). Every kernel is renormalized over
/// the in-range positions, so constants pass through unchanged and the
/// operator is linear with nonnegative weights (which is what guarantees
/// r2 <= 1). The complex overload smooths the two planes independently
/// with identical arithmetic.
Matrix<double> smooth(const Matrix<double>& field, const ScaleGrid& grid, double dt);
Matrix<std::complex<double>> smooth(const Matrix<std::complex<double>>& field,
                                    const ScaleGrid& grid, double dt);

struct SmoothingDescriptor {
    double dj = 0.0;
    std::string time_kernel = "gaussian";
    std::string scale_kernel = "boxcar";
};

struct CoherenceField {
    Matrix<double> r2;    // squared coherence in [0, 1]
    Matrix<double> phase; // relative phase in (-pi, pi]
    ConeOfInfluence coi;
    ScaleGrid grid;
    SmoothingDescriptor smoothing;
    double dt = 1.0;
    std::size_t n = 0;
};

/// r2 = |S(s^-1 Wxy)|^2 / (S(s^-1 |Wx|^2) S(s^-1 |Wy|^2)) and
/// phase = arg S(s^-1 Wxy), with S the smoothing operator above. Cells whose
/// denominator falls below 1e-300 report r2 = 0, phase = 0 instead of NaN.
/// Throws LengthMismatch for unequal lengths, GridMismatch for unequal dt.
CoherenceField wavelet_coherence(const TimeSeries& x, const TimeSeries& y,
                                 const MotherWavelet& w, const ScaleGrid& grid);

struct MeanPhase {
    double angle = 0.0;         // arg sum e^{i phi}
    double concentration = 0.0; // |sum e^{i phi}| / count, in [0, 1]
};

/// Circular mean of the phase over in-cone cells with r2 >= min_r2.
/// Throws NoQualifyingCells if no cell passes, InvalidArgument unless
/// 0 <= min_r2 < 1.
MeanPhase mean_phase_in_coi(const CoherenceField& cf, double min_r2);

struct PhaseArrow {
    std::size_t t_index = 0;
    std::size_t s_index = 0;
    double angle = 0.0; // 0 points right (in phase), +/-pi left (anti-phase)
};

/// One arrow per stride-subsampled in-cone cell with r2 >= min_r2.
std::vector<PhaseArrow> phase_arrows(const CoherenceField& cf, std::size_t stride_t,
                                     std::size_t stride_s, double min_r2);

} // namespace wsa
