#pragma once

#include "wsa/series.hpp"

#include <cstddef>
#include <vector>

namespace wsa {

enum class WaveletName { Haar, Db4 };
enum class Extension { Periodic, Symmetric };

/// Orthonormal two-channel filter bank. The highpass is the quadrature
/// mirror of the lowpass: g_k = (-1)^k h_{L-1-k}. Invariants: sum h = sqrt(2),
/// sum h^2 = 1, double-shift orthogonality sum_k h_k h_{k+2m} = delta_{m,0}.
struct WaveletFilter {
    WaveletName name = WaveletName::Haar;
    std::vector<double> lowpass;
    std::vector<double> highpass;
};

struct DwtLevelResult {
    std::vector<double> approx;
    std::vector<double> detail;
};

/// Multilevel decomposition. details[0] is the finest level (level 1),
/// details[levels-1] the coarsest; approx is the level-`levels`
/// approximation. lengths[l] is the coefficient length produced at level
/// l+1 (the ceil-halving chain from original_n), kept for reconstruction.
struct DwtDecomposition {
    WaveletFilter filter;
    std::size_t levels = 0;
    Extension extension = Extension::Symmetric;
    std::vector<double> approx;
    std::vector<std::vector<double>> details;
    std::vector<std::size_t> lengths;
    std::size_t original_n = 0;
    double dt = 1.0;
};

/// Haar: h = [1/sqrt2, 1/sqrt2]. Db4: the 4-tap Daubechies filter
/// h = [(1+sqrt3), (3+sqrt3), (3-sqrt3), (1-sqrt3)] / (4 sqrt2),
/// two vanishing moments.
WaveletFilter filter_bank(WaveletName name);

/// One analysis stage: approx_k = sum_j h_j x_ext[2k+j] and likewise with g,
/// k = 0 .. ceil(n/2)-1. Odd-length input is first evened out by repeating
/// the final sample; x_ext then extends per the mode (Periodic wraps,
/// Symmetric reflects about the half-sample boundary, so the edge sample
/// repeats). Throws TooShort if the signal has fewer than 2 samples.
DwtLevelResult dwt_level(const std::vector<double>& signal, const WaveletFilter& filter,
                         Extension extension);

/// Iterates dwt_level on successive approximations. Throws TooManyLevels
/// if any level would see an input shorter than 2 samples.
DwtDecomposition wavedec(const TimeSeries& ts, const WaveletFilter& filter,
                         std::size_t levels, Extension extension);

/// Exact inverse of wavedec (up to rounding): max |x_hat - x| stays below
/// 1e-10 (1 + max|x|) for both filters and both extension modes.
/// Throws InconsistentLengths if the bookkeeping does not chain.
TimeSeries waverec(const DwtDecomposition& dec);

/// Squared 2-norm of each coefficient vector, in order
/// [details level 1, ..., details level L, approx]; length levels+1.
std::vector<double> level_energy(const DwtDecomposition& dec);

} // namespace wsa
