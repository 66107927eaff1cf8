#pragma once

#include <complex>
#include <vector>

namespace wsa::detail {

/// Forward transform, unnormalized: X_k = sum_n x_n exp(-2 pi i k n / N).
/// Any length: iterative radix-2 for powers of two, Bluestein chirp-z
/// otherwise. Kept in-repo so outputs are bit-stable across platforms.
std::vector<std::complex<double>> fft_complex(std::vector<std::complex<double>> x);

/// Inverse transform carrying the 1/N factor.
std::vector<std::complex<double>> ifft_complex(std::vector<std::complex<double>> x);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

} // namespace wsa::detail
