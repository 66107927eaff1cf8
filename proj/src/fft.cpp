#include "wsa/fft.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

namespace wsa::detail {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

using cvec = std::vector<std::complex<double>>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 transform, n a power of two. Twiddles come from a
// directly evaluated table rather than incremental products so the error
// stays at a few ulps regardless of n.
void fft_pow2(cvec& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;

    const double sign = inverse ? 2.0 : -2.0;
    cvec tw(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        double ang = sign * kPi * static_cast<double>(j) / static_cast<double>(n);
        tw[j] = {std::cos(ang), std::sin(ang)};
    }

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                auto u = a[i + j];
                auto v = a[i + j + len / 2] * tw[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

// Bluestein: X_k = c_k * (a (*) b)_k with c_m = exp(-i pi m^2 / n),
// a_m = x_m c_m, b_m = conj(c_m) on |m| < n, convolved circularly at a
// power-of-two length >= 2n-1. The m^2 mod 2n reduction keeps the chirp
// angle small so cos/sin stay accurate for any n.
cvec fft_bluestein(const cvec& x) {
    const std::size_t n = x.size();
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);

    cvec chirp(n);
    for (std::size_t m = 0; m < n; ++m) {
        std::uint64_t m2 = (static_cast<std::uint64_t>(m) * m) % two_n;
        double ang = -kPi * static_cast<double>(m2) / static_cast<double>(n);
        chirp[m] = {std::cos(ang), std::sin(ang)};
    }

    const std::size_t m = next_pow2(2 * n - 1);
    cvec a(m, {0.0, 0.0});
    cvec b(m, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * chirp[i];
    b[0] = std::conj(chirp[0]);
    for (std::size_t i = 1; i < n; ++i) {
        b[i] = std::conj(chirp[i]);
        b[m - i] = b[i];
    }

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, true);

    cvec out(n);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv_m * chirp[k];
    return out;
}

} // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

cvec fft_complex(cvec x) {
    if (x.size() < 2) return x;
    if (is_pow2(x.size())) {
        fft_pow2(x, false);
        return x;
    }
    return fft_bluestein(x);
}

cvec ifft_complex(cvec x) {
    const std::size_t n = x.size();
    if (n < 2) return x;
    for (auto& v : x) v = std::conj(v);
    x = fft_complex(std::move(x));
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : x) v = std::conj(v) * inv_n;
    return x;
}

} // namespace wsa::detail
