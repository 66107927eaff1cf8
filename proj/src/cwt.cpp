#include "wsa/cwt.hpp"

#include "wsa/errors.hpp"
#include "wsa/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace wsa {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kQuadHalfSpan = 8.0; // both envelopes are < 2e-14 beyond |t| = 8

std::complex<double> raw_value(WaveletKind kind, double omega0, double t) {
    if (kind == WaveletKind::Morlet) {
        double env = std::exp(-0.5 * t * t);
        return {env * std::cos(omega0 * t), env * std::sin(omega0 * t)};
    }
    // Second derivative of exp(-it) exp(-t^2), not yet normalized.
    double env = std::exp(-t * t);
    std::complex<double> poly(4.0 * t * t - 3.0, 4.0 * t);
    std::complex<double> carrier(std::cos(t), -std::sin(t));
    return env * poly * carrier;
}

// Composite Simpson rule on [-kQuadHalfSpan, kQuadHalfSpan].
template <typename F>
auto simpson(F f, int intervals) {
    const double a = -kQuadHalfSpan;
    const double h = 2.0 * kQuadHalfSpan / intervals;
    auto acc = f(a) + f(a + intervals * h);
    for (int i = 1; i < intervals; ++i) {
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * (h / 3.0);
}

double raw_energy(WaveletKind kind, double omega0) {
    return simpson(
        [&](double t) { return std::norm(raw_value(kind, omega0, t)); }, 4096);
}

// |psi_hat(omega)| with psi_hat(omega) = integral psi(t) exp(-i omega t) dt.
double spectrum_mag(WaveletKind kind, double omega0, double norm, double omega) {
    std::complex<double> v = simpson(
        [&](double t) {
            std::complex<double> rot(std::cos(omega * t), -std::sin(omega * t));
            return raw_value(kind, omega0, t) * rot;
        },
        4096);
    return norm * std::abs(v);
}

// Coarse grid argmax over (0, hi] followed by golden-section refinement.
double spectral_peak(WaveletKind kind, double omega0, double norm) {
    const double hi = std::max(16.0, 2.0 * omega0);
    const double step = 0.05;
    double best_w = step;
    double best_v = -1.0;
    for (double w = step; w <= hi; w += step) {
        double v = spectrum_mag(kind, omega0, norm, w);
        if (v > best_v) {
            best_v = v;
            best_w = w;
        }
    }
    double a = std::max(1e-6, best_w - step);
    double b = best_w + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = spectrum_mag(kind, omega0, norm, x1);
    double f2 = spectrum_mag(kind, omega0, norm, x2);
    while (b - a > 1e-9) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = spectrum_mag(kind, omega0, norm, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = spectrum_mag(kind, omega0, norm, x1);
        }
    }
    return 0.5 * (a + b);
}

// |t| where |psi| first falls to 1/e of its t=0 peak; both families have
// monotone-decaying envelopes, so plain bisection applies.
double efolding_time(WaveletKind kind, double omega0) {
    const double target = std::abs(raw_value(kind, omega0, 0.0)) / std::exp(1.0);
    double lo = 0.0;
    double hi = kQuadHalfSpan;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (std::abs(raw_value(kind, omega0, mid)) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

MotherWavelet make_wavelet(WaveletKind kind, double omega0) {
    MotherWavelet w;
    w.kind = kind;
    w.omega0 = omega0;
    if (kind == WaveletKind::Morlet) {
        if (!(omega0 > 0.0)) {
            throw InvalidArgument("Morlet omega0 must be positive");
        }
        w.norm = std::pow(kPi, -0.25);
        w.efold = std::sqrt(2.0);
    } else {
        w.norm = 1.0 / std::sqrt(raw_energy(kind, omega0));
        w.efold = efolding_time(kind, omega0);
    }
    double energy = w.norm * w.norm * raw_energy(kind, omega0);
    if (std::abs(energy - 1.0) > 1e-6) {
        throw InvalidArgument("wavelet normalization failed the unit-energy check");
    }
    w.center_frequency = spectral_peak(kind, omega0, w.norm);
    return w;
}

std::complex<double> wavelet_value(const MotherWavelet& w, double t) {
    return w.norm * raw_value(w.kind, w.omega0, t);
}

double center_frequency(const MotherWavelet& w) {
    return w.center_frequency;
}

double scale_to_period(double s, const MotherWavelet& w) {
    if (w.kind == WaveletKind::Morlet) {
        return 4.0 * kPi * s / (w.omega0 + std::sqrt(2.0 + w.omega0 * w.omega0));
    }
    return 2.0 * kPi * s / w.center_frequency;
}

ScaleGrid make_scale_grid(std::size_t n, double dt, double dj, double s0) {
    if (!(dj > 0.0)) {
        throw InvalidResolution("dj must be positive, got " + format_double(dj));
    }
    if (s0 < 2.0 * dt) {
        throw InvalidResolution("s0 = " + format_double(s0) + " is below 2*dt = " +
                                format_double(2.0 * dt));
    }
    double jmax = std::floor(std::log2(static_cast<double>(n) * dt / s0) / dj);
    const long j_top = std::max(0L, static_cast<long>(jmax));
    ScaleGrid grid;
    grid.s0 = s0;
    grid.dj = dj;
    grid.scales.reserve(static_cast<std::size_t>(j_top) + 1);
    for (long j = 0; j <= j_top; ++j) {
        grid.scales.push_back(s0 * std::exp2(static_cast<double>(j) * dj));
    }
    return grid;
}

CwtField cwt(const TimeSeries& ts, const MotherWavelet& w, const ScaleGrid& grid) {
    const std::size_t n = ts.size();
    const double dt = ts.dt;
    const TimeSeries centered = demean(ts);

    // Pad so the length-(2n-1) sampled kernel never wraps onto the signal:
    // the circular product then equals the direct summation exactly.
    const std::size_t m = detail::next_pow2(2 * n);
    std::vector<std::complex<double>> xf(m, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) xf[i] = {centered.values[i], 0.0};
    xf = detail::fft_complex(std::move(xf));

    CwtField field;
    field.coeffs = Matrix<std::complex<double>>(grid.scales.size(), n);
    field.grid = grid;
    field.wavelet = w;
    field.dt = dt;
    field.n = n;

    for (std::size_t r = 0; r < grid.scales.size(); ++r) {
        const double s = grid.scales[r];
        const double amp = dt / std::sqrt(s);
        // W(i) = sum_j x_j k(i - j) with k(d) = conj(psi(-d dt / s)) amp.
        std::vector<std::complex<double>> kf(m, {0.0, 0.0});
        for (std::size_t d = 0; d < n; ++d) {
            kf[d] = std::conj(wavelet_value(w, -static_cast<double>(d) * dt / s)) * amp;
            if (d > 0) {
                kf[m - d] = std::conj(wavelet_value(w, static_cast<double>(d) * dt / s)) * amp;
            }
        }
        kf = detail::fft_complex(std::move(kf));
        for (std::size_t i = 0; i < m; ++i) kf[i] *= xf[i];
        kf = detail::ifft_complex(std::move(kf));
        for (std::size_t i = 0; i < n; ++i) field.coeffs(r, i) = kf[i];
    }
    return field;
}

Scalogram scalogram(const CwtField& field) {
    const std::size_t rows = field.coeffs.rows();
    const std::size_t cols = field.coeffs.cols();

    std::vector<double> marginal(rows, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double e = 0.0;
        for (std::size_t c = 0; c < cols; ++c) e += std::norm(field.coeffs(r, c));
        marginal[r] = e;
        total += e;
    }
    if (total <= 0.0) {
        throw EmptyField("all transform coefficients are zero");
    }

    Scalogram sg;
    sg.percent = Matrix<double>(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            sg.percent(r, c) = 100.0 * std::norm(field.coeffs(r, c)) / total;
        }
    }

    // Strict interior maxima of the time-marginal energy. The relative floor
    // discards edge artifacts: at scales far above any real ridge, the
    // zero-padded ends leave small energy wiggles (below ~1% of the peak)
    // that would otherwise register as spurious maxima.
    const double peak = *std::max_element(marginal.begin(), marginal.end());
    const double floor = 1e-2 * peak;
    std::vector<std::size_t> maxima;
    for (std::size_t r = 1; r + 1 < rows; ++r) {
        if (marginal[r] > marginal[r - 1] && marginal[r] > marginal[r + 1] &&
            marginal[r] >= floor) {
            maxima.push_back(r);
        }
    }
    std::sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
        if (marginal[a] != marginal[b]) return marginal[a] > marginal[b];
        return a < b;
    });
    if (maxima.size() > 5) maxima.resize(5);
    for (std::size_t r : maxima) sg.dominant_scales.push_back(field.grid.scales[r]);
    return sg;
}

ConeOfInfluence coi(std::size_t n, double dt, const MotherWavelet& w) {
    if (n < 2) {
        throw TooShort("cone of influence needs at least 2 samples");
    }
    ConeOfInfluence cone;
    cone.max_trusted_scale.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        double edge = static_cast<double>(std::min(t, n - 1 - t));
        cone.max_trusted_scale[t] = dt * edge / w.efold;
    }
    return cone;
}

} // namespace wsa
