#include "wsa/fourier.hpp"

#include "wsa/errors.hpp"
#include "wsa/fft.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace wsa {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> make_freqs(std::size_t n, double dt, std::size_t count) {
    std::vector<double> freqs(count);
    for (std::size_t k = 0; k < count; ++k) {
        freqs[k] = static_cast<double>(k) / (static_cast<double>(n) * dt);
    }
    return freqs;
}

} // namespace

FourierSpectrum dft_naive(const TimeSeries& ts) {
    const std::size_t n = ts.size();
    FourierSpectrum spectrum;
    spectrum.n = n;
    spectrum.dt = ts.dt;
    spectrum.freqs = make_freqs(n, ts.dt, n);
    spectrum.coeffs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            // k*j mod N keeps the angle in [0, 2pi) for accuracy at any N.
            std::uint64_t r = (static_cast<std::uint64_t>(k) * j) % n;
            double ang = -kTwoPi * static_cast<double>(r) / static_cast<double>(n);
            re += ts.values[j] * std::cos(ang);
            im += ts.values[j] * std::sin(ang);
        }
        spectrum.coeffs[k] = {re, im};
    }
    return spectrum;
}

FourierSpectrum fft(const TimeSeries& ts) {
    const std::size_t n = ts.size();
    std::vector<std::complex<double>> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = {ts.values[j], 0.0};

    FourierSpectrum spectrum;
    spectrum.n = n;
    spectrum.dt = ts.dt;
    spectrum.freqs = make_freqs(n, ts.dt, n);
    spectrum.coeffs = detail::fft_complex(std::move(x));
    return spectrum;
}

std::vector<std::pair<double, double>> coefficient_scatter(const FourierSpectrum& spectrum) {
    std::vector<std::pair<double, double>> points;
    points.reserve(spectrum.n > 0 ? spectrum.n - 1 : 0);
    for (std::size_t k = 1; k < spectrum.n; ++k) {
        points.emplace_back(spectrum.coeffs[k].real(), spectrum.coeffs[k].imag());
    }
    return points;
}

double scatter_dispersion(const FourierSpectrum& spectrum) {
    double total_power = 0.0;
    double weighted_radius = 0.0;
    for (std::size_t k = 1; k < spectrum.n; ++k) {
        double r = std::abs(spectrum.coeffs[k]);
        total_power += r * r;
        weighted_radius += r * r * r;
    }
    if (total_power <= 0.0) {
        throw DegenerateSpectrum("all non-DC coefficients are zero");
    }
    const double rbar = weighted_radius / total_power;
    double spread = 0.0;
    for (std::size_t k = 1; k < spectrum.n; ++k) {
        double r = std::abs(spectrum.coeffs[k]);
        double d = r - rbar;
        spread += r * r * d * d;
    }
    return std::sqrt(spread / total_power) / rbar;
}

Periodogram periodogram(const FourierSpectrum& spectrum) {
    if (spectrum.n < 4) {
        throw InvalidArgument("periodogram needs at least 4 samples, got " +
                              std::to_string(spectrum.n));
    }
    const std::size_t half = spectrum.n / 2;
    Periodogram pg;
    pg.power.resize(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        pg.power[k] = std::norm(spectrum.coeffs[k]);
    }
    pg.freqs = make_freqs(spectrum.n, spectrum.dt, half + 1);

    std::size_t best = 1;
    for (std::size_t k = 2; k <= half; ++k) {
        if (pg.power[k] > pg.power[best]) best = k; // ties keep the lower bin
    }
    if (pg.power[best] <= 1e-12 * pg.power[0]) {
        throw NoDominantPeak("spectrum is flat above DC (effectively constant input)");
    }
    pg.dominant_bin = best;
    pg.dominant_period =
        static_cast<double>(spectrum.n) * spectrum.dt / static_cast<double>(best);
    return pg;
}

double dominant_period(const Periodogram& pg) {
    return pg.dominant_period;
}

} // namespace wsa
