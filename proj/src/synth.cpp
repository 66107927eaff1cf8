#include "wsa/synth.hpp"

#include "wsa/errors.hpp"

#include <cmath>
#include <string>

namespace wsa {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
} // namespace

double GaussianSource::next_uniform() {
    // Top 53 bits of the raw output, scaled to [0, 1).
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double GaussianSource::next() {
    double u1 = next_uniform();
    double u2 = next_uniform();
    // 1-u1 > 0 always, so the log argument never vanishes.
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(kTwoPi * u2);
}

TimeSeries generate(std::size_t n, double dt, const std::vector<SineComponent>& components,
                    double offset, double noise_std, std::uint64_t seed,
                    std::string label) {
    if (n < 2) {
        throw TooShort("need at least 2 samples, got " + std::to_string(n));
    }
    if (!(dt > 0.0)) {
        throw InvalidArgument("dt must be positive");
    }
    if (noise_std < 0.0) {
        throw InvalidArgument("noise_std must be non-negative");
    }
    for (const auto& c : components) {
        if (c.period <= 2.0 * dt) {
            throw NyquistViolation("component period " + format_double(c.period) +
                                   " is not above 2*dt = " + format_double(2.0 * dt));
        }
    }

    GaussianSource noise(seed);
    std::vector<double> values(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = offset;
        for (const auto& c : components) {
            v += c.amplitude * std::sin(kTwoPi * static_cast<double>(t) * dt / c.period + c.phase);
        }
        if (noise_std > 0.0) {
            v += noise_std * noise.next();
        }
        values[t] = v;
    }

    TimeSeries ts;
    ts.values = std::move(values);
    ts.dt = dt;
    ts.label = std::move(label);
    return ts;
}

} // namespace wsa
