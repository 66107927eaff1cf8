#pragma once

#include "wsa/series.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wsa {

/// One sinusoidal component of a synthetic signal. Periods are in days.
struct SineComponent {
    double period = 0.0;
    double amplitude = 0.0;
    double phase = 0.0; // radians
};

/// Deterministic Gaussian deviate stream. The algorithm is pinned so the
/// same seed gives the same sequence everywhere: std::mt19937_64 (whose
/// output is fully specified by the standard) drives uniforms
/// u = (x >> 11) * 2^-53 in [0,1), and each deviate is
/// sqrt(-2 ln(1-u1)) * cos(2 pi u2) — Box-Muller, first branch only,
/// two uniforms consumed per deviate.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    std::mt19937_64 rng_;
    double next_uniform(); // [0, 1)
};

/// values[t] = offset + sum_i amp_i * sin(2 pi * t * dt / period_i + phase_i)
/// plus Normal(0, noise_std^2) noise from GaussianSource(seed).
/// Throws NyquistViolation if any component period <= 2 * dt.
TimeSeries generate(std::size_t n, double dt, const std::vector<SineComponent>& components,
                    double offset, double noise_std, std::uint64_t seed,
                    std::string label = {});

} // namespace wsa
