#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "wsa/coherence.hpp"
#include "wsa/cwt.hpp"
#include "wsa/errors.hpp"
#include "wsa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using wsa::CoherenceField;
using wsa::CwtField;
using wsa::Matrix;
using wsa::ScaleGrid;
using wsa::TimeSeries;
using wsa::WaveletKind;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool in_cone(const CoherenceField& cf, std::size_t r, std::size_t c) {
    return cf.grid.scales[r] <= cf.coi.max_trusted_scale[c];
}

/// Independent re-statement of the smoothing recipe: per-row Gaussian with
/// sigma = s/dt samples truncated at floor(3 sigma), then a per-column
/// boxcar over an odd number of bins near 0.6/dj, both renormalized over
/// the in-range window.
Matrix<double> smooth_oracle(const Matrix<double>& in, const ScaleGrid& grid, double dt) {
    const std::size_t rows = in.rows(), cols = in.cols();
    Matrix<double> mid(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double sigma = grid.scales[r] / dt;
        long hw = static_cast<long>(std::floor(3.0 * sigma));
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0.0, wsum = 0.0;
            for (long o = -hw; o <= hw; ++o) {
                long j = static_cast<long>(c) + o;
                if (j < 0 || j >= static_cast<long>(cols)) continue;
                double w = std::exp(-0.5 * (static_cast<double>(o) / sigma) *
                                    (static_cast<double>(o) / sigma));
                acc += w * in(r, static_cast<std::size_t>(j));
                wsum += w;
            }
            mid(r, c) = acc / wsum;
        }
    }
    long bins = std::lround(0.6 / grid.dj);
    if (bins < 1) bins = 1;
    if (bins % 2 == 0) ++bins;
    long half = bins / 2;
    Matrix<double> out(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            double acc = 0.0;
            long cnt = 0;
            for (long o = -half; o <= half; ++o) {
                long j = static_cast<long>(r) + o;
                if (j < 0 || j >= static_cast<long>(rows)) continue;
                acc += mid(static_cast<std::size_t>(j), c);
                ++cnt;
            }
            out(r, c) = acc / static_cast<double>(cnt);
        }
    }
    return out;
}

} // namespace

TEST_CASE("cross spectrum of a field with itself is real nonnegative") {
    auto ts = wsa::generate(64, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.1, 3);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(64, 1.0, 0.25, 2.0);
    auto wx = wsa::cwt(ts, w, grid);

    auto cs = wsa::cross_spectrum(wx, wx);
    for (std::size_t i = 0; i < cs.wxy.data().size(); ++i) {
        const auto& v = cs.wxy.data()[i];
        CHECK(v.imag() == 0.0);
        CHECK(v.real() >= 0.0);
        CHECK(v.real() == doctest::Approx(std::norm(wx.coeffs.data()[i])).epsilon(1e-12));
    }
}

TEST_CASE("cross spectrum magnitude is bounded by the factor magnitudes") {
    auto x = wsa::generate(96, 1.0, {{12.0, 1.0, 0.0}}, 0.0, 0.4, 10);
    auto y = wsa::generate(96, 1.0, {{12.0, 0.7, 0.9}}, 0.0, 0.4, 11);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(96, 1.0, 0.25, 2.0);
    auto wx = wsa::cwt(x, w, grid);
    auto wy = wsa::cwt(y, w, grid);

    auto xy = wsa::cross_spectrum(wx, wy);
    auto yx = wsa::cross_spectrum(wy, wx);
    for (std::size_t i = 0; i < xy.wxy.data().size(); ++i) {
        double lhs = std::abs(xy.wxy.data()[i]);
        double bound = std::abs(wx.coeffs.data()[i]) * std::abs(wy.coeffs.data()[i]);
        CHECK(lhs <= bound + 1e-12);
        CHECK(std::abs(lhs - std::abs(yx.wxy.data()[i])) <= 1e-12 * (1.0 + bound));
    }
}

TEST_CASE("cross spectrum of a sign-flipped field has phase pi") {
    auto ts = wsa::generate(64, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.0, 0);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(64, 1.0, 0.25, 2.0);
    auto wx = wsa::cwt(ts, w, grid);
    CwtField neg = wx;
    for (auto& v : neg.coeffs.data()) v = -v;

    auto cs = wsa::cross_spectrum(wx, neg);
    for (const auto& v : cs.wxy.data()) {
        if (std::abs(v) > 0.0) {
            CHECK(std::abs(std::arg(v)) == doctest::Approx(kPi).epsilon(1e-12));
        }
    }
}

TEST_CASE("cross spectrum rejects mismatched grids") {
    auto ts = wsa::generate(64, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.0, 0);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto a = wsa::cwt(ts, w, wsa::make_scale_grid(64, 1.0, 0.25, 2.0));
    auto b = wsa::cwt(ts, w, wsa::make_scale_grid(64, 1.0, 0.5, 2.0));
    CHECK_THROWS_AS(wsa::cross_spectrum(a, b), wsa::GridMismatch);
}

TEST_CASE("smoothing preserves constants and is linear") {
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);
    const std::size_t rows = grid.scales.size();

    Matrix<double> c7(rows, 128, 7.0);
    auto sc = wsa::smooth(c7, grid, 1.0);
    for (double v : sc.data()) CHECK(std::abs(v - 7.0) <= 1e-12);

    Matrix<double> a(rows, 128), b(rows, 128);
    testutil::Uniform u(5);
    for (auto& v : a.data()) v = u.next();
    for (auto& v : b.data()) v = u.next();
    Matrix<double> mix(rows, 128);
    for (std::size_t i = 0; i < mix.data().size(); ++i) {
        mix.data()[i] = 2.0 * a.data()[i] - 0.5 * b.data()[i];
    }
    auto sa = wsa::smooth(a, grid, 1.0);
    auto sb = wsa::smooth(b, grid, 1.0);
    auto sm = wsa::smooth(mix, grid, 1.0);
    for (std::size_t i = 0; i < sm.data().size(); ++i) {
        CHECK(std::abs(sm.data()[i] - (2.0 * sa.data()[i] - 0.5 * sb.data()[i])) <= 1e-12);
    }
}

TEST_CASE("an interior impulse spreads into a nonnegative unit-mass kernel") {
    auto grid = wsa::make_scale_grid(256, 1.0, 0.125, 2.0);
    const std::size_t rows = grid.scales.size();
    REQUIRE(rows >= 9);

    Matrix<double> impulse(rows, 256);
    const std::size_t r0 = 8, c0 = 128; // scale 4: 3 sigma = 12 samples, well interior
    impulse(r0, c0) = 1.0;

    auto s = wsa::smooth(impulse, grid, 1.0);
    double total = 0.0;
    for (double v : s.data()) {
        CHECK(v >= 0.0);
        total += v;
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("smoothing matches an independently coded oracle") {
    auto grid = wsa::make_scale_grid(64, 1.0, 0.25, 2.0);
    const std::size_t rows = grid.scales.size();
    Matrix<double> in(rows, 64);
    testutil::Uniform u(17);
    for (auto& v : in.data()) v = u.next();

    auto got = wsa::smooth(in, grid, 1.0);
    auto want = smooth_oracle(in, grid, 1.0);
    for (std::size_t i = 0; i < got.data().size(); ++i) {
        CHECK(std::abs(got.data()[i] - want.data()[i]) <= 1e-12);
    }
}

TEST_CASE("complex smoothing treats the two planes independently") {
    auto grid = wsa::make_scale_grid(64, 1.0, 0.25, 2.0);
    Matrix<double> re(grid.scales.size(), 64), im(grid.scales.size(), 64);
    testutil::Uniform u(23);
    for (auto& v : re.data()) v = u.next();
    for (auto& v : im.data()) v = u.next();

    Matrix<std::complex<double>> z(grid.scales.size(), 64);
    for (std::size_t i = 0; i < z.data().size(); ++i) {
        z.data()[i] = {re.data()[i], im.data()[i]};
    }
    auto sz = wsa::smooth(z, grid, 1.0);
    auto sre = wsa::smooth(re, grid, 1.0);
    auto sim = wsa::smooth(im, grid, 1.0);
    for (std::size_t i = 0; i < sz.data().size(); ++i) {
        CHECK(sz.data()[i].real() == sre.data()[i]);
        CHECK(sz.data()[i].imag() == sim.data()[i]);
    }
}

TEST_CASE("self-coherence is one with zero phase inside the cone") {
    auto x = wsa::generate(128, 1.0, {{20.0, 1.0, 0.0}}, 0.0, 0.3, 7);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);
    auto cf = wsa::wavelet_coherence(x, x, w, grid);

    CHECK(cf.smoothing.dj == grid.dj);
    for (std::size_t r = 0; r < cf.r2.rows(); ++r) {
        for (std::size_t c = 0; c < cf.r2.cols(); ++c) {
            if (!in_cone(cf, r, c)) continue;
            CHECK(std::abs(cf.r2(r, c) - 1.0) <= 1e-9);
            CHECK(std::abs(cf.phase(r, c)) <= 1e-6);
        }
    }
}

TEST_CASE("anti-phase pair pins the phase to pi inside the cone") {
    auto x = wsa::generate(128, 1.0, {{20.0, 1.0, 0.0}}, 0.0, 0.3, 7);
    TimeSeries y = x;
    for (double& v : y.values) v = -v;
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto cf = wsa::wavelet_coherence(x, y, w, wsa::make_scale_grid(128, 1.0, 0.125, 2.0));

    for (std::size_t r = 0; r < cf.r2.rows(); ++r) {
        for (std::size_t c = 0; c < cf.r2.cols(); ++c) {
            if (!in_cone(cf, r, c)) continue;
            CHECK(std::abs(cf.r2(r, c) - 1.0) <= 1e-9);
            CHECK(std::abs(std::abs(cf.phase(r, c)) - kPi) <= 1e-6);
        }
    }
}

TEST_CASE("coherence stays within [0, 1] and never goes NaN") {
    auto x = wsa::generate(256, 1.0, {}, 0.0, 1.0, 100);
    auto y = wsa::generate(256, 1.0, {}, 0.0, 1.0, 200);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto cf = wsa::wavelet_coherence(x, y, w, wsa::make_scale_grid(256, 1.0, 0.125, 2.0));
    for (double v : cf.r2.data()) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-9);
    }
    for (double v : cf.phase.data()) {
        CHECK(std::isfinite(v));
        CHECK(v > -kPi - 1e-12);
        CHECK(v <= kPi + 1e-12);
    }
}

TEST_CASE("two flat series produce an all-zero field instead of NaN") {
    auto a = wsa::make_series(std::vector<double>(64, 3.0), 1.0);
    auto b = wsa::make_series(std::vector<double>(64, -1.5), 1.0);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto cf = wsa::wavelet_coherence(a, b, w, wsa::make_scale_grid(64, 1.0, 0.25, 2.0));
    for (double v : cf.r2.data()) CHECK(v == 0.0);
    for (double v : cf.phase.data()) CHECK(v == 0.0);
}

TEST_CASE("coherence is symmetric in its arguments") {
    auto x = wsa::generate(128, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.3, 31);
    auto y = wsa::generate(128, 1.0, {{16.0, 0.8, 1.0}}, 0.0, 0.3, 32);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);
    auto fxy = wsa::wavelet_coherence(x, y, w, grid);
    auto fyx = wsa::wavelet_coherence(y, x, w, grid);

    for (std::size_t i = 0; i < fxy.r2.data().size(); ++i) {
        CHECK(std::abs(fxy.r2.data()[i] - fyx.r2.data()[i]) <= 1e-9);
        CHECK(testutil::ang_dist(fxy.phase.data()[i], -fyx.phase.data()[i]) <= 1e-9);
    }
}

TEST_CASE("coherence ignores positive rescaling of either input") {
    auto x = wsa::generate(128, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.3, 41);
    auto y = wsa::generate(128, 1.0, {{16.0, 1.0, 0.8}}, 0.0, 0.3, 42);
    TimeSeries xs = x, ys = y;
    for (double& v : xs.values) v *= 2.5;
    for (double& v : ys.values) v *= 0.7;

    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);
    auto f0 = wsa::wavelet_coherence(x, y, w, grid);
    auto f1 = wsa::wavelet_coherence(xs, ys, w, grid);
    for (std::size_t i = 0; i < f0.r2.data().size(); ++i) {
        CHECK(std::abs(f0.r2.data()[i] - f1.r2.data()[i]) <= 1e-9);
        CHECK(testutil::ang_dist(f0.phase.data()[i], f1.phase.data()[i]) <= 1e-9);
    }
}

TEST_CASE("without smoothing the coherence ratio is identically one") {
    auto x = wsa::generate(128, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.5, 51);
    auto y = wsa::generate(128, 1.0, {{24.0, 1.0, 0.3}}, 0.0, 0.5, 52);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);
    auto wx = wsa::cwt(x, w, grid);
    auto wy = wsa::cwt(y, w, grid);

    double peak = 0.0;
    for (std::size_t i = 0; i < wx.coeffs.data().size(); ++i) {
        peak = std::max(peak, std::abs(wx.coeffs.data()[i]) * std::abs(wy.coeffs.data()[i]));
    }
    std::size_t checked = 0;
    for (std::size_t i = 0; i < wx.coeffs.data().size(); ++i) {
        double den = std::norm(wx.coeffs.data()[i]) * std::norm(wy.coeffs.data()[i]);
        if (den <= 1e-12 * peak * peak) continue;
        double num = std::norm(wx.coeffs.data()[i] * std::conj(wy.coeffs.data()[i]));
        CHECK(std::abs(num / den - 1.0) <= 1e-9);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("independent noise keeps the smoothed coherence low") {
    std::vector<double> pooled;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        auto x = wsa::generate(256, 1.0, {}, 0.0, 1.0, 7000 + 2 * trial);
        auto y = wsa::generate(256, 1.0, {}, 0.0, 1.0, 7001 + 2 * trial);
        auto w = wsa::make_wavelet(WaveletKind::Cgau2);
        auto cf = wsa::wavelet_coherence(x, y, w, wsa::make_scale_grid(256, 1.0, 0.125, 2.0));
        for (std::size_t r = 0; r < cf.r2.rows(); ++r) {
            for (std::size_t c = 0; c < cf.r2.cols(); ++c) {
                if (in_cone(cf, r, c)) pooled.push_back(cf.r2(r, c));
            }
        }
    }
    REQUIRE(!pooled.empty());
    std::sort(pooled.begin(), pooled.end());
    CHECK(pooled[pooled.size() / 2] < 0.6);
}

TEST_CASE("quarter-phase pair reads plus pi over two at the ridge") {
    auto x = wsa::generate(256, 1.0, {{20.0, 1.0, 0.0}}, 0.0, 0.0, 0);
    auto y = wsa::generate(256, 1.0, {{20.0, 1.0, kPi / 2.0}}, 0.0, 0.0, 0); // cosine
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(256, 1.0, 0.125, 2.0);
    auto cf = wsa::wavelet_coherence(x, y, w, grid);

    // ridge row: the grid scale whose equivalent period is nearest the
    // planted period 20
    std::size_t ridge = 0;
    double best = 1e300;
    for (std::size_t r = 0; r < grid.scales.size(); ++r) {
        double d = std::abs(wsa::scale_to_period(grid.scales[r], w) - 20.0);
        if (d < best) {
            best = d;
            ridge = r;
        }
    }

    std::size_t cells = 0;
    for (std::size_t c = 0; c < 256; ++c) {
        if (!in_cone(cf, ridge, c)) continue;
        CHECK(std::abs(cf.phase(ridge, c) - kPi / 2.0) <= 0.05);
        ++cells;
    }
    CHECK(cells > 0);
}

TEST_CASE("mean phase over the cone summarizes self and anti pairs") {
    auto x = wsa::generate(128, 1.0, {{20.0, 1.0, 0.0}}, 0.0, 0.2, 61);
    TimeSeries y = x;
    for (double& v : y.values) v = -v;
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);

    auto self_mp = wsa::mean_phase_in_coi(wsa::wavelet_coherence(x, x, w, grid), 0.5);
    CHECK(std::abs(self_mp.angle) <= 0.1);
    CHECK(self_mp.concentration > 0.9);
    CHECK(self_mp.concentration <= 1.0 + 1e-12);

    auto anti_mp = wsa::mean_phase_in_coi(wsa::wavelet_coherence(x, y, w, grid), 0.5);
    CHECK(testutil::ang_dist(anti_mp.angle, kPi) <= 0.1);
    CHECK(anti_mp.concentration > 0.9);
}

TEST_CASE("noisy anti-phase surrogate stays near pi") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        auto x = wsa::generate(61, 1.0, {{20.0, 1.0, 0.0}}, 0.0, 0.3, 9000 + seed);
        auto y = wsa::generate(61, 1.0, {{20.0, -1.0, 0.0}}, 0.0, 0.3, 9500 + seed);
        auto w = wsa::make_wavelet(WaveletKind::Cgau2);
        auto cf = wsa::wavelet_coherence(x, y, w, wsa::make_scale_grid(61, 1.0, 0.125, 2.0));
        auto mp = wsa::mean_phase_in_coi(cf, 0.5);
        CHECK(testutil::ang_dist(mp.angle, kPi) <= 0.3);
    }
}

TEST_CASE("mean phase argument validation and empty masks") {
    auto x = wsa::generate(64, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.1, 3);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto cf = wsa::wavelet_coherence(x, x, w, wsa::make_scale_grid(64, 1.0, 0.25, 2.0));

    CHECK_THROWS_AS(wsa::mean_phase_in_coi(cf, 1.0), wsa::InvalidArgument);
    CHECK_THROWS_AS(wsa::mean_phase_in_coi(cf, -0.1), wsa::InvalidArgument);

    CoherenceField empty = cf;
    for (auto& v : empty.r2.data()) v = 0.1;
    CHECK_THROWS_AS(wsa::mean_phase_in_coi(empty, 0.9), wsa::NoQualifyingCells);
}

TEST_CASE("length and dt mismatches are rejected") {
    auto x = wsa::generate(64, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.0, 0);
    auto y61 = wsa::generate(61, 1.0, {{16.0, 1.0, 0.0}}, 0.0, 0.0, 0);
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(64, 1.0, 0.25, 2.0);
    CHECK_THROWS_AS(wsa::wavelet_coherence(x, y61, w, grid), wsa::LengthMismatch);

    auto ydt = wsa::generate(64, 0.5, {{16.0, 1.0, 0.0}}, 0.0, 0.0, 0);
    CHECK_THROWS_AS(wsa::wavelet_coherence(x, ydt, w, grid), wsa::GridMismatch);
}

TEST_CASE("phase arrows subsample the masked cone") {
    auto x = wsa::generate(128, 1.0, {{20.0, 1.0, 0.0}}, 0.0, 0.2, 71);
    TimeSeries y = x;
    for (double& v : y.values) v = -v;
    auto w = wsa::make_wavelet(WaveletKind::Cgau2);
    auto grid = wsa::make_scale_grid(128, 1.0, 0.125, 2.0);

    auto self_cf = wsa::wavelet_coherence(x, x, w, grid);
    auto arrows = wsa::phase_arrows(self_cf, 4, 2, 0.5);
    CHECK(!arrows.empty());
    std::size_t cap = ((128 + 3) / 4) * ((grid.scales.size() + 1) / 2);
    CHECK(arrows.size() <= cap);
    for (const auto& a : arrows) {
        CHECK(std::abs(a.angle) <= 1e-6);
        CHECK(a.t_index % 4 == 0);
        CHECK(a.s_index % 2 == 0);
        CHECK(in_cone(self_cf, a.s_index, a.t_index));
        CHECK(self_cf.r2(a.s_index, a.t_index) >= 0.5);
    }

    auto anti = wsa::phase_arrows(wsa::wavelet_coherence(x, y, w, grid), 4, 2, 0.5);
    for (const auto& a : anti) {
        CHECK(std::abs(std::abs(a.angle) - kPi) <= 1e-6);
    }

    CHECK_THROWS_AS(wsa::phase_arrows(self_cf, 0, 1, 0.5), wsa::InvalidArgument);
    CHECK_THROWS_AS(wsa::phase_arrows(self_cf, 1, 0, 0.5), wsa::InvalidArgument);
}
