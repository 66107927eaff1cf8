#include "wsa/coherence.hpp"

#include "wsa/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace wsa {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

bool same_grid(const ScaleGrid& a, const ScaleGrid& b) {
    return a.s0 == b.s0 && a.dj == b.dj && a.scales == b.scales;
}

} // namespace

CrossSpectrum cross_spectrum(const CwtField& wx, const CwtField& wy) {
    if (!same_grid(wx.grid, wy.grid) || wx.dt != wy.dt || wx.n != wy.n) {
        throw GridMismatch("cross spectrum needs both transforms on one grid");
    }
    CrossSpectrum cs;
    cs.grid = wx.grid;
    cs.dt = wx.dt;
    cs.wxy = Matrix<std::complex<double>>(wx.coeffs.rows(), wx.coeffs.cols());
    for (std::size_t r = 0; r < wx.coeffs.rows(); ++r) {
        for (std::size_t c = 0; c < wx.coeffs.cols(); ++c) {
            cs.wxy(r, c) = wx.coeffs(r, c) * std::conj(wy.coeffs(r, c));
        }
    }
    return cs;
}

Matrix<double> smooth(const Matrix<double>& field, const ScaleGrid& grid, double dt) {
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();

    Matrix<double> tmp(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const double sigma = grid.scales[r] / dt;
        const auto hw = static_cast<std::size_t>(std::floor(3.0 * sigma));
        std::vector<double> w(hw + 1);
        for (std::size_t o = 0; o <= hw; ++o) {
            w[o] = std::exp(-0.5 * static_cast<double>(o) * static_cast<double>(o) /
                            (sigma * sigma));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = w[0] * field(r, c);
            double wsum = w[0];
            for (std::size_t o = 1; o <= hw; ++o) {
                if (c >= o) {
                    acc += w[o] * field(r, c - o);
                    wsum += w[o];
                }
                if (c + o < cols) {
                    acc += w[o] * field(r, c + o);
                    wsum += w[o];
                }
            }
            tmp(r, c) = acc / wsum;
        }
    }

    long bins = std::lround(0.6 / grid.dj);
    if (bins < 1) bins = 1;
    if (bins % 2 == 0) bins += 1;
    const auto half = static_cast<std::size_t>(bins / 2);

    Matrix<double> out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t lo = (r >= half) ? r - half : 0;
        const std::size_t hi = std::min(rows - 1, r + half);
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (std::size_t rr = lo; rr <= hi; ++rr) acc += tmp(rr, c);
            out(r, c) = acc / static_cast<double>(hi - lo + 1);
        }
    }
    return out;
}

Matrix<std::complex<double>> smooth(const Matrix<std::complex<double>>& field,
                                    const ScaleGrid& grid, double dt) {
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();
    Matrix<double> re(rows, cols);
    Matrix<double> im(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            re(r, c) = field(r, c).real();
            im(r, c) = field(r, c).imag();
        }
    }
    re = smooth(re, grid, dt);
    im = smooth(im, grid, dt);
    Matrix<std::complex<double>> out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out(r, c) = {re(r, c), im(r, c)};
        }
    }
    return out;
}

CoherenceField wavelet_coherence(const TimeSeries& x, const TimeSeries& y,
                                 const MotherWavelet& w, const ScaleGrid& grid) {
    if (x.size() != y.size()) {
        throw LengthMismatch("series lengths " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()) + " differ");
    }
    if (x.dt != y.dt) {
        throw GridMismatch("series sample intervals differ");
    }

    const CwtField wx = cwt(x, w, grid);
    const CwtField wy = cwt(y, w, grid);
    const std::size_t rows = wx.coeffs.rows();
    const std::size_t cols = wx.coeffs.cols();

    // Row scaling by 1/s before smoothing keeps the three fields comparable
    // across scales; identical nonnegative weights on numerator and both
    // denominators then bound r2 by 1 via Cauchy-Schwarz.
    Matrix<std::complex<double>> cross(rows, cols);
    Matrix<double> power_x(rows, cols);
    Matrix<double> power_y(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const double inv_s = 1.0 / grid.scales[r];
        for (std::size_t c = 0; c < cols; ++c) {
            cross(r, c) = wx.coeffs(r, c) * std::conj(wy.coeffs(r, c)) * inv_s;
            power_x(r, c) = std::norm(wx.coeffs(r, c)) * inv_s;
            power_y(r, c) = std::norm(wy.coeffs(r, c)) * inv_s;
        }
    }
    const Matrix<std::complex<double>> num = smooth(cross, grid, x.dt);
    const Matrix<double> den_x = smooth(power_x, grid, x.dt);
    const Matrix<double> den_y = smooth(power_y, grid, x.dt);

    CoherenceField cf;
    cf.r2 = Matrix<double>(rows, cols);
    cf.phase = Matrix<double>(rows, cols);
    cf.coi = coi(x.size(), x.dt, w);
    cf.grid = grid;
    cf.smoothing.dj = grid.dj;
    cf.dt = x.dt;
    cf.n = x.size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double denom = den_x(r, c) * den_y(r, c);
            if (denom < 1e-300) {
                cf.r2(r, c) = 0.0;
                cf.phase(r, c) = 0.0;
                continue;
            }
            cf.r2(r, c) = std::norm(num(r, c)) / denom;
            double phi = std::arg(num(r, c));
            if (phi <= -kPi) phi = kPi; // keep the range (-pi, pi]
            cf.phase(r, c) = phi;
        }
    }
    return cf;
}

MeanPhase mean_phase_in_coi(const CoherenceField& cf, double min_r2) {
    if (!(min_r2 >= 0.0 && min_r2 < 1.0)) {
        throw InvalidArgument("min_r2 must lie in [0, 1)");
    }
    double sum_cos = 0.0;
    double sum_sin = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < cf.r2.rows(); ++r) {
        for (std::size_t c = 0; c < cf.r2.cols(); ++c) {
            if (cf.grid.scales[r] > cf.coi.max_trusted_scale[c]) continue;
            if (cf.r2(r, c) < min_r2) continue;
            sum_cos += std::cos(cf.phase(r, c));
            sum_sin += std::sin(cf.phase(r, c));
            ++count;
        }
    }
    if (count == 0) {
        throw NoQualifyingCells("no in-cone cell reaches r2 >= " + format_double(min_r2));
    }
    MeanPhase mp;
    mp.angle = std::atan2(sum_sin, sum_cos);
    mp.concentration =
        std::sqrt(sum_cos * sum_cos + sum_sin * sum_sin) / static_cast<double>(count);
    return mp;
}

std::vector<PhaseArrow> phase_arrows(const CoherenceField& cf, std::size_t stride_t,
                                     std::size_t stride_s, double min_r2) {
    if (stride_t < 1 || stride_s < 1) {
        throw InvalidArgument("arrow strides must be at least 1");
    }
    std::vector<PhaseArrow> arrows;
    for (std::size_t r = 0; r < cf.r2.rows(); r += stride_s) {
        for (std::size_t c = 0; c < cf.r2.cols(); c += stride_t) {
            if (cf.grid.scales[r] > cf.coi.max_trusted_scale[c]) continue;
            if (cf.r2(r, c) < min_r2) continue;
            arrows.push_back({c, r, cf.phase(r, c)});
        }
    }
    return arrows;
}

} // namespace wsa
