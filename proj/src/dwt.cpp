#include "wsa/dwt.hpp"

#include "wsa/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

namespace wsa {

namespace {

// Maps an out-of-range index back into [0, ne). Periodic wraps; Symmetric
// reflects about the half-sample boundary, so the edge sample repeats.
std::size_t map_index(std::int64_t i, std::int64_t ne, Extension ext) {
    if (ext == Extension::Periodic) {
        return static_cast<std::size_t>(((i % ne) + ne) % ne);
    }
    while (i < 0 || i >= ne) {
        i = (i < 0) ? -1 - i : 2 * ne - 1 - i;
    }
    return static_cast<std::size_t>(i);
}

std::vector<double> evenize(const std::vector<double>& x) {
    std::vector<double> out = x;
    if (out.size() % 2 != 0) out.push_back(out.back());
    return out;
}

// Gaussian elimination with partial pivoting; m is K x K with K tiny
// (one approx plus one detail edge row per boundary-crossing position).
void solve_dense(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
    const std::size_t k = rhs.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < k; ++r) {
            double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t col = k; col-- > 0;) {
        for (std::size_t c = col + 1; c < k; ++c) rhs[col] -= m[col][c] * rhs[c];
        rhs[col] /= m[col][col];
    }
}

// Inverts one analysis stage. The periodic analysis operator is orthogonal,
// so its adjoint scatter alone inverts Periodic mode. Symmetric analysis
// differs from periodic only in the rows whose filter support crosses an
// edge: A_sym = A_per + sum_r e_r delta_r^T. With p_r = A_per^T e_r
// (the periodic version of row r), the inverse is a rank-K Woodbury
// correction: x = z - P q, M q = D^T z, M = I_K + D^T P, z = A_per^T c.
std::vector<double> idwt_level(const std::vector<double>& approx,
                               const std::vector<double>& detail,
                               const WaveletFilter& filter, Extension extension,
                               std::size_t n_in) {
    const std::size_t ne_sz = n_in + (n_in % 2);
    const auto ne = static_cast<std::int64_t>(ne_sz);
    const std::size_t m = ne_sz / 2;
    const auto& h = filter.lowpass;
    const auto& g = filter.highpass;
    const std::size_t taps = h.size();
    const auto off = static_cast<std::int64_t>(taps / 2 - 1);

    std::vector<double> z(ne_sz, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < taps; ++j) {
            std::size_t i = map_index(static_cast<std::int64_t>(2 * k + j) - off, ne,
                                      Extension::Periodic);
            z[i] += h[j] * approx[k] + g[j] * detail[k];
        }
    }

    if (extension == Extension::Symmetric) {
        struct EdgeRow {
            const std::vector<double>* filt;
            std::size_t k;
        };
        std::vector<EdgeRow> rows;
        for (std::size_t k = 0; k < m; ++k) {
            const auto lo = static_cast<std::int64_t>(2 * k) - off;
            const auto hi = static_cast<std::int64_t>(2 * k + taps - 1) - off;
            if (lo < 0 || hi >= ne) {
                rows.push_back({&h, k});
                rows.push_back({&g, k});
            }
        }
        const std::size_t kk = rows.size();
        if (kk > 0) {
            std::vector<std::vector<double>> delta(kk, std::vector<double>(ne_sz, 0.0));
            std::vector<std::vector<double>> p(kk, std::vector<double>(ne_sz, 0.0));
            for (std::size_t r = 0; r < kk; ++r) {
                const auto& f = *rows[r].filt;
                for (std::size_t j = 0; j < taps; ++j) {
                    const auto idx = static_cast<std::int64_t>(2 * rows[r].k + j) - off;
                    const std::size_t per = map_index(idx, ne, Extension::Periodic);
                    const std::size_t sym = map_index(idx, ne, Extension::Symmetric);
                    p[r][per] += f[j];
                    if (sym != per) {
                        delta[r][sym] += f[j];
                        delta[r][per] -= f[j];
                    }
                }
            }
            std::vector<std::vector<double>> mat(kk, std::vector<double>(kk, 0.0));
            std::vector<double> q(kk, 0.0);
            for (std::size_t r = 0; r < kk; ++r) {
                for (std::size_t s = 0; s < kk; ++s) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < ne_sz; ++i) dot += delta[r][i] * p[s][i];
                    mat[r][s] = (r == s ? 1.0 : 0.0) + dot;
                }
                for (std::size_t i = 0; i < ne_sz; ++i) q[r] += delta[r][i] * z[i];
            }
            solve_dense(mat, q);
            for (std::size_t s = 0; s < kk; ++s) {
                for (std::size_t i = 0; i < ne_sz; ++i) z[i] -= q[s] * p[s][i];
            }
        }
    }

    z.resize(n_in);
    return z;
}

std::size_t ceil_half(std::size_t n) { return (n + 1) / 2; }

} // namespace

WaveletFilter filter_bank(WaveletName name) {
    WaveletFilter f;
    f.name = name;
    if (name == WaveletName::Haar) {
        const double r = 1.0 / std::sqrt(2.0);
        f.lowpass = {r, r};
    } else {
        const double s3 = std::sqrt(3.0);
        const double c = 1.0 / (4.0 * std::sqrt(2.0));
        f.lowpass = {c * (1.0 + s3), c * (3.0 + s3), c * (3.0 - s3), c * (1.0 - s3)};
    }
    const std::size_t taps = f.lowpass.size();
    f.highpass.resize(taps);
    for (std::size_t k = 0; k < taps; ++k) {
        double v = f.lowpass[taps - 1 - k];
        f.highpass[k] = (k % 2 == 0) ? v : -v;
    }
    return f;
}

DwtLevelResult dwt_level(const std::vector<double>& signal, const WaveletFilter& filter,
                         Extension extension) {
    if (signal.size() < 2) {
        throw TooShort("dwt level needs at least 2 samples, got " +
                       std::to_string(signal.size()));
    }
    const std::vector<double> x = evenize(signal);
    const auto ne = static_cast<std::int64_t>(x.size());
    const std::size_t m = x.size() / 2;
    const auto& h = filter.lowpass;
    const auto& g = filter.highpass;
    const std::size_t taps = h.size();
    // Center the analysis window: the extended signal starts taps/2 - 1
    // samples before the data. This keeps Haar causal and, unlike a fully
    // causal window, leaves the symmetric-mode operator invertible for
    // longer filters, which waverec relies on.
    const auto off = static_cast<std::int64_t>(taps / 2 - 1);

    DwtLevelResult out;
    out.approx.assign(m, 0.0);
    out.detail.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double a = 0.0;
        double d = 0.0;
        for (std::size_t j = 0; j < taps; ++j) {
            double v = x[map_index(static_cast<std::int64_t>(2 * k + j) - off, ne, extension)];
            a += h[j] * v;
            d += g[j] * v;
        }
        out.approx[k] = a;
        out.detail[k] = d;
    }
    return out;
}

DwtDecomposition wavedec(const TimeSeries& ts, const WaveletFilter& filter,
                         std::size_t levels, Extension extension) {
    if (levels < 1) {
        throw InvalidArgument("levels must be >= 1");
    }
    DwtDecomposition dec;
    dec.filter = filter;
    dec.levels = levels;
    dec.extension = extension;
    dec.original_n = ts.size();
    dec.dt = ts.dt;

    std::vector<double> current = ts.values;
    for (std::size_t l = 1; l <= levels; ++l) {
        if (current.size() < 2) {
            throw TooManyLevels("level " + std::to_string(l) + " input has " +
                                std::to_string(current.size()) + " samples, need >= 2");
        }
        DwtLevelResult r = dwt_level(current, filter, extension);
        dec.lengths.push_back(r.approx.size());
        dec.details.push_back(std::move(r.detail));
        current = std::move(r.approx);
    }
    dec.approx = std::move(current);
    return dec;
}

TimeSeries waverec(const DwtDecomposition& dec) {
    const std::size_t levels = dec.levels;
    if (levels == 0 || dec.details.size() != levels || dec.lengths.size() != levels) {
        throw InconsistentLengths("decomposition holds " +
                                  std::to_string(dec.details.size()) + " detail vectors and " +
                                  std::to_string(dec.lengths.size()) + " lengths for " +
                                  std::to_string(levels) + " levels");
    }
    std::size_t expect = dec.original_n;
    for (std::size_t l = 0; l < levels; ++l) {
        expect = ceil_half(expect);
        if (dec.lengths[l] != expect || dec.details[l].size() != expect) {
            throw InconsistentLengths("level " + std::to_string(l + 1) +
                                      " does not chain from original length " +
                                      std::to_string(dec.original_n));
        }
    }
    if (dec.approx.size() != dec.lengths.back()) {
        throw InconsistentLengths("approximation length " + std::to_string(dec.approx.size()) +
                                  " does not match final level length " +
                                  std::to_string(dec.lengths.back()));
    }

    std::vector<double> current = dec.approx;
    for (std::size_t l = levels; l-- > 0;) {
        const std::size_t n_in = (l == 0) ? dec.original_n : dec.lengths[l - 1];
        current = idwt_level(current, dec.details[l], dec.filter, dec.extension, n_in);
    }

    TimeSeries out;
    out.values = std::move(current);
    out.dt = dec.dt;
    return out;
}

std::vector<double> level_energy(const DwtDecomposition& dec) {
    std::vector<double> energy;
    energy.reserve(dec.levels + 1);
    for (const auto& d : dec.details) {
        double e = 0.0;
        for (double v : d) e += v * v;
        energy.push_back(e);
    }
    double e = 0.0;
    for (double v : dec.approx) e += v * v;
    energy.push_back(e);
    return energy;
}

} // namespace wsa
