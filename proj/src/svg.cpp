#include "wsa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wsa {

namespace {

constexpr double kPanelW = 430.0;
constexpr double kPanelH = 350.0;
constexpr double kLeft = 58.0;
constexpr double kRight = 14.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 42.0;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string svg_open(double w, double h) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) +
                    "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) +
                    "\">\n";
    s += "<style>text{font-family:sans-serif;font-size:11px;fill:#222222;}"
         ".t{font-size:13px;font-weight:bold;}</style>\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    return s;
}

// Maps a value range onto panel pixels; y grows upward in value space.
struct Frame {
    double ox = 0.0; // panel origin in the document
    double vx0 = 0.0, vx1 = 1.0, vy0 = 0.0, vy1 = 1.0;

    double plot_x() const { return ox + kLeft; }
    double plot_y() const { return kTop; }
    double plot_w() const { return kPanelW - kLeft - kRight; }
    double plot_h() const { return kPanelH - kTop - kBottom; }

    double px(double v) const {
        return plot_x() + (v - vx0) / (vx1 - vx0) * plot_w();
    }
    double py(double v) const {
        return plot_y() + (vy1 - v) / (vy1 - vy0) * plot_h();
    }
};

void pad_range(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

void draw_axes(std::string& s, const Frame& f, const std::string& title,
               const std::string& xlabel, const std::string& ylabel) {
    double x0 = f.plot_x();
    double y0 = f.plot_y();
    double w = f.plot_w();
    double h = f.plot_h();
    s += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y0) + "\" width=\"" + fmt(w) +
         "\" height=\"" + fmt(h) + "\" fill=\"none\" stroke=\"#555555\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double tx = f.vx0 + (f.vx1 - f.vx0) * i / 4.0;
        double ty = f.vy0 + (f.vy1 - f.vy0) * i / 4.0;
        double xp = f.px(tx);
        double yp = f.py(ty);
        s += "<line x1=\"" + fmt(xp) + "\" y1=\"" + fmt(y0 + h) + "\" x2=\"" + fmt(xp) +
             "\" y2=\"" + fmt(y0 + h + 4) + "\" stroke=\"#555555\"/>\n";
        s += "<text x=\"" + fmt(xp) + "\" y=\"" + fmt(y0 + h + 16) +
             "\" text-anchor=\"middle\">" + fmt(tx) + "</text>\n";
        s += "<line x1=\"" + fmt(x0 - 4) + "\" y1=\"" + fmt(yp) + "\" x2=\"" + fmt(x0) +
             "\" y2=\"" + fmt(yp) + "\" stroke=\"#555555\"/>\n";
        s += "<text x=\"" + fmt(x0 - 7) + "\" y=\"" + fmt(yp + 4) +
             "\" text-anchor=\"end\">" + fmt(ty) + "</text>\n";
    }
    s += "<text class=\"t\" x=\"" + fmt(f.ox + kPanelW / 2) + "\" y=\"18\" "
         "text-anchor=\"middle\">" + esc(title) + "</text>\n";
    s += "<text x=\"" + fmt(x0 + w / 2) + "\" y=\"" + fmt(y0 + h + 32) +
         "\" text-anchor=\"middle\">" + esc(xlabel) + "</text>\n";
    s += "<text x=\"" + fmt(f.ox + 14) + "\" y=\"" + fmt(y0 + h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 " + fmt(f.ox + 14) + " " +
         fmt(y0 + h / 2) + ")\">" + esc(ylabel) + "</text>\n";
}

// Five-anchor viridis ramp, linearly interpolated.
std::string heat_color(double v) {
    static const double anchors[5][3] = {{68, 1, 84},
                                         {59, 82, 139},
                                         {33, 145, 140},
                                         {94, 201, 98},
                                         {253, 231, 37}};
    v = std::clamp(v, 0.0, 1.0);
    double pos = v * 4.0;
    int i = std::min(3, static_cast<int>(pos));
    double frac = pos - i;
    char buf[10];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(anchors[i][0] +
                                               frac * (anchors[i + 1][0] - anchors[i][0]))),
                  static_cast<int>(std::lround(anchors[i][1] +
                                               frac * (anchors[i + 1][1] - anchors[i][1]))),
                  static_cast<int>(std::lround(anchors[i][2] +
                                               frac * (anchors[i + 1][2] - anchors[i][2]))));
    return buf;
}

// Shades the region outside the cone of influence and draws its boundary.
// Row r spans vertically [top + r b, top + (r+1) b]; the boundary at each
// time column sits at the fractional row of the max trusted scale.
void draw_coi(std::string& s, const Frame& f, const ScaleGrid& grid,
              const ConeOfInfluence& cone, std::size_t n) {
    const double band = f.plot_h() / static_cast<double>(grid.scales.size());
    const double cell = f.plot_w() / static_cast<double>(n);
    auto y_of_scale = [&](double scale) {
        double j = scale <= 0.0 ? -0.5
                                : std::log2(scale / grid.s0) / grid.dj;
        double y = f.plot_y() + (j + 0.5) * band;
        return std::clamp(y, f.plot_y(), f.plot_y() + f.plot_h());
    };
    std::string pts;
    for (std::size_t t = 0; t < n; ++t) {
        double x = f.plot_x() + (static_cast<double>(t) + 0.5) * cell;
        double y = y_of_scale(cone.max_trusted_scale[t]);
        pts += fmt(x) + "," + fmt(y) + " ";
    }
    double bot = f.plot_y() + f.plot_h();
    s += "<polygon points=\"" + fmt(f.plot_x()) + "," +
         fmt(y_of_scale(cone.max_trusted_scale[0])) + " " + pts + fmt(f.plot_x() + f.plot_w()) +
         "," + fmt(y_of_scale(cone.max_trusted_scale[n - 1])) + " " +
         fmt(f.plot_x() + f.plot_w()) + "," + fmt(bot) + " " + fmt(f.plot_x()) + "," +
         fmt(bot) + "\" fill=\"#ffffff\" fill-opacity=\"0.55\"/>\n";
    s += "<polyline points=\"" + pts +
         "\" fill=\"none\" stroke=\"#000000\" stroke-dasharray=\"4 3\"/>\n";
}

void scale_ticks(std::string& s, const Frame& f, const ScaleGrid& grid) {
    const std::size_t rows = grid.scales.size();
    const double band = f.plot_h() / static_cast<double>(rows);
    const std::size_t step = std::max<std::size_t>(1, rows / 6);
    for (std::size_t r = 0; r < rows; r += step) {
        double y = f.plot_y() + (static_cast<double>(r) + 0.5) * band;
        s += "<line x1=\"" + fmt(f.plot_x() - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
             fmt(f.plot_x()) + "\" y2=\"" + fmt(y) + "\" stroke=\"#555555\"/>\n";
        s += "<text x=\"" + fmt(f.plot_x() - 7) + "\" y=\"" + fmt(y + 4) +
             "\" text-anchor=\"end\">" + fmt(grid.scales[r]) + "</text>\n";
    }
}

void heat_panel(std::string& s, const Frame& f, const Matrix<double>& values, double vmax,
                const ScaleGrid& grid, const ConeOfInfluence* cone, const std::string& title,
                const std::string& xlabel) {
    const std::size_t rows = values.rows();
    const std::size_t cols = values.cols();
    const double band = f.plot_h() / static_cast<double>(rows);
    const double cell = f.plot_w() / static_cast<double>(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double v = vmax > 0.0 ? values(r, c) / vmax : 0.0;
            s += "<rect x=\"" + fmt(f.plot_x() + c * cell) + "\" y=\"" +
                 fmt(f.plot_y() + r * band) + "\" width=\"" + fmt(cell + 0.3) +
                 "\" height=\"" + fmt(band + 0.3) + "\" fill=\"" + heat_color(v) + "\"/>\n";
        }
    }
    if (cone != nullptr) draw_coi(s, f, grid, *cone, cols);
    s += "<rect x=\"" + fmt(f.plot_x()) + "\" y=\"" + fmt(f.plot_y()) + "\" width=\"" +
         fmt(f.plot_w()) + "\" height=\"" + fmt(f.plot_h()) +
         "\" fill=\"none\" stroke=\"#555555\"/>\n";
    scale_ticks(s, f, grid);
    const std::size_t tick_step = std::max<std::size_t>(1, cols / 5);
    for (std::size_t c = 0; c < cols; c += tick_step) {
        double x = f.plot_x() + (static_cast<double>(c) + 0.5) * cell;
        s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(f.plot_y() + f.plot_h() + 16) +
             "\" text-anchor=\"middle\">" + fmt(static_cast<double>(c)) + "</text>\n";
    }
    s += "<text class=\"t\" x=\"" + fmt(f.ox + kPanelW / 2) +
         "\" y=\"18\" text-anchor=\"middle\">" + esc(title) + "</text>\n";
    s += "<text x=\"" + fmt(f.plot_x() + f.plot_w() / 2) + "\" y=\"" +
         fmt(f.plot_y() + f.plot_h() + 32) + "\" text-anchor=\"middle\">" + esc(xlabel) +
         "</text>\n";
    s += "<text x=\"" + fmt(f.ox + 14) + "\" y=\"" + fmt(f.plot_y() + f.plot_h() / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 " + fmt(f.ox + 14) + " " +
         fmt(f.plot_y() + f.plot_h() / 2) + ")\">scale (days)</text>\n";
}

} // namespace

std::string svg_scatter(
    const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>&
        panels) {
    std::string s = svg_open(kPanelW * panels.size(), kPanelH);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& pts = panels[p].second;
        double lim = 1.0;
        for (const auto& [re, im] : pts) {
            lim = std::max({lim, std::abs(re), std::abs(im)});
        }
        lim *= 1.08;
        Frame f;
        f.ox = kPanelW * p;
        f.vx0 = -lim;
        f.vx1 = lim;
        f.vy0 = -lim;
        f.vy1 = lim;
        draw_axes(s, f, "Fourier coefficients: " + panels[p].first, "real part",
                  "imaginary part");
        for (const auto& [re, im] : pts) {
            s += "<circle cx=\"" + fmt(f.px(re)) + "\" cy=\"" + fmt(f.py(im)) +
                 "\" r=\"2.2\" fill=\"#1f6fb4\" fill-opacity=\"0.75\"/>\n";
        }
    }
    s += "</svg>\n";
    return s;
}

std::string svg_periodogram(
    const std::vector<std::pair<std::string, Periodogram>>& panels) {
    std::string s = svg_open(kPanelW * panels.size(), kPanelH);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Periodogram& pg = panels[p].second;
        double fmax = pg.freqs.back();
        double pmax = 0.0;
        for (std::size_t k = 1; k < pg.power.size(); ++k) pmax = std::max(pmax, pg.power[k]);
        double lo = 0.0;
        double hi = pmax;
        pad_range(lo, hi);
        Frame f;
        f.ox = kPanelW * p;
        f.vx0 = 0.0;
        f.vx1 = fmax > 0.0 ? fmax : 1.0;
        f.vy0 = 0.0;
        f.vy1 = hi;
        draw_axes(s, f, "Periodogram: " + panels[p].first, "frequency (cycles/day)",
                  "power");
        std::string pts;
        for (std::size_t k = 1; k < pg.power.size(); ++k) {
            pts += fmt(f.px(pg.freqs[k])) + "," + fmt(f.py(pg.power[k])) + " ";
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#1f6fb4\" "
             "stroke-width=\"1.5\"/>\n";
        double mx = f.px(pg.freqs[pg.dominant_bin]);
        double my = f.py(pg.power[pg.dominant_bin]);
        s += "<circle cx=\"" + fmt(mx) + "\" cy=\"" + fmt(my) +
             "\" r=\"4\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
        s += "<text x=\"" + fmt(mx + 8) + "\" y=\"" + fmt(my - 6) + "\" fill=\"#c0392b\">" +
             fmt(pg.dominant_period) + " d</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string svg_dwt_levels(
    const std::vector<std::pair<std::string, DwtDecomposition>>& panels) {
    std::string s = svg_open(kPanelW * panels.size(), kPanelH);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const DwtDecomposition& dec = panels[p].second;
        Frame f;
        f.ox = kPanelW * p;
        s += "<text class=\"t\" x=\"" + fmt(f.ox + kPanelW / 2) +
             "\" y=\"18\" text-anchor=\"middle\">" + esc(panels[p].first) + "</text>\n";

        // Approximation on top, then coarsest to finest detail below.
        std::vector<std::pair<std::string, const std::vector<double>*>> traces;
        traces.emplace_back("a" + std::to_string(dec.levels), &dec.approx);
        for (std::size_t l = dec.levels; l-- > 0;) {
            traces.emplace_back("d" + std::to_string(l + 1), &dec.details[l]);
        }
        const double band = f.plot_h() / static_cast<double>(traces.size());
        for (std::size_t i = 0; i < traces.size(); ++i) {
            const auto& vec = *traces[i].second;
            double amp = 1e-12;
            for (double v : vec) amp = std::max(amp, std::abs(v));
            const double mid = f.plot_y() + (static_cast<double>(i) + 0.5) * band;
            const double half = 0.42 * band;
            std::string pts;
            for (std::size_t k = 0; k < vec.size(); ++k) {
                double x = f.plot_x() +
                           f.plot_w() * (vec.size() > 1
                                             ? static_cast<double>(k) /
                                                   static_cast<double>(vec.size() - 1)
                                             : 0.5);
                pts += fmt(x) + "," + fmt(mid - vec[k] / amp * half) + " ";
            }
            s += "<line x1=\"" + fmt(f.plot_x()) + "\" y1=\"" + fmt(mid) + "\" x2=\"" +
                 fmt(f.plot_x() + f.plot_w()) + "\" y2=\"" + fmt(mid) +
                 "\" stroke=\"#dddddd\"/>\n";
            s += "<polyline points=\"" + pts +
                 "\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1\"/>\n";
            s += "<text x=\"" + fmt(f.plot_x() - 7) + "\" y=\"" + fmt(mid + 4) +
                 "\" text-anchor=\"end\">" + traces[i].first + "</text>\n";
        }
        s += "<rect x=\"" + fmt(f.plot_x()) + "\" y=\"" + fmt(f.plot_y()) + "\" width=\"" +
             fmt(f.plot_w()) + "\" height=\"" + fmt(f.plot_h()) +
             "\" fill=\"none\" stroke=\"#555555\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string svg_scalogram(const std::vector<ScalogramPanel>& panels) {
    std::string s = svg_open(kPanelW * panels.size(), kPanelH);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        Frame f;
        f.ox = kPanelW * p;
        double vmax = 0.0;
        for (double v : panel.scalogram->percent.data()) vmax = std::max(vmax, v);
        heat_panel(s, f, panel.scalogram->percent, vmax, panel.field->grid, panel.cone,
                   "Scalogram (% energy): " + panel.label, "time (samples)");
    }
    s += "</svg>\n";
    return s;
}

std::string svg_coherence(const CoherenceField& cf, const std::vector<PhaseArrow>& arrows,
                          const std::string& title) {
    std::string s = svg_open(kPanelW, kPanelH);
    Frame f;
    heat_panel(s, f, cf.r2, 1.0, cf.grid, &cf.coi, title, "time (samples)");
    const double band = f.plot_h() / static_cast<double>(cf.r2.rows());
    const double cell = f.plot_w() / static_cast<double>(cf.r2.cols());
    for (const auto& a : arrows) {
        double x = f.plot_x() + (static_cast<double>(a.t_index) + 0.5) * cell;
        double y = f.plot_y() + (static_cast<double>(a.s_index) + 0.5) * band;
        double dx = 6.0 * std::cos(a.angle);
        double dy = -6.0 * std::sin(a.angle);
        double hx = x + dx;
        double hy = y + dy;
        s += "<line x1=\"" + fmt(x - dx) + "\" y1=\"" + fmt(y - dy) + "\" x2=\"" + fmt(hx) +
             "\" y2=\"" + fmt(hy) + "\" stroke=\"#000000\" stroke-width=\"1.2\"/>\n";
        for (double side : {2.6, -2.6}) {
            double ang = a.angle + side;
            s += "<line x1=\"" + fmt(hx) + "\" y1=\"" + fmt(hy) + "\" x2=\"" +
                 fmt(hx + 3.5 * std::cos(ang)) + "\" y2=\"" + fmt(hy - 3.5 * std::sin(ang)) +
                 "\" stroke=\"#000000\" stroke-width=\"1.2\"/>\n";
        }
    }
    s += "</svg>\n";
    return s;
}

} // namespace wsa
