#include "wsa/report.hpp"

#include "wsa/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <string_view>
#include <vector>

namespace wsa {

namespace {

// Minimal JSON emitter. Keys stay in insertion order and every float is
// written with %.17g so reruns of the same configuration are byte-identical.
class JsonWriter {
public:
    std::string take() { return std::move(out_); }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(std::string_view k) {
        separate();
        quote(k);
        out_ += ": ";
        after_key_ = true;
    }

    void value(double v) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("report fields must be finite");
        }
        separate();
        out_ += format_double(v);
    }

    void value(std::uint64_t v) {
        separate();
        out_ += std::to_string(v);
    }

    void value(std::string_view s) {
        separate();
        quote(s);
    }

    void value(bool b) {
        separate();
        out_ += b ? "true" : "false";
    }

private:
    void open(char c) {
        separate();
        out_ += c;
        counts_.push_back(0);
    }

    void close(char c) {
        std::size_t children = counts_.back();
        counts_.pop_back();
        if (children > 0) {
            out_ += '\n';
            out_.append(2 * counts_.size(), ' ');
        }
        out_ += c;
    }

    void separate() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (counts_.empty()) return;
        if (counts_.back() > 0) out_ += ',';
        out_ += '\n';
        out_.append(2 * counts_.size(), ' ');
        ++counts_.back();
    }

    void quote(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\r': out_ += "\\r"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<std::size_t> counts_;
    bool after_key_ = false;
};

void write_number_array(JsonWriter& w, const std::vector<double>& values) {
    w.begin_array();
    for (double v : values) w.value(v);
    w.end_array();
}

void write_config(JsonWriter& w, const ReportConfig& cfg) {
    w.begin_object();
    w.key("command");
    w.value(std::string_view(cfg.command));
    w.key("input");
    w.value(std::string_view(cfg.input));
    if (!cfg.input2.empty()) {
        w.key("input2");
        w.value(std::string_view(cfg.input2));
    }
    w.key("dt");
    w.value(cfg.dt);
    w.key("levels");
    w.value(static_cast<std::uint64_t>(cfg.levels));
    w.key("wavelet");
    w.value(std::string_view(cfg.dwt_wavelet));
    w.key("extension");
    w.value(std::string_view(cfg.dwt_extension));
    w.key("cwt_wavelet");
    w.value(std::string_view(cfg.cwt_wavelet));
    w.key("omega0");
    w.value(cfg.omega0);
    w.key("dj");
    w.value(cfg.dj);
    if (cfg.command == "compare") {
        w.key("min_r2");
        w.value(cfg.min_r2);
        w.key("stride");
        w.value(static_cast<std::uint64_t>(cfg.stride));
    }
    w.key("out");
    w.value(std::string_view(cfg.out_dir));
    w.key("plots");
    w.value(cfg.plots);
    w.key("seed");
    w.value(cfg.seed);
    w.end_object();
}

void write_series(JsonWriter& w, const SeriesReport& s) {
    w.begin_object();
    w.key("label");
    w.value(std::string_view(s.label));
    w.key("n");
    w.value(static_cast<std::uint64_t>(s.n));
    w.key("dt");
    w.value(s.dt);

    w.key("summary");
    w.begin_object();
    w.key("n");
    w.value(static_cast<std::uint64_t>(s.stats.n));
    w.key("mean");
    w.value(s.stats.mean);
    w.key("std");
    w.value(s.stats.std_dev);
    w.key("min");
    w.value(s.stats.min);
    w.key("max");
    w.value(s.stats.max);
    w.end_object();

    w.key("fourier");
    w.begin_object();
    w.key("scatter_dispersion");
    w.value(s.scatter_dispersion);
    w.key("dominant_bin");
    w.value(static_cast<std::uint64_t>(s.dominant_bin));
    w.key("dominant_frequency_cycles_per_day");
    w.value(s.dominant_frequency);
    w.key("dominant_period_days");
    w.value(s.dominant_period);
    w.key("dominant_power");
    w.value(s.dominant_power);
    w.key("resolution_note");
    w.value(std::string_view(
        "periods are quantized to n*dt/k; no zero-padding or window applied"));
    w.end_object();

    w.key("dwt");
    w.begin_array();
    for (const auto& d : s.dwt) {
        w.begin_object();
        w.key("filter");
        w.value(std::string_view(d.filter));
        w.key("extension");
        w.value(std::string_view(d.extension));
        w.key("levels");
        w.value(static_cast<std::uint64_t>(d.levels));
        w.key("level_energy");
        write_number_array(w, d.level_energy);
        w.end_object();
    }
    w.end_array();

    w.key("cwt");
    w.begin_object();
    w.key("wavelet");
    w.value(std::string_view(s.cwt_wavelet));
    w.key("s0");
    w.value(s.s0);
    w.key("dj");
    w.value(s.dj);
    w.key("dominant_scales_days");
    write_number_array(w, s.dominant_scales);
    w.key("equivalent_periods_days");
    write_number_array(w, s.equivalent_periods);
    w.end_object();

    w.end_object();
}

} // namespace

std::string build_report_json(const ReportConfig& cfg, const std::string& generated_at,
                              const std::vector<SeriesReport>& series,
                              const CoherenceReport* coherence) {
    JsonWriter w;
    w.begin_object();
    w.key("tool");
    w.value(std::string_view(kToolName));
    w.key("version");
    w.value(std::string_view(kToolVersion));
    w.key("generated_at");
    w.value(std::string_view(generated_at));
    w.key("config");
    write_config(w, cfg);
    w.key("series");
    w.begin_array();
    for (const auto& s : series) write_series(w, s);
    w.end_array();
    if (coherence != nullptr) {
        w.key("coherence");
        w.begin_object();
        w.key("wavelet");
        w.value(std::string_view(coherence->wavelet));
        w.key("min_r2");
        w.value(coherence->min_r2);
        w.key("stride");
        w.value(static_cast<std::uint64_t>(coherence->stride));
        w.key("mean_phase_rad");
        w.value(coherence->mean_phase);
        w.key("concentration");
        w.value(coherence->concentration);
        w.key("mean_r2_in_coi");
        w.value(coherence->mean_r2_in_coi);
        w.key("high_r2_fraction_in_coi");
        w.value(coherence->high_r2_fraction_in_coi);
        w.end_object();
    }
    w.end_object();
    std::string text = w.take();
    text += '\n';
    return text;
}

std::string current_timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace wsa
