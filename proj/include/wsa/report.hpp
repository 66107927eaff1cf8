#pragma once

#include "wsa/series.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wsa {

inline constexpr const char* kToolName = "wsa";
inline constexpr const char* kToolVersion = "1.0.0";

/// Echo of everything that shaped a run; replaying these settings must
/// reproduce the report byte-for-byte (the timestamp aside).
struct ReportConfig {
    std::string command;   // "analyze" or "compare"
    std::string input;
    std::string input2;    // empty for analyze
    double dt = 1.0;
    std::size_t levels = 5;
    std::string dwt_wavelet = "both"; // haar | db4 | both
    std::string dwt_extension = "symmetric";
    std::string cwt_wavelet = "morlet";
    double omega0 = 6.0;
    double dj = 0.125;
    double min_r2 = 0.5;    // compare only
    std::size_t stride = 4; // compare only
    std::string out_dir = ".";
    bool plots = false;
    std::uint64_t seed = 0; // accepted for flag symmetry; analysis ignores it
};

struct DwtSummary {
    std::string filter; // "haar" | "db4"
    std::string extension;
    std::size_t levels = 0;
    std::vector<double> level_energy; // details 1..L then approx
};

struct SeriesReport {
    std::string label;
    std::size_t n = 0;
    double dt = 1.0;
    SummaryStats stats;
    double scatter_dispersion = 0.0;
    std::size_t dominant_bin = 0;
    double dominant_frequency = 0.0; // cycles/day
    double dominant_period = 0.0;    // days
    double dominant_power = 0.0;
    std::vector<DwtSummary> dwt;
    std::string cwt_wavelet;
    double s0 = 0.0;
    double dj = 0.0;
    std::vector<double> dominant_scales;     // days
    std::vector<double> equivalent_periods;  // days, same order
};

struct CoherenceReport {
    std::string wavelet; // always "cgau2" from the CLI
    double min_r2 = 0.5;
    std::size_t stride = 4;
    double mean_phase = 0.0;
    double concentration = 0.0;
    double mean_r2_in_coi = 0.0;
    double high_r2_fraction_in_coi = 0.0; // share of in-cone cells >= min_r2
};

/// Renders the full report document. `coherence` may be null (analyze runs).
/// `generated_at` is the only field tests exclude from byte comparisons.
std::string build_report_json(const ReportConfig& cfg, const std::string& generated_at,
                              const std::vector<SeriesReport>& series,
                              const CoherenceReport* coherence);

/// RFC 3339 UTC timestamp of the current moment, second resolution.
std::string current_timestamp_utc();

} // namespace wsa
