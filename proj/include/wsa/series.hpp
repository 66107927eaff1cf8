#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace wsa {

/// Uniformly sampled real-valued series. `dt` is the sample interval in
/// days; no per-sample timestamps are stored. Values are unit-agnostic.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    std::string label;

    std::size_t size() const noexcept { return values.size(); }
};

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0; // population convention (divide by n)
    double min = 0.0;
    double max = 0.0;
};

/// Validates and wraps a value vector: length >= 2 (TooShort), all values
/// finite (NonFinite), dt > 0 (InvalidArgument).
TimeSeries make_series(std::vector<double> values, double dt, std::string label = {});

/// Parses a CSV stream. Each non-empty, non-comment (`#`) line is either
/// `value` or `date,value`; the date column is ignored. Line numbers in
/// errors are 1-based positions in the file, counting skipped lines.
TimeSeries load_csv(std::istream& in, double dt, std::string label = {});
TimeSeries load_csv_file(const std::string& path, double dt, std::string label = {});

/// Canonical writer: one value per line, 17 significant digits, '\n'
/// terminated. load_csv(write_csv(ts)) round-trips bitwise.
void write_csv(std::ostream& out, const TimeSeries& ts);
void write_csv_file(const std::string& path, const TimeSeries& ts);

SummaryStats summary_stats(const TimeSeries& ts);

/// Subtracts the mean; length, dt and label are preserved.
TimeSeries demean(const TimeSeries& ts);

/// Fixed-format double -> text used by the canonical CSV writer and the
/// JSON report: %.17g, enough digits to round-trip any double.
std::string format_double(double v);

} // namespace wsa
