#include "wsa/series.hpp"

#include "wsa/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wsa {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_value(const std::string& token, std::size_t line_no) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line_no, "not a number: '" + token + "'");
    if (!std::isfinite(v))
        throw NonFinite(line_no, "value is not finite: '" + token + "'");
    return v;
}

} // namespace

TimeSeries make_series(std::vector<double> values, double dt, std::string label) {
    if (values.size() < 2)
        throw TooShort("series needs at least 2 samples, got " + std::to_string(values.size()));
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidArgument("sample interval must be a positive finite number");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw NonFinite(i + 1, "sample " + std::to_string(i) + " is not finite");
    return TimeSeries{std::move(values), dt, std::move(label)};
}

TimeSeries load_csv(std::istream& in, double dt, std::string label) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        // `date,value` rows: everything before the last comma is the date.
        auto comma = t.find_last_of(',');
        std::string token = comma == std::string::npos ? t : trim(t.substr(comma + 1));
        if (token.empty())
            throw ParseError(line_no, "empty value field");
        values.push_back(parse_value(token, line_no));
    }
    if (values.size() < 2)
        throw TooShort("CSV has " + std::to_string(values.size()) + " samples, need at least 2");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidArgument("sample interval must be a positive finite number");
    return TimeSeries{std::move(values), dt, std::move(label)};
}

TimeSeries load_csv_file(const std::string& path, double dt, std::string label) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open input file '" + path + "'");
    return load_csv(in, dt, std::move(label));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const TimeSeries& ts) {
    for (double v : ts.values)
        out << format_double(v) << '\n';
}

void write_csv_file(const std::string& path, const TimeSeries& ts) {
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot open output file '" + path + "'");
    write_csv(out, ts);
}

SummaryStats summary_stats(const TimeSeries& ts) {
    SummaryStats st;
    st.n = ts.values.size();
    double sum = 0.0;
    st.min = ts.values.front();
    st.max = ts.values.front();
    for (double v : ts.values) {
        sum += v;
        st.min = std::min(st.min, v);
        st.max = std::max(st.max, v);
    }
    st.mean = sum / static_cast<double>(st.n);
    double acc = 0.0;
    for (double v : ts.values) {
        double d = v - st.mean;
        acc += d * d;
    }
    st.std_dev = std::sqrt(acc / static_cast<double>(st.n));
    return st;
}

TimeSeries demean(const TimeSeries& ts) {
    SummaryStats st = summary_stats(ts);
    TimeSeries out = ts;
    for (double& v : out.values)
        v -= st.mean;
    return out;
}

} // namespace wsa
