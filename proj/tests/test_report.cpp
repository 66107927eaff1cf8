#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schema_check.hpp"
#include "wsa/errors.hpp"
#include "wsa/report.hpp"

#include <fstream>
#include <regex>
#include <string>

using nlohmann::json;

namespace {

wsa::ReportConfig demo_config(bool compare) {
    wsa::ReportConfig cfg;
    cfg.command = compare ? "compare" : "analyze";
    cfg.input = "a.csv";
    if (compare) cfg.input2 = "b.csv";
    cfg.out_dir = "out";
    return cfg;
}

wsa::SeriesReport demo_series() {
    wsa::SeriesReport s;
    s.label = "a";
    s.n = 61;
    s.dt = 1.0;
    s.stats = {61, 1.5, 0.75, -0.25, 3.25};
    s.scatter_dispersion = 0.42;
    s.dominant_bin = 3;
    s.dominant_frequency = 3.0 / 61.0;
    s.dominant_period = 61.0 / 3.0;
    s.dominant_power = 123.5;
    s.dwt.push_back({"haar", "symmetric", 5, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}});
    s.dwt.push_back({"db4", "symmetric", 5, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}});
    s.cwt_wavelet = "morlet";
    s.s0 = 2.0;
    s.dj = 0.125;
    s.dominant_scales = {16.0, 4.0};
    s.equivalent_periods = {16.5, 4.1};
    return s;
}

wsa::CoherenceReport demo_coherence() {
    wsa::CoherenceReport c;
    c.wavelet = "cgau2";
    c.min_r2 = 0.5;
    c.stride = 4;
    c.mean_phase = 3.1;
    c.concentration = 0.9;
    c.mean_r2_in_coi = 0.8;
    c.high_r2_fraction_in_coi = 0.75;
    return c;
}

json load_schema() {
    std::ifstream in(WSA_SCHEMA_PATH);
    REQUIRE(in.good());
    return json::parse(in);
}

} // namespace

TEST_CASE("analyze report parses and validates against the shipped schema") {
    std::string text = wsa::build_report_json(demo_config(false), "2026-01-02T03:04:05Z",
                                              {demo_series()}, nullptr);
    json doc = json::parse(text);
    auto errors = schemacheck::validate_report(load_schema(), doc);
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());
    CHECK(doc["tool"] == "wsa");
    CHECK(!doc.contains("coherence"));
    CHECK(!doc["config"].contains("min_r2"));
}

TEST_CASE("compare report carries the coherence block and validates") {
    auto coh = demo_coherence();
    auto s1 = demo_series();
    auto s2 = demo_series();
    s2.label = "b";
    std::string text = wsa::build_report_json(demo_config(true), "2026-01-02T03:04:05Z",
                                              {s1, s2}, &coh);
    json doc = json::parse(text);
    auto errors = schemacheck::validate_report(load_schema(), doc);
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());
    CHECK(doc["series"].size() == 2);
    CHECK(doc["coherence"]["wavelet"] == "cgau2");
    CHECK(doc["config"]["min_r2"] == 0.5);
    CHECK(doc["config"]["stride"] == 4);
}

TEST_CASE("floats are emitted with full round-trip precision") {
    auto s = demo_series();
    s.stats.mean = 1.0 / 3.0;
    s.dominant_power = 1e-17;
    s.scatter_dispersion = 123456789.123456789;
    std::string text =
        wsa::build_report_json(demo_config(false), "2026-01-02T03:04:05Z", {s}, nullptr);
    CHECK(text.find("0.33333333333333331") != std::string::npos);

    json doc = json::parse(text);
    CHECK(doc["series"][0]["summary"]["mean"].get<double>() == 1.0 / 3.0);
    CHECK(doc["series"][0]["fourier"]["dominant_power"].get<double>() == 1e-17);
    CHECK(doc["series"][0]["fourier"]["scatter_dispersion"].get<double>() ==
          123456789.123456789);
}

TEST_CASE("rendering is deterministic") {
    auto text1 = wsa::build_report_json(demo_config(true), "2026-01-02T03:04:05Z",
                                        {demo_series()}, nullptr);
    auto text2 = wsa::build_report_json(demo_config(true), "2026-01-02T03:04:05Z",
                                        {demo_series()}, nullptr);
    CHECK(text1 == text2);
    CHECK(text1.back() == '\n');
}

TEST_CASE("non-finite values are rejected rather than emitted") {
    auto s = demo_series();
    s.dominant_power = std::nan("");
    CHECK_THROWS_AS(wsa::build_report_json(demo_config(false), "t", {s}, nullptr),
                    wsa::InvalidArgument);
    s.dominant_power = HUGE_VAL;
    CHECK_THROWS_AS(wsa::build_report_json(demo_config(false), "t", {s}, nullptr),
                    wsa::InvalidArgument);
}

TEST_CASE("strings are escaped so output stays parseable") {
    auto s = demo_series();
    s.label = "we\"ird\\lab\nel\t";
    std::string text =
        wsa::build_report_json(demo_config(false), "2026-01-02T03:04:05Z", {s}, nullptr);
    json doc = json::parse(text);
    CHECK(doc["series"][0]["label"].get<std::string>() == s.label);
}

TEST_CASE("timestamp helper emits RFC 3339 UTC") {
    std::string ts = wsa::current_timestamp_utc();
    std::regex re("^[0-9]{4}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}Z$");
    CHECK(std::regex_match(ts, re));
}

TEST_CASE("top-level key order is stable") {
    std::string text = wsa::build_report_json(demo_config(true), "t", {demo_series()},
                                              nullptr);
    auto p1 = text.find("\"tool\"");
    auto p2 = text.find("\"version\"");
    auto p3 = text.find("\"generated_at\"");
    auto p4 = text.find("\"config\"");
    auto p5 = text.find("\"series\"");
    CHECK(p1 < p2);
    CHECK(p2 < p3);
    CHECK(p3 < p4);
    CHECK(p4 < p5);
}
