#include "wsa/coherence.hpp"
#include "wsa/cwt.hpp"
#include "wsa/dwt.hpp"
#include "wsa/errors.hpp"
#include "wsa/fourier.hpp"
#include "wsa/report.hpp"
#include "wsa/series.hpp"
#include "wsa/svg.hpp"
#include "wsa/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw wsa::InvalidArgument("cannot open output file '" + path.string() + "'");
    }
    out << content;
}

std::string series_label(const std::string& path) {
    std::string stem = fs::path(path).stem().string();
    return stem.empty() ? path : stem;
}

wsa::WaveletKind parse_cwt_kind(const std::string& name) {
    return name == "cgau2" ? wsa::WaveletKind::Cgau2 : wsa::WaveletKind::Morlet;
}

// Everything one series contributes to the report and the plots.
struct SeriesArtifacts {
    wsa::TimeSeries ts;
    wsa::FourierSpectrum spectrum;
    wsa::Periodogram pg;
    std::vector<wsa::DwtDecomposition> decs;
    wsa::CwtField field;
    wsa::Scalogram sg;
    wsa::ConeOfInfluence cone;
    wsa::SeriesReport report;
};

SeriesArtifacts analyze_series(const std::string& path, const wsa::ReportConfig& cfg) {
    SeriesArtifacts art;
    art.ts = wsa::load_csv_file(path, cfg.dt, series_label(path));

    art.spectrum = wsa::fft(art.ts);
    art.pg = wsa::periodogram(art.spectrum);
    double dispersion = wsa::scatter_dispersion(art.spectrum);

    std::vector<wsa::WaveletName> filters;
    if (cfg.dwt_wavelet == "haar" || cfg.dwt_wavelet == "both") {
        filters.push_back(wsa::WaveletName::Haar);
    }
    if (cfg.dwt_wavelet == "db4" || cfg.dwt_wavelet == "both") {
        filters.push_back(wsa::WaveletName::Db4);
    }
    for (wsa::WaveletName name : filters) {
        art.decs.push_back(wsa::wavedec(art.ts, wsa::filter_bank(name), cfg.levels,
                                        wsa::Extension::Symmetric));
    }

    wsa::MotherWavelet w = wsa::make_wavelet(parse_cwt_kind(cfg.cwt_wavelet), cfg.omega0);
    const double s0 = 2.0 * cfg.dt;
    wsa::ScaleGrid grid = wsa::make_scale_grid(art.ts.size(), cfg.dt, cfg.dj, s0);
    art.field = wsa::cwt(art.ts, w, grid);
    art.sg = wsa::scalogram(art.field);
    art.cone = wsa::coi(art.ts.size(), cfg.dt, w);

    wsa::SeriesReport& rep = art.report;
    rep.label = art.ts.label;
    rep.n = art.ts.size();
    rep.dt = cfg.dt;
    rep.stats = wsa::summary_stats(art.ts);
    rep.scatter_dispersion = dispersion;
    rep.dominant_bin = art.pg.dominant_bin;
    rep.dominant_frequency = art.pg.freqs[art.pg.dominant_bin];
    rep.dominant_period = art.pg.dominant_period;
    rep.dominant_power = art.pg.power[art.pg.dominant_bin];
    for (const auto& dec : art.decs) {
        wsa::DwtSummary ds;
        ds.filter = dec.filter.name == wsa::WaveletName::Haar ? "haar" : "db4";
        ds.extension = "symmetric";
        ds.levels = dec.levels;
        ds.level_energy = wsa::level_energy(dec);
        rep.dwt.push_back(std::move(ds));
    }
    rep.cwt_wavelet = cfg.cwt_wavelet;
    rep.s0 = s0;
    rep.dj = cfg.dj;
    rep.dominant_scales = art.sg.dominant_scales;
    for (double s : art.sg.dominant_scales) {
        rep.equivalent_periods.push_back(wsa::scale_to_period(s, w));
    }
    return art;
}

void write_series_plots(const fs::path& dir, const std::vector<SeriesArtifacts>& arts) {
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> scatter;
    std::vector<std::pair<std::string, wsa::Periodogram>> pgs;
    std::vector<std::pair<std::string, wsa::DwtDecomposition>> decs;
    std::vector<wsa::ScalogramPanel> sgs;
    for (const auto& art : arts) {
        scatter.emplace_back(art.report.label, wsa::coefficient_scatter(art.spectrum));
        pgs.emplace_back(art.report.label, art.pg);
        for (const auto& dec : art.decs) {
            std::string filter =
                dec.filter.name == wsa::WaveletName::Haar ? "haar" : "db4";
            decs.emplace_back(art.report.label + " (" + filter + ")", dec);
        }
        sgs.push_back({art.report.label, &art.sg, &art.field, &art.cone});
    }
    write_text_file(dir / "scatter.svg", wsa::svg_scatter(scatter));
    write_text_file(dir / "periodogram.svg", wsa::svg_periodogram(pgs));
    write_text_file(dir / "dwt_levels.svg", wsa::svg_dwt_levels(decs));
    write_text_file(dir / "scalogram.svg", wsa::svg_scalogram(sgs));
}

int run_pipeline(wsa::ReportConfig cfg) {
    const bool compare = cfg.command == "compare";
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    std::vector<SeriesArtifacts> arts;
    arts.push_back(analyze_series(cfg.input, cfg));
    if (compare) {
        arts.push_back(analyze_series(cfg.input2, cfg));
    }

    std::vector<wsa::SeriesReport> series_reports;
    for (const auto& art : arts) series_reports.push_back(art.report);

    wsa::CoherenceReport coh;
    std::vector<wsa::PhaseArrow> arrows;
    wsa::CoherenceField cf;
    if (compare) {
        wsa::MotherWavelet w = wsa::make_wavelet(wsa::WaveletKind::Cgau2);
        const wsa::TimeSeries& x = arts[0].ts;
        const wsa::TimeSeries& y = arts[1].ts;
        if (x.size() != y.size()) {
            throw wsa::LengthMismatch("series lengths " + std::to_string(x.size()) +
                                      " and " + std::to_string(y.size()) + " differ");
        }
        wsa::ScaleGrid grid = wsa::make_scale_grid(x.size(), cfg.dt, cfg.dj, 2.0 * cfg.dt);
        cf = wsa::wavelet_coherence(x, y, w, grid);
        wsa::MeanPhase mp = wsa::mean_phase_in_coi(cf, cfg.min_r2);

        std::size_t in_coi = 0;
        std::size_t high = 0;
        double r2_sum = 0.0;
        for (std::size_t r = 0; r < cf.r2.rows(); ++r) {
            for (std::size_t c = 0; c < cf.r2.cols(); ++c) {
                if (cf.grid.scales[r] > cf.coi.max_trusted_scale[c]) continue;
                ++in_coi;
                r2_sum += cf.r2(r, c);
                if (cf.r2(r, c) >= cfg.min_r2) ++high;
            }
        }
        coh.wavelet = "cgau2";
        coh.min_r2 = cfg.min_r2;
        coh.stride = cfg.stride;
        coh.mean_phase = mp.angle;
        coh.concentration = mp.concentration;
        coh.mean_r2_in_coi = in_coi > 0 ? r2_sum / static_cast<double>(in_coi) : 0.0;
        coh.high_r2_fraction_in_coi =
            in_coi > 0 ? static_cast<double>(high) / static_cast<double>(in_coi) : 0.0;
        arrows = wsa::phase_arrows(cf, cfg.stride, cfg.stride, cfg.min_r2);
    }

    std::string json = wsa::build_report_json(cfg, wsa::current_timestamp_utc(),
                                              series_reports, compare ? &coh : nullptr);
    write_text_file(dir / "report.json", json);

    if (cfg.plots) {
        write_series_plots(dir, arts);
        if (compare) {
            std::string title = "Wavelet coherence: " + arts[0].report.label + " vs " +
                                arts[1].report.label;
            write_text_file(dir / "coherence.svg", wsa::svg_coherence(cf, arrows, title));
        }
    }
    return 0;
}

struct SynthOptions {
    std::size_t n = 0;
    double dt = 1.0;
    std::vector<double> periods;
    std::vector<double> amps;
    std::vector<double> phases;
    double offset = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string out = "synth.csv";
};

int run_synth(const SynthOptions& opt) {
    std::vector<wsa::SineComponent> components;
    for (std::size_t i = 0; i < opt.periods.size(); ++i) {
        wsa::SineComponent c;
        c.period = opt.periods[i];
        c.amplitude = opt.amps.empty() ? 1.0 : opt.amps[i];
        c.phase = opt.phases.empty() ? 0.0 : opt.phases[i];
        components.push_back(c);
    }
    wsa::TimeSeries ts = wsa::generate(opt.n, opt.dt, components, opt.offset, opt.noise,
                                       opt.seed, series_label(opt.out));
    wsa::write_csv_file(opt.out, ts);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral and wavelet comparison pipeline for uniformly sampled series"};
    app.require_subcommand(1);

    wsa::ReportConfig cfg;
    SynthOptions synth;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Run the full single-series pipeline and write report.json");
    CLI::App* compare = app.add_subcommand(
        "compare", "Analyze two series and add their wavelet coherence");
    for (CLI::App* sub : {analyze, compare}) {
        sub->add_option("--input", cfg.input, "Input CSV (value or date,value per line)")
            ->required();
        sub->add_option("--dt", cfg.dt, "Sample interval in days")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--levels", cfg.levels, "Wavelet decomposition depth")
            ->check(CLI::Range(std::size_t{1}, std::size_t{64}))
            ->capture_default_str();
        sub->add_option("--wavelet", cfg.dwt_wavelet, "Decomposition filter")
            ->check(CLI::IsMember({"haar", "db4", "both"}))
            ->capture_default_str();
        sub->add_option("--cwt-wavelet", cfg.cwt_wavelet, "Scalogram mother wavelet")
            ->check(CLI::IsMember({"morlet", "cgau2"}))
            ->capture_default_str();
        sub->add_option("--omega0", cfg.omega0, "Morlet center frequency")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--dj", cfg.dj, "Scale resolution (octaves^-1)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
        sub->add_flag("--plots", cfg.plots, "Also write SVG plots");
        sub->add_option("--seed", cfg.seed,
                        "Accepted for flag symmetry with synth; analysis ignores it")
            ->capture_default_str();
    }
    compare->add_option("--input2", cfg.input2, "Second input CSV")->required();
    compare->add_option("--min-r2", cfg.min_r2, "Coherence mask threshold")
        ->check(CLI::Range(0.0, 0.999999))
        ->capture_default_str();
    compare->add_option("--stride", cfg.stride, "Phase-arrow subsampling stride")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
        ->capture_default_str();

    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Generate a deterministic synthetic CSV");
    synth_cmd->add_option("--n", synth.n, "Number of samples")->required();
    synth_cmd->add_option("--dt", synth.dt, "Sample interval in days")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--period", synth.periods, "Component period in days (repeatable)");
    synth_cmd->add_option("--amp", synth.amps, "Component amplitude (repeatable)");
    synth_cmd->add_option("--phase", synth.phases, "Component phase in radians (repeatable)");
    synth_cmd->add_option("--offset", synth.offset, "Constant offset")->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise, "Gaussian noise standard deviation")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Noise seed")->capture_default_str();
    synth_cmd->add_option("--out", synth.out, "Output CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!synth.amps.empty() && synth.amps.size() != synth.periods.size()) {
        std::cerr << "--amp count must match --period count\n";
        return 2;
    }
    if (!synth.phases.empty() && synth.phases.size() != synth.periods.size()) {
        std::cerr << "--phase count must match --period count\n";
        return 2;
    }

    try {
        if (*synth_cmd) return run_synth(synth);
        cfg.command = (*compare) ? "compare" : "analyze";
        return run_pipeline(cfg);
    } catch (const wsa::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 1;
    }
}
