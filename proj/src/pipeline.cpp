#include "pwave/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "pwave/errors.hpp"
#include "pwave/synth.hpp"

namespace pwave::pipeline {

namespace fs = std::filesystem;

namespace {

bool day_usable(const DayTicks& d) {
    return std::any_of(d.records.begin(), d.records.end(),
                       [](const TickRecord& r) { return r.volume > 0; });
}

wavefit::FitConfig effective_fit(const config::RunConfig& cfg) {
    wavefit::FitConfig f = cfg.fit;
    f.alpha = cfg.alpha;
    return f;
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_outdir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out + ": " + ec.message());
}

report::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    try {
        return report::json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

conditioning::CorrelationEntry undefined_entry(const char* pair) {
    conditioning::CorrelationEntry e;
    e.pair = pair;
    e.defined = false;
    e.r = e.t = e.t_crit = std::numeric_limits<double>::quiet_NaN();
    return e;
}

// ---- artifact writers shared by the staged and the all-in-one paths ----

void write_ingest_artifacts(const std::string& out, const std::vector<DayHistograms>& days,
                            const std::vector<DailyMetrics>& metrics) {
    report::json harr = report::json::array();
    for (const auto& d : days) {
        report::json e;
        e["day"] = d.primary.day_id;
        e["primary"] = report::histogram_to_json(d.primary);
        e["halfcent"] = d.halfcent ? report::histogram_to_json(*d.halfcent)
                                   : report::json(nullptr);
        harr.push_back(e);
    }
    report::write_json_file(join(out, "histograms.json"), harr);

    const std::string hdir = join(out, "histograms");
    ensure_outdir(hdir);
    for (const auto& d : days) {
        std::ostringstream ss;
        report::write_histogram_csv(ss, d.primary);
        report::write_text_file(join(hdir, d.primary.day_id + ".csv"), ss.str());
    }

    report::json marr = report::json::array();
    for (const auto& m : metrics) marr.push_back(report::metrics_to_json(m));
    report::write_json_file(join(out, "metrics.json"), marr);
}

void write_fit_artifacts(const std::string& out, const std::vector<DayHistograms>& days,
                         const std::vector<wavefit::ClassifiedFit>& fits) {
    report::write_json_file(join(out, "fits.json"), report::fits_to_json(fits));
    const std::string plots = join(out, "plots");
    ensure_outdir(plots);
    for (size_t i = 0; i < days.size(); ++i) {
        std::ostringstream ss;
        report::write_plot_csv(ss, days[i].primary, fits[i]);
        report::write_text_file(join(plots, days[i].primary.day_id + ".csv"), ss.str());
    }
}

void write_analyze_artifacts(const std::string& out, const AnalysisArtifacts& art) {
    {
        std::ostringstream ss;
        report::write_daily_series_csv(ss, art.daily);
        report::write_text_file(join(out, "daily_series.csv"), ss.str());
    }
    {
        std::ostringstream ss;
        report::write_rate_series_csv(ss, art.rates);
        report::write_text_file(join(out, "rate_series.csv"), ss.str());
    }
    report::write_json_file(join(out, "analysis.json"), art.analysis);
}

std::vector<DayHistograms> read_histograms_artifact(const std::string& out) {
    const report::json j = read_json_file(join(out, "histograms.json"));
    std::vector<DayHistograms> days;
    days.reserve(j.size());
    for (const auto& e : j) {
        DayHistograms d;
        d.primary = report::histogram_from_json(e.at("primary"));
        if (!e.at("halfcent").is_null())
            d.halfcent = report::histogram_from_json(e.at("halfcent"));
        days.push_back(std::move(d));
    }
    return days;
}

std::vector<DailyMetrics> read_metrics_artifact(const std::string& out) {
    const report::json j = read_json_file(join(out, "metrics.json"));
    std::vector<DailyMetrics> metrics;
    metrics.reserve(j.size());
    for (const auto& e : j) metrics.push_back(report::metrics_from_json(e));
    return metrics;
}

}  // namespace

std::vector<DayHistograms> build_day_histograms(const std::vector<DayTicks>& days,
                                                config::GridChoice grid) {
    std::vector<DayHistograms> out;
    out.reserve(days.size());
    for (const auto& d : days) {
        if (!day_usable(d)) {
            std::cerr << "note: dropping day " << d.day_id << " (zero traded volume)\n";
            continue;
        }
        DayHistograms dh;
        switch (grid) {
            case config::GridChoice::TwoDecimal:
                dh.primary = build_histogram(d, GridMode::TwoDecimal);
                break;
            case config::GridChoice::HalfCent:
                dh.primary = build_histogram(d, GridMode::HalfCent);
                break;
            case config::GridChoice::Auto:
                dh.primary = build_histogram(d, GridMode::TwoDecimal);
                dh.halfcent = build_histogram(d, GridMode::HalfCent);
                break;
        }
        out.push_back(std::move(dh));
    }
    return out;
}

std::vector<DailyMetrics> summarize_days(const std::vector<DayTicks>& days) {
    std::vector<DailyMetrics> out;
    out.reserve(days.size());
    for (const auto& d : days)
        if (day_usable(d)) out.push_back(day_summary(d));
    return out;
}

std::vector<wavefit::ClassifiedFit> fit_days(const std::vector<DayHistograms>& days,
                                             const wavefit::FitConfig& fit, int jobs) {
    std::vector<wavefit::ClassifiedFit> out(days.size());
    std::vector<std::exception_ptr> errors(days.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= days.size()) return;
            try {
                const auto& d = days[i];
                out[i] = wavefit::classify_histograms(
                    d.primary, d.halfcent ? &*d.halfcent : nullptr, fit);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(days.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

AnalysisArtifacts analyze_fits(const std::vector<wavefit::ClassifiedFit>& fits,
                               const std::vector<DailyMetrics>& metrics,
                               const config::RunConfig& cfg) {
    if (fits.size() != metrics.size())
        throw DomainError("analyze: fits and metrics cover different day sets");

    AnalysisArtifacts art;
    art.daily.reserve(fits.size());
    for (size_t i = 0; i < fits.size(); ++i) {
        if (fits[i].day_id != metrics[i].day_id)
            throw DomainError("analyze: day order mismatch at " + fits[i].day_id + " vs " +
                              metrics[i].day_id);
        conditioning::DailySeriesPoint p;
        p.day_id = fits[i].day_id;
        p.equilibrium_price = wavefit::equilibrium_price(fits[i], metrics[i]);
        p.total_volume = static_cast<double>(metrics[i].total_volume);
        p.total_amount = metrics[i].total_amount;
        p.fit_kind = fits[i].kind;
        art.daily.push_back(std::move(p));
    }

    art.rates = conditioning::rate_series(art.daily, cfg.log_returns);

    std::vector<conditioning::PeriodSpec> periods = cfg.periods;
    if (periods.empty())
        periods.push_back({"full", art.daily.front().day_id, art.daily.back().day_id});

    const auto split = conditioning::split_periods(art.rates, periods);
    for (size_t i = 0; i < periods.size(); ++i) {
        try {
            art.period_reports.push_back(
                conditioning::correlation_report(periods[i].label, split[i], cfg.alpha));
        } catch (const TooFewPairs&) {
            conditioning::CorrelationReport rep;
            rep.label = periods[i].label;
            rep.n = static_cast<int>(split[i].size());
            rep.return_intensity = undefined_entry("return_intensity");
            rep.return_amount = undefined_entry("return_amount");
            rep.intensity_amount = undefined_entry("intensity_amount");
            art.period_reports.push_back(std::move(rep));
        }
    }

    art.analysis = report::analysis_to_json(art.period_reports, fits);
    return art;
}

void run_ingest(const config::RunConfig& cfg) {
    config::validate(cfg);
    if (cfg.input.empty()) throw ConfigError("ingest: an input tick CSV is required");
    const auto days = parse_ticks_file(cfg.input);
    const auto hists = build_day_histograms(days, cfg.grid);
    const auto metrics = summarize_days(days);
    ensure_outdir(cfg.out);
    write_ingest_artifacts(cfg.out, hists, metrics);
}

void run_fit(const config::RunConfig& cfg) {
    config::validate(cfg);
    const auto days = read_histograms_artifact(cfg.out);
    const auto fits = fit_days(days, effective_fit(cfg), cfg.jobs);
    write_fit_artifacts(cfg.out, days, fits);
}

void run_analyze(const config::RunConfig& cfg) {
    config::validate(cfg);
    const auto fits = report::fits_from_json(read_json_file(join(cfg.out, "fits.json")));
    const auto metrics = read_metrics_artifact(cfg.out);
    const auto art = analyze_fits(fits, metrics, cfg);
    write_analyze_artifacts(cfg.out, art);
}

void run_synth(const config::RunConfig& cfg) {
    config::validate(cfg);
    const auto corpus = synth::synth_corpus(cfg.corpus);
    ensure_outdir(cfg.out);
    std::vector<DayTicks> days;
    days.reserve(corpus.size());
    for (const auto& d : corpus) days.push_back(d.ticks);
    std::ostringstream ss;
    report::write_ticks_csv(ss, days);
    report::write_text_file(join(cfg.out, "ticks.csv"), ss.str());
    report::write_json_file(join(cfg.out, "truth.json"), report::corpus_truth_to_json(corpus));
}

void run_pipeline(const config::RunConfig& cfg) {
    config::validate(cfg);
    if (cfg.input.empty()) throw ConfigError("run: an input tick CSV is required");
    const auto days = parse_ticks_file(cfg.input);
    const auto hists = build_day_histograms(days, cfg.grid);
    const auto metrics = summarize_days(days);
    const auto fits = fit_days(hists, effective_fit(cfg), cfg.jobs);
    const auto art = analyze_fits(fits, metrics, cfg);
    ensure_outdir(cfg.out);
    write_ingest_artifacts(cfg.out, hists, metrics);
    write_fit_artifacts(cfg.out, hists, fits);
    write_analyze_artifacts(cfg.out, art);
}

}  // namespace pwave::pipeline
