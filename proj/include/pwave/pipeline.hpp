#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwave/cascade.hpp"
#include "pwave/conditioning.hpp"
#include "pwave/config.hpp"
#include "pwave/histogram.hpp"
#include "pwave/report.hpp"
#include "pwave/ticks.hpp"

namespace pwave::pipeline {

// Primary fitting grid plus the optional half-cent retry grid for one day.
struct DayHistograms {
    VolumeHistogram primary;
    std::optional<VolumeHistogram> halfcent;
};

// Snap every day onto its fitting grid(s). Days that cannot produce a
// histogram at all (zero total volume) are dropped with a note to stderr;
// they carry no information for either the fits or the daily series.
std::vector<DayHistograms> build_day_histograms(const std::vector<DayTicks>& days,
                                                config::GridChoice grid);

std::vector<DailyMetrics> summarize_days(const std::vector<DayTicks>& days);

// Classify every day. `jobs` > 1 runs a worker pool; results are indexed by
// day regardless of completion order, so the output is identical to a
// serial run.
std::vector<wavefit::ClassifiedFit> fit_days(const std::vector<DayHistograms>& days,
                                             const wavefit::FitConfig& fit, int jobs);

// Everything the `analyze` stage derives from fits + metrics.
struct AnalysisArtifacts {
    std::vector<conditioning::DailySeriesPoint> daily;
    std::vector<conditioning::RatePoint> rates;
    std::vector<conditioning::CorrelationReport> period_reports;
    report::json analysis;  // period rows + stability block
};

// Daily series, rate series and per-period correlation tests. When no
// periods are configured a single "full" period spanning the data is used.
// Periods with fewer than 3 rate pairs keep their row but mark all three
// correlations undefined.
AnalysisArtifacts analyze_fits(const std::vector<wavefit::ClassifiedFit>& fits,
                               const std::vector<DailyMetrics>& metrics,
                               const config::RunConfig& cfg);

// Stage entry points used by the CLI. Each reads its inputs (CSV for
// ingest, JSON artifacts for fit/analyze), writes its artifacts under
// cfg.out and returns. run_pipeline chains all three in memory and writes
// the same artifact set byte for byte.
void run_ingest(const config::RunConfig& cfg);
void run_fit(const config::RunConfig& cfg);
void run_analyze(const config::RunConfig& cfg);
void run_synth(const config::RunConfig& cfg);
void run_pipeline(const config::RunConfig& cfg);

}  // namespace pwave::pipeline
