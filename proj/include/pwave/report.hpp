#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwave/cascade.hpp"
#include "pwave/conditioning.hpp"
#include "pwave/histogram.hpp"
#include "pwave/synth.hpp"

namespace pwave::report {

// Insertion-ordered so reports read top-to-bottom like the tables they
// mirror; serialization is still deterministic byte-for-byte.
using json = nlohmann::ordered_json;

// Tick CSV in exactly the shape parse_ticks() consumes.
void write_ticks_csv(std::ostream& os, const std::vector<DayTicks>& days);

// price,observed_prob,fitted_prob rows for one day; rendering is left to
// external tools.
void write_plot_csv(std::ostream& os, const VolumeHistogram& hist,
                    const wavefit::ClassifiedFit& fit);

// price,volume,probability rows for one day's histogram.
void write_histogram_csv(std::ostream& os, const VolumeHistogram& hist);

// day,equilibrium_price,total_volume,total_amount,fit_kind
void write_daily_series_csv(std::ostream& os,
                            const std::vector<conditioning::DailySeriesPoint>& daily);

// day,ret,dint,damt
void write_rate_series_csv(std::ostream& os,
                           const std::vector<conditioning::RatePoint>& rates);

// The intermediate artifacts round-trip through JSON so the manual
// ingest -> fit -> analyze chain can hand results between processes and
// still match a single-process run byte for byte. Prices are serialized in
// integer mils and probabilities recomputed on load; every other double
// survives shortest-round-trip serialization exactly.
json fit_to_json(const wavefit::ClassifiedFit& fit);
json fits_to_json(const std::vector<wavefit::ClassifiedFit>& fits);
wavefit::ClassifiedFit fit_from_json(const json& j);
std::vector<wavefit::ClassifiedFit> fits_from_json(const json& j);

json histogram_to_json(const VolumeHistogram& h);
VolumeHistogram histogram_from_json(const json& j);

json metrics_to_json(const DailyMetrics& m);
DailyMetrics metrics_from_json(const json& j);

json correlation_report_to_json(const conditioning::CorrelationReport& rep);

// Per-period correlation rows plus the stability block (first-pass /
// refined / abnormal counts, post-refinement index, pre-refinement share).
json analysis_to_json(const std::vector<conditioning::CorrelationReport>& periods,
                      const std::vector<wavefit::ClassifiedFit>& fits);

// Ground-truth sidecar for a synthetic corpus.
json corpus_truth_to_json(const std::vector<synth::SynthDay>& days);

// Write with a trailing newline; IoError on failure. The JSON variant uses
// 2-space indentation.
void write_json_file(const std::string& path, const json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pwave::report
