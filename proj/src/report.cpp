#include "pwave/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "pwave/errors.hpp"

namespace pwave::report {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json params_to_json(const wavefit::ModelParams& params) {
    using namespace wavefit;
    if (const auto* b = std::get_if<BesselParams>(&params))
        return json{{"model", "bessel0"}, {"C", b->C}, {"omega", b->omega}, {"p0", b->p0}};
    if (const auto* t = std::get_if<TwoPeakParams>(&params))
        return json{{"model", "bessel0_two_peak"},
                    {"left", params_to_json(t->left)},
                    {"right", params_to_json(t->right)}};
    if (const auto* k = std::get_if<KummerParams>(&params))
        return json{{"model", "kummer1"}, {"C", k->C}, {"sqrtA", k->sqrtA}, {"p0", k->p0}};
    return nullptr;
}

wavefit::ModelParams params_from_json(const json& j) {
    using namespace wavefit;
    if (j.is_null()) return std::monostate{};
    const std::string model = j.at("model");
    if (model == "bessel0")
        return BesselParams{j.at("C"), j.at("omega"), j.at("p0")};
    if (model == "bessel0_two_peak") {
        TwoPeakParams tp;
        tp.left = std::get<BesselParams>(params_from_json(j.at("left")));
        tp.right = std::get<BesselParams>(params_from_json(j.at("right")));
        return tp;
    }
    if (model == "kummer1")
        return KummerParams{j.at("C"), j.at("sqrtA"), j.at("p0")};
    throw ParseError("unknown model in fit artifact: " + model, 0);
}

// JSON has no infinity; non-finite stats are stored as null and restored
// as +inf (the only non-finite value the pipeline produces for these).
json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double finite_or_inf(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

json entry_to_json(const conditioning::CorrelationEntry& e) {
    json j;
    j["pair"] = e.pair;
    j["defined"] = e.defined;
    if (e.defined) {
        j["r"] = e.r;
        j["t"] = finite_or_null(e.t);
        j["t_crit"] = e.t_crit;
        j["passed"] = e.passed;
    }
    return j;
}

}  // namespace

void write_ticks_csv(std::ostream& os, const std::vector<DayTicks>& days) {
    os << "day,timestamp,price,volume\n";
    for (const auto& d : days)
        for (const auto& t : d.records)
            os << d.day_id << ',' << format_timestamp(t.timestamp_ms) << ','
               << format_price(t.price) << ',' << t.volume << '\n';
}

void write_plot_csv(std::ostream& os, const VolumeHistogram& hist,
                    const wavefit::ClassifiedFit& fit) {
    os << "price,observed_prob,fitted_prob\n";
    for (size_t i = 0; i < hist.size(); ++i) {
        const double p = to_currency(hist.prices[i]);
        os << format_price(hist.prices[i]) << ',' << fmt(hist.probabilities[i]) << ','
           << fmt(wavefit::eval_params(fit.params, p)) << '\n';
    }
}

void write_histogram_csv(std::ostream& os, const VolumeHistogram& hist) {
    os << "price,volume,probability\n";
    for (size_t i = 0; i < hist.size(); ++i)
        os << format_price(hist.prices[i]) << ',' << hist.volumes[i] << ','
           << fmt(hist.probabilities[i]) << '\n';
}

void write_daily_series_csv(std::ostream& os,
                            const std::vector<conditioning::DailySeriesPoint>& daily) {
    os << "day,equilibrium_price,total_volume,total_amount,fit_kind\n";
    for (const auto& d : daily)
        os << d.day_id << ',' << fmt(d.equilibrium_price) << ',' << fmt(d.total_volume) << ','
           << fmt(d.total_amount) << ',' << wavefit::to_string(d.fit_kind) << '\n';
}

void write_rate_series_csv(std::ostream& os,
                           const std::vector<conditioning::RatePoint>& rates) {
    os << "day,ret,dint,damt\n";
    for (const auto& r : rates)
        os << r.day << ',' << fmt(r.mean_return_rate) << ',' << fmt(r.intensity_change_rate)
           << ',' << fmt(r.amount_change_rate) << '\n';
}

json fit_to_json(const wavefit::ClassifiedFit& fit) {
    json j;
    j["day"] = fit.day_id;
    j["kind"] = wavefit::to_string(fit.kind);
    j["params"] = params_to_json(fit.params);
    j["r_squared"] = fit.r_squared;
    j["f_stat"] = finite_or_null(fit.f_stat);
    j["r2_crit"] = fit.r2_crit;
    j["passed"] = fit.passed;
    j["iterations"] = fit.iterations;
    json stages = json::array();
    for (const auto& s : fit.stage_log) stages.push_back({{"stage", s.stage}, {"r2", s.r2}});
    j["stages"] = stages;
    return j;
}

json fits_to_json(const std::vector<wavefit::ClassifiedFit>& fits) {
    json arr = json::array();
    for (const auto& f : fits) arr.push_back(fit_to_json(f));
    return arr;
}

wavefit::ClassifiedFit fit_from_json(const json& j) {
    wavefit::ClassifiedFit f;
    f.day_id = j.at("day");
    f.kind = wavefit::model_kind_from_string(j.at("kind"));
    f.params = params_from_json(j.at("params"));
    f.r_squared = j.at("r_squared");
    f.f_stat = finite_or_inf(j.at("f_stat"));
    f.r2_crit = j.at("r2_crit");
    f.passed = j.at("passed");
    f.iterations = j.at("iterations");
    for (const auto& s : j.at("stages"))
        f.stage_log.push_back({s.at("stage").get<std::string>(), s.at("r2").get<double>()});
    return f;
}

std::vector<wavefit::ClassifiedFit> fits_from_json(const json& j) {
    std::vector<wavefit::ClassifiedFit> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(fit_from_json(e));
    return out;
}

json histogram_to_json(const VolumeHistogram& h) {
    json j;
    j["day"] = h.day_id;
    j["grid"] = h.grid_mode == GridMode::TwoDecimal ? "2dp" : "halfcent";
    j["total_volume"] = h.total_volume;
    j["price_mils"] = h.prices;
    j["volumes"] = h.volumes;
    return j;
}

VolumeHistogram histogram_from_json(const json& j) {
    VolumeHistogram h;
    h.day_id = j.at("day");
    const std::string grid = j.at("grid");
    if (grid == "2dp")
        h.grid_mode = GridMode::TwoDecimal;
    else if (grid == "halfcent")
        h.grid_mode = GridMode::HalfCent;
    else
        throw ParseError("unknown grid in histogram artifact: " + grid, 0);
    h.total_volume = j.at("total_volume");
    h.prices = j.at("price_mils").get<std::vector<PriceMils>>();
    h.volumes = j.at("volumes").get<std::vector<std::int64_t>>();
    if (h.prices.size() != h.volumes.size() || h.total_volume <= 0)
        throw ParseError("inconsistent histogram artifact for day " + h.day_id, 0);
    h.probabilities.reserve(h.volumes.size());
    for (auto v : h.volumes)
        h.probabilities.push_back(static_cast<double>(v) / static_cast<double>(h.total_volume));
    return h;
}

json metrics_to_json(const DailyMetrics& m) {
    json j;
    j["day"] = m.day_id;
    j["total_volume"] = m.total_volume;
    j["total_amount"] = m.total_amount;
    j["weighted_mean_price"] = m.weighted_mean_price;
    j["distinct_price_count"] = m.distinct_price_count;
    return j;
}

DailyMetrics metrics_from_json(const json& j) {
    DailyMetrics m;
    m.day_id = j.at("day");
    m.total_volume = j.at("total_volume");
    m.total_amount = j.at("total_amount");
    m.weighted_mean_price = j.at("weighted_mean_price");
    m.distinct_price_count = j.at("distinct_price_count");
    return m;
}

json correlation_report_to_json(const conditioning::CorrelationReport& rep) {
    json j;
    j["label"] = rep.label;
    j["n"] = rep.n;
    j["return_intensity"] = entry_to_json(rep.return_intensity);
    j["return_amount"] = entry_to_json(rep.return_amount);
    j["intensity_amount"] = entry_to_json(rep.intensity_amount);
    return j;
}

json analysis_to_json(const std::vector<conditioning::CorrelationReport>& periods,
                      const std::vector<wavefit::ClassifiedFit>& fits) {
    json j;
    json rows = json::array();
    for (const auto& p : periods) rows.push_back(correlation_report_to_json(p));
    j["periods"] = rows;

    size_t first = 0, refined = 0;
    for (const auto& f : fits) {
        if (f.first_pass())
            ++first;
        else if (f.bessel_passed())
            ++refined;
    }
    const auto total = fits.size();
    const auto passed = first + refined;
    json st;
    st["days"] = total;
    st["bessel_first_pass"] = first;
    st["bessel_after_retry"] = refined;
    st["abnormal"] = total - passed;
    if (total > 0) {
        st["pass_rate"] = static_cast<double>(passed) / static_cast<double>(total);
        st["stability_index"] = static_cast<double>(total - passed) / static_cast<double>(total);
        st["pre_refinement_share"] =
            static_cast<double>(total - first) / static_cast<double>(total);
    }
    j["stability"] = st;
    return j;
}

json corpus_truth_to_json(const std::vector<synth::SynthDay>& days) {
    json arr = json::array();
    for (const auto& d : days) {
        json j;
        j["day"] = d.ticks.day_id;
        j["kind"] = wavefit::to_string(d.kind);
        j["params"] = params_to_json(d.params);
        j["true_p0"] = d.true_p0;
        j["true_return"] = d.true_return;
        j["true_volume_change"] = d.true_volume_change;
        j["total_volume"] = d.total_volume;
        arr.push_back(j);
    }
    return arr;
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << text;
    if (text.empty() || text.back() != '\n') os << '\n';
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace pwave::report
