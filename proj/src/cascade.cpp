#include "pwave/cascade.hpp"

#include <cmath>
#include <limits>

#include "pwave/errors.hpp"
#include "pwave/stats.hpp"

namespace pwave::wavefit {

namespace {

std::vector<double> predict(const ModelParams& params, const VolumeHistogram& h) {
    std::vector<double> out;
    out.reserve(h.size());
    for (PriceMils pm : h.prices) out.push_back(eval_params(params, to_currency(pm)));
    return out;
}

struct StageFit {
    LmResult lm;
    double r2;
};

StageFit run_stage(ModelKind kind, const VolumeHistogram& h, const FitConfig& cfg) {
    LmResult lm = lm_fit(kind, h, init_guess(h, kind), cfg);
    const double r2 = stats::r_squared(h.probabilities, predict(lm.params, h));
    return {std::move(lm), r2};
}

void accept(ClassifiedFit& out, ModelKind kind, const StageFit& sf, int n, int k,
            double alpha) {
    out.kind = kind;
    out.params = sf.lm.params;
    out.r_squared = sf.r2;
    out.r2_crit = stats::r2_crit(alpha, n, k);
    out.f_stat = sf.r2 >= 1.0 ? std::numeric_limits<double>::infinity()
                              : stats::f_statistic(sf.r2, n, k);
    out.passed = true;
    out.iterations = sf.lm.iterations;
}

}  // namespace

ClassifiedFit classify_histograms(const VolumeHistogram& hist_2dp,
                                  const VolumeHistogram* hist_half,
                                  const FitConfig& config) {
    ClassifiedFit out;
    out.day_id = hist_2dp.day_id;

    const int n = static_cast<int>(hist_2dp.size());
    if (n < 4) {
        out.kind = ModelKind::Degenerate;
        return out;
    }

    try {
        // stage 1: single Bessel on the cent grid
        const double crit1 = stats::r2_crit(config.alpha, n, 1);
        StageFit s1 = run_stage(ModelKind::Bessel0, hist_2dp, config);
        out.stage_log.push_back({"bessel0_2dp", s1.r2});
        if (s1.r2 > crit1) {
            accept(out, ModelKind::Bessel0, s1, n, 1, config.alpha);
            return out;
        }

        // stage 2: sparse-day retry on the half-cent grid
        if (n < config.sparse_threshold && hist_half != nullptr && hist_half->size() >= 4) {
            const int nh = static_cast<int>(hist_half->size());
            StageFit s2 = run_stage(ModelKind::Bessel0, *hist_half, config);
            out.stage_log.push_back({"bessel0_halfcent", s2.r2});
            if (s2.r2 > stats::r2_crit(config.alpha, nh, 1)) {
                accept(out, ModelKind::Bessel0, s2, nh, 1, config.alpha);
                return out;
            }
        }

        // stage 3: two-equilibrium superposition
        if (n >= 7) {
            StageFit s3 = run_stage(ModelKind::Bessel0TwoPeak, hist_2dp, config);
            out.stage_log.push_back({"two_peak", s3.r2});
            const auto& tp = std::get<TwoPeakParams>(s3.lm.params);
            const double sep = tp.right.p0 - tp.left.p0;
            const double min_sep = config.min_separation_ticks * to_currency(hist_2dp.tick());
            if (sep >= min_sep && s3.r2 > stats::r2_crit(config.alpha, n, 2)) {
                accept(out, ModelKind::Bessel0TwoPeak, s3, n, 2, config.alpha);
                return out;
            }
        }

        // stage 4: first-order Kummer
        StageFit s4 = run_stage(ModelKind::Kummer1, hist_2dp, config);
        out.stage_log.push_back({"kummer1", s4.r2});
        if (s4.r2 > stats::r2_crit(config.alpha, n, 1)) {
            accept(out, ModelKind::Kummer1, s4, n, 1, config.alpha);
            return out;
        }

        // nothing stuck
        out.kind = ModelKind::Unfit;
        out.params = s4.lm.params;
        out.r_squared = s4.r2;
        out.r2_crit = stats::r2_crit(config.alpha, n, 1);
        out.f_stat = stats::f_statistic(std::min(s4.r2, 1.0 - 1e-15), n, 1);
        out.passed = false;
        out.iterations = s4.lm.iterations;
    } catch (const ZeroVariance&) {
        // flat histogram: nothing to test against
        out.kind = ModelKind::Degenerate;
        out.params = std::monostate{};
        out.stage_log.clear();
        out.passed = false;
    }
    return out;
}

ClassifiedFit fit_cascade(const DayTicks& day, const FitConfig& config) {
    VolumeHistogram h2;
    try {
        h2 = build_histogram(day, GridMode::TwoDecimal);
    } catch (const DegenerateDay&) {
        ClassifiedFit out;
        out.day_id = day.day_id;
        out.kind = ModelKind::Degenerate;
        return out;
    }
    VolumeHistogram hh = build_histogram(day, GridMode::HalfCent);
    return classify_histograms(h2, &hh, config);
}

double equilibrium_price(const ClassifiedFit& fit, const DailyMetrics& metrics) {
    if (fit.bessel_passed()) return std::get<BesselParams>(fit.params).p0;
    return metrics.weighted_mean_price;
}

}  // namespace pwave::wavefit
