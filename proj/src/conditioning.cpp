#include "pwave/conditioning.hpp"

#include <cmath>
#include <limits>

#include "pwave/errors.hpp"
#include "pwave/stats.hpp"

namespace pwave::conditioning {

namespace {

double rate(double prev, double cur, bool log_returns, const char* what) {
    if (prev <= 0.0 || cur <= 0.0)
        throw DomainError(std::string("rate_series: nonpositive ") + what);
    return log_returns ? std::log(cur / prev) : (cur - prev) / prev;
}

CorrelationEntry make_entry(const char* pair, const std::vector<double>& x,
                            const std::vector<double>& y, double alpha) {
    CorrelationEntry e;
    e.pair = pair;
    try {
        e.r = stats::pearson_r(x, y);
        if (std::fabs(e.r) >= 1.0) {
            // perfectly collinear: the t statistic diverges and the test
            // passes at any level
            e.t = std::numeric_limits<double>::infinity();
            e.t_crit = 0.0;
            e.passed = true;
        } else {
            const auto sig =
                stats::correlation_significant(e.r, static_cast<int>(x.size()), alpha);
            e.t = sig.statistic;
            e.t_crit = sig.critical;
            e.passed = sig.passed;
        }
    } catch (const ZeroVariance&) {
        e.defined = false;
        e.r = e.t = e.t_crit = std::numeric_limits<double>::quiet_NaN();
        e.passed = false;
    }
    return e;
}

}  // namespace

std::vector<RatePoint> rate_series(const std::vector<DailySeriesPoint>& daily,
                                   bool log_returns) {
    if (daily.size() < 2) throw TooFewDays("rate_series: need at least 2 days");
    std::vector<RatePoint> out;
    out.reserve(daily.size() - 1);
    for (size_t i = 1; i < daily.size(); ++i) {
        const auto& a = daily[i - 1];
        const auto& b = daily[i];
        if (!(a.day_id < b.day_id))
            throw DomainError("rate_series: day_ids must be strictly increasing");
        RatePoint rp;
        rp.prev_day = a.day_id;
        rp.day = b.day_id;
        rp.mean_return_rate =
            rate(a.equilibrium_price, b.equilibrium_price, log_returns, "equilibrium price");
        rp.intensity_change_rate = rate(a.total_volume, b.total_volume, log_returns, "volume");
        rp.amount_change_rate = rate(a.total_amount, b.total_amount, log_returns, "amount");
        out.push_back(std::move(rp));
    }
    return out;
}

std::vector<std::vector<RatePoint>> split_periods(const std::vector<RatePoint>& rates,
                                                  const std::vector<PeriodSpec>& periods) {
    std::vector<std::vector<RatePoint>> out(periods.size());
    for (size_t i = 0; i < periods.size(); ++i) {
        const auto& p = periods[i];
        if (p.end < p.start)
            throw DomainError("split_periods: period '" + p.label + "' ends before it starts");
        for (const auto& r : rates)
            if (p.start <= r.day && r.day <= p.end) out[i].push_back(r);
    }
    return out;
}

CorrelationReport correlation_report(const std::string& label,
                                     const std::vector<RatePoint>& rates, double alpha) {
    if (rates.size() < 3) throw TooFewPairs("correlation_report: need at least 3 rate points");
    std::vector<double> ret, dint, damt;
    ret.reserve(rates.size());
    dint.reserve(rates.size());
    damt.reserve(rates.size());
    for (const auto& r : rates) {
        ret.push_back(r.mean_return_rate);
        dint.push_back(r.intensity_change_rate);
        damt.push_back(r.amount_change_rate);
    }
    CorrelationReport rep;
    rep.label = label;
    rep.n = static_cast<int>(rates.size());
    rep.return_intensity = make_entry("return_intensity", ret, dint, alpha);
    rep.return_amount = make_entry("return_amount", ret, damt, alpha);
    rep.intensity_amount = make_entry("intensity_amount", dint, damt, alpha);
    return rep;
}

double stability_index(const std::vector<wavefit::ClassifiedFit>& fits) {
    if (fits.empty()) throw EmptyInput("stability_index: no fits");
    size_t abnormal = 0;
    for (const auto& f : fits)
        if (!f.bessel_passed()) ++abnormal;
    return static_cast<double>(abnormal) / static_cast<double>(fits.size());
}

}  // namespace pwave::conditioning
