#pragma once

#include <string>
#include <vector>

#include "pwave/cascade.hpp"
#include "pwave/models.hpp"

namespace pwave::conditioning {

// One trading day reduced to what the correlation study consumes.
struct DailySeriesPoint {
    std::string day_id;
    double equilibrium_price = 0.0;  // currency/share
    double total_volume = 0.0;       // V, shares
    double total_amount = 0.0;       // M, currency
    wavefit::ModelKind fit_kind = wavefit::ModelKind::Degenerate;
};

// Relative day-over-day changes for one adjacent pair of trading days.
struct RatePoint {
    std::string prev_day;
    std::string day;                     // the pair belongs to this (later) day
    double mean_return_rate = 0.0;       // (p0_t - p0_{t-1}) / p0_{t-1}
    double intensity_change_rate = 0.0;  // (V_t - V_{t-1}) / V_{t-1}
    double amount_change_rate = 0.0;     // (M_t - M_{t-1}) / M_{t-1}
};

struct PeriodSpec {
    std::string label;
    std::string start;  // ISO dates, inclusive on both ends
    std::string end;
};

struct CorrelationEntry {
    std::string pair;  // return_intensity, return_amount, intensity_amount
    double r = 0.0;
    double t = 0.0;
    double t_crit = 0.0;
    bool passed = false;
    bool defined = true;  // false when one series had zero variance
};

struct CorrelationReport {
    std::string label;
    int n = 0;  // rate points feeding the three correlations
    CorrelationEntry return_intensity;
    CorrelationEntry return_amount;
    CorrelationEntry intensity_amount;
};

// One RatePoint per adjacent pair in dataset order; calendar gaps between
// trading days are not special. Simple ratios by default, log ratios when
// log_returns is set (sensitivity checks only).
// Throws TooFewDays on fewer than 2 days, DomainError on non-increasing
// day_ids or nonpositive base values.
std::vector<RatePoint> rate_series(const std::vector<DailySeriesPoint>& daily,
                                   bool log_returns = false);

// result[i] holds every RatePoint whose later day falls inside periods[i];
// periods may overlap or be empty.
std::vector<std::vector<RatePoint>> split_periods(const std::vector<RatePoint>& rates,
                                                  const std::vector<PeriodSpec>& periods);

// The three pairwise correlations with two-sided t tests at level alpha.
// A pair touching a zero-variance series comes back with defined=false
// instead of throwing, so one flat series cannot hide the other two
// correlations. Throws TooFewPairs on fewer than 3 rate points.
CorrelationReport correlation_report(const std::string& label,
                                     const std::vector<RatePoint>& rates, double alpha);

// Share of days that are anything but a passed single-Bessel fit (two-peak
// and Kummer passes count as abnormal too). Throws EmptyInput.
double stability_index(const std::vector<wavefit::ClassifiedFit>& fits);

}  // namespace pwave::conditioning
