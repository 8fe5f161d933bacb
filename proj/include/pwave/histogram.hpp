#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwave/prices.hpp"
#include "pwave/ticks.hpp"

namespace pwave {

// One trading day's normalized volume-vs-price distribution on a snapped
// price grid. Only occupied bins are stored; `prices` is strictly ascending.
struct VolumeHistogram {
    std::string day_id;
    GridMode grid_mode = GridMode::TwoDecimal;
    std::vector<PriceMils> prices;
    std::vector<std::int64_t> volumes;
    std::vector<double> probabilities;  // volumes / total_volume
    std::int64_t total_volume = 0;

    size_t size() const { return prices.size(); }
    PriceMils tick() const { return grid_step(grid_mode); }
};

// Per-day aggregates over the raw (pre-snap) prices.
struct DailyMetrics {
    std::string day_id;
    std::int64_t total_volume = 0;      // V, shares
    double total_amount = 0.0;          // M = sum p*v, currency
    double weighted_mean_price = 0.0;   // pbar = M / V
    int distinct_price_count = 0;       // occupied cent-grid bins
};

// Accumulate volume per snapped price and normalize.
// Throws DegenerateDay when the day is empty or has zero total volume.
VolumeHistogram build_histogram(const DayTicks& day, GridMode mode);

// V and M use original prices; snapping is a fitting aid, not a change to
// traded value. distinct_price_count is the day's cent-grid bin count, which
// is what the sparse-day retry keys on.
DailyMetrics day_summary(const DayTicks& day);

}  // namespace pwave
