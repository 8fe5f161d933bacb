#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwave/models.hpp"
#include "pwave/prices.hpp"
#include "pwave/ticks.hpp"

namespace pwave::synth {

// Inclusive snapped price grid for one synthetic day.
struct GridSpec {
    PriceMils min_price = 0;
    PriceMils max_price = 0;
    PriceMils tick = kMilsPerCent;  // 10 (cent) or 5 (half-cent)
};

struct SynthDaySpec {
    wavefit::ModelKind kind = wavefit::ModelKind::Bessel0;
    wavefit::ModelParams params;
    GridSpec grid;
    std::int64_t trade_count = 1;   // N >= 1
    std::int64_t mean_trade_size = 100;
    bool geometric_sizes = false;   // default: every trade = mean_trade_size
    std::uint64_t seed = 0;
};

// One generated day plus its ground truth.
struct SynthDay {
    DayTicks ticks;
    wavefit::ModelKind kind = wavefit::ModelKind::Bessel0;
    wavefit::ModelParams params;      // true generating params
    double true_p0 = 0.0;             // pre-snap model center
    double true_return = 0.0;         // r_t; 0 on the first day
    double true_volume_change = 0.0;  // planted relative volume change; 0 on the first day
    std::int64_t total_volume = 0;    // shares actually emitted
};

// Corpus of Bessel days whose center follows a multiplicative random walk
// p0_t = p0_{t-1} * (1 + r_t), r_t ~ N(0, step_sigma^2), and whose volume
// follows V_t = V_{t-1} * (1 + volume_sensitivity * u_t) with
// u_t = rho * (r_t / step_sigma) + sqrt(1 - rho^2) * eps_t, so the sample
// correlation between daily return and relative volume change converges
// to rho.
struct SynthCorpusSpec {
    int day_count = 3;            // >= 3
    double step_sigma = 0.01;     // std-dev of the daily return step
    double rho = 0.0;             // planted correlation, |rho| <= 1
    double base_volume = 40000.0; // shares on day 0
    double volume_sensitivity = 0.02;
    std::int64_t mean_trade_size = 100;
    double start_price = 3.50;
    double omega = 80.0;          // Bessel width shared by all days
    int half_window_ticks = 20;   // cent-grid half-width around the day center
    std::string start_day = "2015-01-05";  // weekends are skipped from here on
    std::uint64_t seed = 0;
};

// Draw spec.trade_count trades by inverse-CDF sampling from the model
// normalized over the grid. Deterministic per seed; timestamps step evenly
// through a 4h session starting 09:30:00.000. Throws DomainError when the
// spec is invalid or the model has zero mass on the grid.
std::vector<TickRecord> sample_day(const SynthDaySpec& spec);

// Generate the labelled corpus described above. Day t's tick stream comes
// from its own generator seeded from (spec.seed, t), so days are independent
// substreams and parallel generation cannot change results.
// Throws DomainError on day_count < 3 or |rho| > 1.
std::vector<SynthDay> synth_corpus(const SynthCorpusSpec& spec);

// ISO date `count` weekdays after `start` (count 0 = start itself; start must
// be a weekday). Exposed for tests and the CLI.
std::string weekday_after(const std::string& start, int count);

}  // namespace pwave::synth
