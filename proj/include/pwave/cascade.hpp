#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwave/histogram.hpp"
#include "pwave/lm.hpp"
#include "pwave/models.hpp"

namespace pwave::wavefit {

struct StageAttempt {
    std::string stage;  // bessel0_2dp, bessel0_halfcent, two_peak, kummer1
    double r2 = 0.0;
};

struct ClassifiedFit {
    std::string day_id;
    ModelKind kind = ModelKind::Degenerate;
    ModelParams params;
    double r_squared = 0.0;
    double f_stat = 0.0;
    double r2_crit = 0.0;
    bool passed = false;
    int iterations = 0;  // LM iterations of the reported stage
    std::vector<StageAttempt> stage_log;

    // true when the day is a significant single-Bessel fit (stage 1 or the
    // half-cent retry); everything else counts as abnormal
    bool bessel_passed() const { return kind == ModelKind::Bessel0 && passed; }
    // true when stage 1 alone passed (no retry needed)
    bool first_pass() const {
        return bessel_passed() && !stage_log.empty() && stage_log.front().stage == "bessel0_2dp" &&
               stage_log.size() == 1;
    }
};

// Significance cascade over one day:
//   1. Bessel0 on the cent grid; pass if R^2 > R^2_crit (k=1).
//   2. If that fails on a sparse day (fewer than sparse_threshold distinct
//      cent prices), rebuild on the half-cent grid and retry Bessel0.
//   3. Two-peak superposition on the cent grid (k=2, needs >= 7 points);
//      fits whose centers are closer than min_separation_ticks are rejected
//      as collapsed.
//   4. Kummer1 on the cent grid (k=1).
// Anything left is Unfit. Days with fewer than 4 distinct prices (or a
// flat histogram, which has no variance to test against) come back as
// Degenerate. The half-cent grid exists only for the stage-2 retry; stages
// 3 and 4 stay on the primary cent grid.
//
// hist_half may be null when no half-cent rebuild is available; stage 2 is
// then skipped.
ClassifiedFit classify_histograms(const VolumeHistogram& hist_2dp,
                                  const VolumeHistogram* hist_half, const FitConfig& config);

// Convenience entry building both grids from raw ticks.
ClassifiedFit fit_cascade(const DayTicks& day, const FitConfig& config);

// Passed single-Bessel days report the fitted p0; every other kind falls
// back to the volume-weighted mean price.
double equilibrium_price(const ClassifiedFit& fit, const DailyMetrics& metrics);

}  // namespace pwave::wavefit
