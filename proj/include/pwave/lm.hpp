#pragma once

#include <vector>

#include "pwave/histogram.hpp"
#include "pwave/models.hpp"

namespace pwave::wavefit {

struct FitConfig {
    int max_iterations = 200;
    double lambda_init = 1e-3;
    double lambda_up = 10.0;
    double lambda_down = 0.1;
    double ssr_rel_tol = 1e-10;   // converged when relative SSR change drops below
    double step_tol = 1e-12;      // ... or the step norm does
    double jacobian_step = 1e-6;  // relative central-difference step
    double alpha = 0.05;
    int multistart_count = 3;     // p0 seeds: argmax, weighted mean, grid midpoint

    // cascade knobs
    int sparse_threshold = 10;          // distinct cent prices below this -> half-cent retry
    double min_separation_ticks = 2.0;  // two-peak fits closer than this are collapsed
};

struct LmResult {
    ModelParams params;
    double ssr = 0.0;
    int iterations = 0;
    bool converged = false;
    bool singular = false;  // normal matrix went singular; best-so-far returned
};

// Damped least squares against hist.probabilities.
//
// Scale parameters (C, omega, sqrtA) are fitted in log space, p0 is clamped
// to the grid bounds. Besides the supplied init the driver seeds itself with
// p0 candidates (argmax, volume-weighted mean, grid midpoint) and a ladder
// of width candidates (the |J0| surface is littered with local minima in the
// omega-p0 plane, and a single start routinely parks in one); the best SSR
// wins, ties resolved by seeding order, so the result is deterministic.
// For the two-peak model the seeds are the two split variants (deepest
// valley, midpoint) with per-side guesses; widths stay as initialized.
LmResult lm_fit(ModelKind kind, const VolumeHistogram& hist, const ModelParams& init,
                const FitConfig& config);

// Single descent from exactly one start, no extra seeding. The building
// block of lm_fit; exposed for tests.
LmResult lm_descend(ModelKind kind, const VolumeHistogram& hist, const ModelParams& init,
                    const FitConfig& config);

}  // namespace pwave::wavefit
