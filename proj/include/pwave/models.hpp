#pragma once

#include <string>
#include <variant>

#include "pwave/histogram.hpp"

namespace pwave::wavefit {

enum class ModelKind { Bessel0, Bessel0TwoPeak, Kummer1, Unfit, Degenerate };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

// Single equilibrium: C * |J0(omega * (p - p0))|.
struct BesselParams {
    double C = 0.0;
    double omega = 0.0;  // per currency unit
    double p0 = 0.0;     // currency/share
};

// Two-equilibrium superposition; left.p0 < right.p0 after ordering.
struct TwoPeakParams {
    BesselParams left;
    BesselParams right;
};

// C * exp(-sqrtA*|p-p0|) * |1 - 2*sqrtA*|p-p0||.
struct KummerParams {
    double C = 0.0;
    double sqrtA = 0.0;  // per currency unit
    double p0 = 0.0;
};

using ModelParams = std::variant<std::monostate, BesselParams, TwoPeakParams, KummerParams>;

double model_bessel0(double p, const BesselParams& params);
double model_bessel0_two(double p, const TwoPeakParams& params);
double model_kummer1(double p, const KummerParams& params);

// E_m = (1 + 2n) * sqrtA.
double kummer_energy(double sqrtA, int n);

// Evaluate whichever model `params` holds at price p; monostate yields 0.
double eval_params(const ModelParams& params, double p);

// Starting guesses from the histogram shape.
//   Bessel0:  p0 = argmax price, C = max probability,
//             omega = 2.4048 / halfwidth, where halfwidth is the distance
//             from p0 to the farthest grid price (at least one tick).
//   Kummer1:  same p0/C, sqrtA = 1 / halfwidth.
//   TwoPeak:  split at the deepest valley between the two largest local
//             maxima, Bessel0 guess on each side.
// Ties break toward the lower price. Throws DegenerateDay when the
// histogram has fewer than 4 distinct prices.
ModelParams init_guess(const VolumeHistogram& hist, ModelKind kind);

// Index of the split point for the two-peak guess (shared with the fit
// driver, which also tries the midpoint split).
int valley_split_index(const VolumeHistogram& hist);

// Bessel0 guess restricted to bins [begin, end) of the histogram.
BesselParams bessel_side_guess(const VolumeHistogram& hist, int begin, int end);

}  // namespace pwave::wavefit
