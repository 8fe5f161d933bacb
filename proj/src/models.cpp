#include "pwave/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pwave/errors.hpp"
#include "pwave/specfun.hpp"

namespace pwave::wavefit {

namespace {
constexpr double kFirstJ0Zero = 2.4048255577;
}

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Bessel0: return "bessel0";
        case ModelKind::Bessel0TwoPeak: return "bessel0_two_peak";
        case ModelKind::Kummer1: return "kummer1";
        case ModelKind::Unfit: return "unfit";
        case ModelKind::Degenerate: return "degenerate";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "bessel0") return ModelKind::Bessel0;
    if (s == "bessel0_two_peak") return ModelKind::Bessel0TwoPeak;
    if (s == "kummer1") return ModelKind::Kummer1;
    if (s == "unfit") return ModelKind::Unfit;
    if (s == "degenerate") return ModelKind::Degenerate;
    throw DomainError("unknown model kind: " + s);
}

double model_bessel0(double p, const BesselParams& params) {
    return params.C * std::fabs(specfun::bessel_j0(params.omega * (p - params.p0)));
}

double model_bessel0_two(double p, const TwoPeakParams& params) {
    return model_bessel0(p, params.left) + model_bessel0(p, params.right);
}

double model_kummer1(double p, const KummerParams& params) {
    const double d = std::fabs(p - params.p0);
    return params.C * std::exp(-params.sqrtA * d) * std::fabs(1.0 - 2.0 * params.sqrtA * d);
}

double kummer_energy(double sqrtA, int n) {
    if (!(sqrtA > 0.0)) throw DomainError("kummer_energy: sqrtA must be positive");
    if (n < 0) throw DomainError("kummer_energy: n must be >= 0");
    return (1.0 + 2.0 * n) * sqrtA;
}

double eval_params(const ModelParams& params, double p) {
    if (const auto* b = std::get_if<BesselParams>(&params)) return model_bessel0(p, *b);
    if (const auto* t = std::get_if<TwoPeakParams>(&params)) return model_bessel0_two(p, *t);
    if (const auto* k = std::get_if<KummerParams>(&params)) return model_kummer1(p, *k);
    return 0.0;
}

namespace {

void require_fittable(const VolumeHistogram& h) {
    if (h.size() < 4)
        throw DegenerateDay(h.day_id + ": " + std::to_string(h.size()) +
                            " distinct prices, need 4");
}

// argmax with ties toward the lower price
int argmax_prob(const std::vector<double>& y) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(y.size()); ++i)
        if (y[i] > y[best]) best = i;
    return best;
}

// Distance from p0 to the farthest grid price, at least one tick.
double halfwidth_at(const VolumeHistogram& h, int i0) {
    const double p0 = to_currency(h.prices[i0]);
    const double lo = to_currency(h.prices.front());
    const double hi = to_currency(h.prices.back());
    const double tick = to_currency(h.tick());
    return std::max({p0 - lo, hi - p0, tick});
}

}  // namespace

BesselParams bessel_side_guess(const VolumeHistogram& h, int begin, int end) {
    int i0 = begin;
    for (int i = begin + 1; i < end; ++i)
        if (h.probabilities[i] > h.probabilities[i0]) i0 = i;
    const double p0 = to_currency(h.prices[i0]);
    const double lo = to_currency(h.prices[begin]);
    const double hi = to_currency(h.prices[end - 1]);
    const double tick = to_currency(h.tick());
    const double hw = std::max({p0 - lo, hi - p0, tick});
    return BesselParams{h.probabilities[i0], kFirstJ0Zero / hw, p0};
}

int valley_split_index(const VolumeHistogram& hist) {
    const auto& y = hist.probabilities;
    const int n = static_cast<int>(y.size());
    // local maxima (plateau points count; edges compete against one neighbor)
    std::vector<int> maxima;
    for (int i = 0; i < n; ++i) {
        const double l = i > 0 ? y[i - 1] : -1.0;
        const double r = i < n - 1 ? y[i + 1] : -1.0;
        if (y[i] >= l && y[i] >= r) maxima.push_back(i);
    }
    if (maxima.size() < 2) return n / 2;
    // two largest, value first, then lower price
    std::sort(maxima.begin(), maxima.end(), [&](int a, int b) {
        if (y[a] != y[b]) return y[a] > y[b];
        return a < b;
    });
    int a = maxima[0], b = maxima[1];
    if (a > b) std::swap(a, b);
    if (b - a < 2) return n / 2;
    int iv = a;
    for (int i = a; i <= b; ++i)
        if (y[i] < y[iv]) iv = i;  // deepest valley, ties toward lower price
    return iv;
}

ModelParams init_guess(const VolumeHistogram& hist, ModelKind kind) {
    require_fittable(hist);
    const int n = static_cast<int>(hist.size());
    const int i0 = argmax_prob(hist.probabilities);
    const double hw = halfwidth_at(hist, i0);

    switch (kind) {
        case ModelKind::Bessel0:
            return BesselParams{hist.probabilities[i0], kFirstJ0Zero / hw,
                                to_currency(hist.prices[i0])};
        case ModelKind::Kummer1:
            return KummerParams{hist.probabilities[i0], 1.0 / hw,
                                to_currency(hist.prices[i0])};
        case ModelKind::Bessel0TwoPeak: {
            const int iv = valley_split_index(hist);
            TwoPeakParams tp;
            tp.left = bessel_side_guess(hist, 0, iv + 1);
            tp.right = bessel_side_guess(hist, iv, n);
            if (tp.left.p0 > tp.right.p0) std::swap(tp.left, tp.right);
            return tp;
        }
        default:
            throw DomainError("init_guess: no initialization for kind " + to_string(kind));
    }
}

}  // namespace pwave::wavefit
