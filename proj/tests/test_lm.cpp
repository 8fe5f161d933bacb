#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pwave/errors.hpp"
#include "pwave/lm.hpp"
#include "pwave/models.hpp"

using namespace pwave;
using namespace pwave::wavefit;

namespace {

// Histogram whose "probabilities" are exact model values; the fitter only
// reads prices and probabilities, so normalization does not matter here.
VolumeHistogram model_hist(const ModelParams& params, PriceMils lo, PriceMils hi,
                           PriceMils tick = kMilsPerCent) {
    VolumeHistogram h;
    h.day_id = "model";
    h.grid_mode = tick == kMilsPerCent ? GridMode::TwoDecimal : GridMode::HalfCent;
    for (PriceMils p = lo; p <= hi; p += tick) {
        h.prices.push_back(p);
        h.probabilities.push_back(eval_params(params, to_currency(p)));
        h.volumes.push_back(1);
    }
    h.total_volume = static_cast<std::int64_t>(h.prices.size());
    return h;
}

double ssr_of(const ModelParams& params, const VolumeHistogram& h) {
    double s = 0.0;
    for (size_t i = 0; i < h.size(); ++i) {
        double r = h.probabilities[i] - eval_params(params, to_currency(h.prices[i]));
        s += r * r;
    }
    return s;
}

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_CASE("a zero-residual start is recognized immediately") {
    BesselParams truth{0.2, 80.0, 3.50};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    auto res = lm_descend(ModelKind::Bessel0, h, ModelParams{truth}, FitConfig{});
    CHECK(res.converged);
    CHECK(res.iterations <= 1);
    CHECK(res.ssr == 0.0);
    auto got = std::get<BesselParams>(res.params);
    CHECK(got.C == doctest::Approx(truth.C).epsilon(1e-12));
    CHECK(got.omega == doctest::Approx(truth.omega).epsilon(1e-12));
    CHECK(got.p0 == doctest::Approx(truth.p0).epsilon(1e-12));
}

TEST_CASE("noiseless Bessel recovery from the shape-derived guess") {
    BesselParams truth{0.2, 80.0, 3.50};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    auto init = init_guess(h, ModelKind::Bessel0);
    auto res = lm_fit(ModelKind::Bessel0, h, init, FitConfig{});
    auto got = std::get<BesselParams>(res.params);
    CHECK(close_rel(got.C, truth.C, 1e-6));
    CHECK(close_rel(got.omega, truth.omega, 1e-6));
    CHECK(close_rel(got.p0, truth.p0, 1e-6));
    CHECK(res.ssr < 1e-18);
}

TEST_CASE("noiseless recovery for random Bessel parameters") {
    std::mt19937 rng(8844);
    std::uniform_real_distribution<double> uc(0.05, 0.5);
    std::uniform_real_distribution<double> uw(30.0, 150.0);
    std::uniform_real_distribution<double> up(3.42, 3.58);
    for (int trial = 0; trial < 10; ++trial) {
        BesselParams truth{uc(rng), uw(rng), up(rng)};
        auto h = model_hist(ModelParams{truth}, 3310, 3700);  // 40 points
        auto res = lm_fit(ModelKind::Bessel0, h, init_guess(h, ModelKind::Bessel0),
                          FitConfig{});
        auto got = std::get<BesselParams>(res.params);
        REQUIRE(close_rel(got.C, truth.C, 1e-6));
        REQUIRE(close_rel(got.omega, truth.omega, 1e-6));
        REQUIRE(close_rel(got.p0, truth.p0, 1e-6));
    }
}

TEST_CASE("noiseless Kummer recovery") {
    KummerParams truth{0.25, 28.0, 3.50};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    auto res = lm_fit(ModelKind::Kummer1, h, init_guess(h, ModelKind::Kummer1),
                      FitConfig{});
    auto got = std::get<KummerParams>(res.params);
    CHECK(close_rel(got.C, truth.C, 1e-6));
    CHECK(close_rel(got.sqrtA, truth.sqrtA, 1e-6));
    CHECK(close_rel(got.p0, truth.p0, 1e-6));
}

TEST_CASE("noiseless two-peak recovery") {
    TwoPeakParams truth{{0.2, 60.0, 3.46}, {0.18, 55.0, 3.54}};
    auto h = model_hist(ModelParams{truth}, 3400, 3600);
    auto res = lm_fit(ModelKind::Bessel0TwoPeak, h,
                      init_guess(h, ModelKind::Bessel0TwoPeak), FitConfig{});
    auto got = std::get<TwoPeakParams>(res.params);
    CHECK(got.left.p0 < got.right.p0);
    CHECK(close_rel(got.left.C, truth.left.C, 1e-5));
    CHECK(close_rel(got.left.omega, truth.left.omega, 1e-5));
    CHECK(close_rel(got.left.p0, truth.left.p0, 1e-6));
    CHECK(close_rel(got.right.C, truth.right.C, 1e-5));
    CHECK(close_rel(got.right.omega, truth.right.omega, 1e-5));
    CHECK(close_rel(got.right.p0, truth.right.p0, 1e-6));
}

TEST_CASE("the width ladder rescues a far-off initial width") {
    BesselParams truth{0.2, 80.0, 3.50};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    // supplied width off by >10x in both directions
    for (double w0 : {5.0, 900.0}) {
        auto res = lm_fit(ModelKind::Bessel0, h, ModelParams{BesselParams{0.2, w0, 3.50}},
                          FitConfig{});
        auto got = std::get<BesselParams>(res.params);
        REQUIRE(close_rel(got.omega, truth.omega, 1e-6));
    }
}

TEST_CASE("SSR never increases relative to the starting point") {
    BesselParams truth{0.2, 80.0, 3.50};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    // perturb the data so the minimum is not exactly zero
    for (size_t i = 0; i < h.probabilities.size(); ++i)
        h.probabilities[i] += 1e-3 * std::sin(static_cast<double>(i));
    ModelParams init{BesselParams{0.15, 60.0, 3.45}};
    double ssr0 = ssr_of(init, h);
    auto res = lm_descend(ModelKind::Bessel0, h, init, FitConfig{});
    CHECK(res.ssr <= ssr0);
    CHECK(ssr_of(res.params, h) == doctest::Approx(res.ssr).epsilon(1e-12));
}

TEST_CASE("lm_fit is deterministic") {
    BesselParams truth{0.17, 95.0, 3.47};
    auto h = model_hist(ModelParams{truth}, 3310, 3700);
    auto a = lm_fit(ModelKind::Bessel0, h, init_guess(h, ModelKind::Bessel0), FitConfig{});
    auto b = lm_fit(ModelKind::Bessel0, h, init_guess(h, ModelKind::Bessel0), FitConfig{});
    auto pa = std::get<BesselParams>(a.params);
    auto pb = std::get<BesselParams>(b.params);
    CHECK(pa.C == pb.C);
    CHECK(pa.omega == pb.omega);
    CHECK(pa.p0 == pb.p0);
    CHECK(a.ssr == b.ssr);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("fitted p0 stays inside the grid") {
    // data pushed toward the right edge cannot drag p0 beyond it
    BesselParams truth{0.3, 60.0, 3.70};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    auto res = lm_fit(ModelKind::Bessel0, h, init_guess(h, ModelKind::Bessel0), FitConfig{});
    auto got = std::get<BesselParams>(res.params);
    CHECK(got.p0 >= 3.30 - 1e-12);
    CHECK(got.p0 <= 3.70 + 1e-12);
}

TEST_CASE("lm_fit refuses histograms that are too small") {
    BesselParams b{0.2, 80.0, 3.50};
    auto h3 = model_hist(ModelParams{b}, 3490, 3510);  // 3 points
    CHECK_THROWS_AS(lm_fit(ModelKind::Bessel0, h3, ModelParams{b}, FitConfig{}),
                    DegenerateDay);
    auto h6 = model_hist(ModelParams{b}, 3450, 3500);  // 6 points
    TwoPeakParams tp{{0.2, 60.0, 3.46}, {0.18, 55.0, 3.49}};
    CHECK_THROWS_AS(lm_fit(ModelKind::Bessel0TwoPeak, h6, ModelParams{tp}, FitConfig{}),
                    DegenerateDay);
}

TEST_CASE("fit quality carries over to noisy data") {
    // mild multiplicative noise: the minimum moves but stays near truth
    BesselParams truth{0.2, 80.0, 3.50};
    auto h = model_hist(ModelParams{truth}, 3300, 3700);
    std::mt19937 rng(5);
    std::normal_distribution<double> eps(0.0, 0.01);
    for (auto& p : h.probabilities) p *= (1.0 + eps(rng));
    auto res = lm_fit(ModelKind::Bessel0, h, init_guess(h, ModelKind::Bessel0), FitConfig{});
    auto got = std::get<BesselParams>(res.params);
    CHECK(std::fabs(got.p0 - 3.50) < 0.01);
    CHECK(std::fabs(got.omega - 80.0) / 80.0 < 0.05);
}
