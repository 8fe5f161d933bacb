#include "pwave/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "pwave/errors.hpp"

namespace pwave::synth {

namespace {

// Reproducibility contract (also spelled out in the README): sampling is
// pinned to concrete bit-level algorithms, not to distribution adapters
// whose output may differ across standard libraries.
//   - day seeds:   splitmix64(corpus_seed + (t+1) * 0x9E3779B97F4A7C15)
//   - generator:   std::mt19937_64 (the 2^19937-1 Mersenne Twister, 64-bit)
//   - uniforms:    ((x >> 11) + 1) * 2^-53, in (0, 1]
//   - normals:     Box-Muller cosine branch, exactly two uniforms per draw
//   - bin choice:  first index with cumulative probability >= u

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return ((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

double normal01(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double eval_model(const SynthDaySpec& spec, double p) {
    using wavefit::ModelKind;
    switch (spec.kind) {
        case ModelKind::Bessel0:
            return wavefit::model_bessel0(p, std::get<wavefit::BesselParams>(spec.params));
        case ModelKind::Bessel0TwoPeak:
            return wavefit::model_bessel0_two(p, std::get<wavefit::TwoPeakParams>(spec.params));
        case ModelKind::Kummer1:
            return wavefit::model_kummer1(p, std::get<wavefit::KummerParams>(spec.params));
        default:
            throw DomainError("sample_day: kind has no density");
    }
}

constexpr std::int64_t kSessionStartMs = (9 * 3600 + 30 * 60) * 1000LL;  // 09:30:00.000
constexpr std::int64_t kSessionLengthMs = 4 * 3600 * 1000LL;

}  // namespace

std::vector<TickRecord> sample_day(const SynthDaySpec& spec) {
    if (spec.trade_count < 1) throw DomainError("sample_day: trade_count must be >= 1");
    if (spec.mean_trade_size < 1) throw DomainError("sample_day: mean_trade_size must be >= 1");
    if (spec.grid.tick != kMilsPerCent && spec.grid.tick != kMilsPerHalfCent)
        throw DomainError("sample_day: tick must be 0.01 or 0.005");
    if (spec.grid.min_price > spec.grid.max_price)
        throw DomainError("sample_day: empty grid");

    std::vector<PriceMils> prices;
    std::vector<double> cum;
    double total = 0.0;
    for (PriceMils p = spec.grid.min_price; p <= spec.grid.max_price; p += spec.grid.tick) {
        const double w = eval_model(spec, to_currency(p));
        if (!std::isfinite(w) || w < 0.0) throw DomainError("sample_day: model not a density");
        prices.push_back(p);
        total += w;
        cum.push_back(total);
    }
    if (total <= 0.0) throw DomainError("sample_day: model mass on grid is zero");
    for (double& c : cum) c /= total;
    cum.back() = 1.0;  // close the distribution exactly

    std::mt19937_64 rng(spec.seed);
    const std::int64_t step = std::max<std::int64_t>(1, kSessionLengthMs / spec.trade_count);
    const double geo_log1mp =
        spec.geometric_sizes ? std::log1p(-1.0 / static_cast<double>(spec.mean_trade_size)) : 0.0;

    std::vector<TickRecord> out;
    out.reserve(static_cast<size_t>(spec.trade_count));
    for (std::int64_t i = 0; i < spec.trade_count; ++i) {
        const double u = uniform01(rng);
        const auto it = std::lower_bound(cum.begin(), cum.end(), u);
        const size_t idx = static_cast<size_t>(it - cum.begin());
        std::int64_t size = spec.mean_trade_size;
        if (spec.geometric_sizes) {
            // 1 + Geometric(p = 1/mean), mean exactly mean_trade_size
            const double g = std::floor(std::log(uniform01(rng)) / geo_log1mp);
            size = 1 + static_cast<std::int64_t>(g);
        }
        out.push_back({kSessionStartMs + i * step, prices[idx], size});
    }
    return out;
}

std::string weekday_after(const std::string& start, int count) {
    using namespace std::chrono;
    int y = 0, m = 0, d = 0;
    if (std::sscanf(start.c_str(), "%d-%d-%d", &y, &m, &d) != 3)
        throw DomainError("weekday_after: bad date " + start);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw DomainError("weekday_after: bad date " + start);
    sys_days sd{ymd};
    for (int i = 0; i < count; ++i) {
        do {
            sd += days{1};
        } while (weekday{sd} == Saturday || weekday{sd} == Sunday);
    }
    const year_month_day r{sd};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(r.year()),
                  static_cast<unsigned>(r.month()), static_cast<unsigned>(r.day()));
    return buf;
}

std::vector<SynthDay> synth_corpus(const SynthCorpusSpec& spec) {
    if (spec.day_count < 3) throw DomainError("synth_corpus: day_count must be >= 3");
    if (!(std::fabs(spec.rho) <= 1.0)) throw DomainError("synth_corpus: |rho| must be <= 1");
    if (spec.step_sigma <= 0.0) throw DomainError("synth_corpus: step_sigma must be > 0");
    if (spec.base_volume < 1.0) throw DomainError("synth_corpus: base_volume must be >= 1");

    // Trajectory draws come from their own stream so adding days never
    // perturbs earlier ones.
    std::mt19937_64 walk_rng(splitmix64(spec.seed));
    const double lift = std::sqrt(1.0 - spec.rho * spec.rho);

    std::vector<SynthDay> out;
    out.reserve(static_cast<size_t>(spec.day_count));
    double p0 = spec.start_price;
    double volume = spec.base_volume;
    for (int t = 0; t < spec.day_count; ++t) {
        double ret = 0.0, u = 0.0;
        if (t > 0) {
            const double z = normal01(walk_rng);
            const double eps = normal01(walk_rng);
            ret = spec.step_sigma * z;
            u = spec.rho * z + lift * eps;
            p0 *= 1.0 + ret;
            volume *= std::max(0.01, 1.0 + spec.volume_sensitivity * u);
        }
        if (p0 <= 0.0) throw DomainError("synth_corpus: price walk left the domain");

        const PriceMils center = snap_two_decimal(
            static_cast<PriceMils>(std::llround(p0 * 1000.0)));
        SynthDaySpec day;
        day.kind = wavefit::ModelKind::Bessel0;
        day.params = wavefit::BesselParams{0.2, spec.omega, p0};
        day.grid = {std::max<PriceMils>(kMilsPerCent, center - spec.half_window_ticks * kMilsPerCent),
                    center + spec.half_window_ticks * kMilsPerCent, kMilsPerCent};
        day.trade_count =
            std::max<std::int64_t>(1, std::llround(volume / static_cast<double>(spec.mean_trade_size)));
        day.mean_trade_size = spec.mean_trade_size;
        day.seed = splitmix64(spec.seed + (static_cast<std::uint64_t>(t) + 1) * kGolden);

        SynthDay rec;
        rec.ticks.day_id = weekday_after(spec.start_day, t);
        rec.ticks.records = sample_day(day);
        rec.kind = day.kind;
        rec.params = day.params;
        rec.true_p0 = p0;
        rec.true_return = ret;
        rec.true_volume_change = spec.volume_sensitivity * u;
        rec.total_volume = day.trade_count * spec.mean_trade_size;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace pwave::synth
