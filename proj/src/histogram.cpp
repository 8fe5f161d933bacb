#include "pwave/histogram.hpp"

#include <map>
#include <set>

#include "pwave/errors.hpp"

namespace pwave {

VolumeHistogram build_histogram(const DayTicks& day, GridMode mode) {
    if (day.records.empty()) throw DegenerateDay(day.day_id + ": no records");

    std::map<PriceMils, std::int64_t> bins;
    std::int64_t total = 0;
    for (const auto& r : day.records) {
        if (r.volume == 0) continue;
        bins[snap_price(r.price, mode)] += r.volume;
        total += r.volume;
    }
    if (total == 0) throw DegenerateDay(day.day_id + ": zero traded volume");

    VolumeHistogram h;
    h.day_id = day.day_id;
    h.grid_mode = mode;
    h.prices.reserve(bins.size());
    h.volumes.reserve(bins.size());
    h.probabilities.reserve(bins.size());
    for (const auto& [p, v] : bins) {
        h.prices.push_back(p);
        h.volumes.push_back(v);
        h.probabilities.push_back(static_cast<double>(v) / static_cast<double>(total));
    }
    h.total_volume = total;
    return h;
}

DailyMetrics day_summary(const DayTicks& day) {
    if (day.records.empty()) throw DegenerateDay(day.day_id + ": no records");

    DailyMetrics m;
    m.day_id = day.day_id;
    std::set<PriceMils> cents;
    for (const auto& r : day.records) {
        if (r.volume == 0) continue;
        m.total_volume += r.volume;
        m.total_amount += to_currency(r.price) * static_cast<double>(r.volume);
        cents.insert(snap_two_decimal(r.price));
    }
    if (m.total_volume == 0) throw DegenerateDay(day.day_id + ": zero traded volume");
    m.weighted_mean_price = m.total_amount / static_cast<double>(m.total_volume);
    m.distinct_price_count = static_cast<int>(cents.size());
    return m;
}

}  // namespace pwave
