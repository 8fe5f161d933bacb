#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "pwave/errors.hpp"
#include "pwave/histogram.hpp"

using namespace pwave;

namespace {

DayTicks day_of(std::vector<std::pair<PriceMils, std::int64_t>> rows) {
    DayTicks d;
    d.day_id = "2015-06-12";
    std::int64_t t = 34200000;
    for (auto [p, v] : rows) d.records.push_back({t += 1000, p, v});
    return d;
}

}  // namespace

TEST_CASE("two prices normalize to their volume shares") {
    auto d = day_of({{3140, 30}, {3150, 70}});
    auto h = build_histogram(d, GridMode::TwoDecimal);
    REQUIRE(h.size() == 2);
    CHECK(h.prices[0] == 3140);
    CHECK(h.prices[1] == 3150);
    CHECK(h.volumes[0] == 30);
    CHECK(h.volumes[1] == 70);
    CHECK(h.total_volume == 100);
    CHECK(h.probabilities[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(h.probabilities[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("all ticks at one price collapse to a single certain bin") {
    auto h = build_histogram(day_of({{3140, 5}, {3140, 10}, {3140, 85}}),
                             GridMode::TwoDecimal);
    REQUIRE(h.size() == 1);
    CHECK(h.probabilities[0] == 1.0);
    CHECK(h.total_volume == 100);
}

TEST_CASE("off-grid prices are snapped into their bin") {
    // 3.142 and 3.138 both land on 3.14
    auto h = build_histogram(day_of({{3142, 10}, {3138, 20}, {3151, 30}}),
                             GridMode::TwoDecimal);
    REQUIRE(h.size() == 2);
    CHECK(h.prices[0] == 3140);
    CHECK(h.volumes[0] == 30);
    CHECK(h.prices[1] == 3150);
}

TEST_CASE("half-cent mode uses the finer lattice") {
    auto h = build_histogram(day_of({{3143, 10}, {3148, 20}}), GridMode::HalfCent);
    REQUIRE(h.size() == 2);
    CHECK(h.prices[0] == 3145);
    CHECK(h.prices[1] == 3150);
    CHECK(h.grid_mode == GridMode::HalfCent);
    CHECK(h.tick() == 5);
}

TEST_CASE("empty or zero-volume days are DegenerateDay") {
    DayTicks empty;
    empty.day_id = "2015-06-12";
    CHECK_THROWS_AS(build_histogram(empty, GridMode::TwoDecimal), DegenerateDay);
    CHECK_THROWS_AS(build_histogram(day_of({{3140, 0}, {3150, 0}}), GridMode::TwoDecimal),
                    DegenerateDay);
}

TEST_CASE("probabilities sum to one and prices ascend on random days") {
    std::mt19937 rng(4711);
    std::uniform_int_distribution<PriceMils> price(2900, 3300);
    std::uniform_int_distribution<std::int64_t> vol(1, 5000);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<PriceMils, std::int64_t>> rows;
        for (int i = 0; i < 200; ++i) rows.push_back({price(rng), vol(rng)});
        auto h = build_histogram(day_of(rows), GridMode::TwoDecimal);
        double sum = std::accumulate(h.probabilities.begin(), h.probabilities.end(), 0.0);
        REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(std::is_sorted(h.prices.begin(), h.prices.end()));
        REQUIRE(std::adjacent_find(h.prices.begin(), h.prices.end()) == h.prices.end());
        std::int64_t total = std::accumulate(h.volumes.begin(), h.volumes.end(), 0LL);
        REQUIRE(total == h.total_volume);
    }
}

TEST_CASE("histogram is invariant under tick order") {
    std::vector<std::pair<PriceMils, std::int64_t>> rows = {
        {3140, 10}, {3150, 20}, {3160, 30}, {3140, 40}};
    auto h1 = build_histogram(day_of(rows), GridMode::TwoDecimal);
    std::reverse(rows.begin(), rows.end());
    auto h2 = build_histogram(day_of(rows), GridMode::TwoDecimal);
    CHECK(h1.prices == h2.prices);
    CHECK(h1.volumes == h2.volumes);
}

TEST_CASE("bins stay within one tick of the raw price range") {
    auto d = day_of({{3141, 10}, {3262, 20}, {3199, 5}});
    auto h = build_histogram(d, GridMode::TwoDecimal);
    CHECK(h.prices.front() >= 3141 - 10);
    CHECK(h.prices.back() <= 3262 + 10);
}

TEST_CASE("day_summary: V sums shares, M uses pre-snap prices") {
    // (10.00, 100) and (11.00, 100): V=200, M=2100, pbar=10.50
    auto s = day_summary(day_of({{10000, 100}, {11000, 100}}));
    CHECK(s.total_volume == 200);
    CHECK(s.total_amount == doctest::Approx(2100.0).epsilon(1e-15));
    CHECK(s.weighted_mean_price == doctest::Approx(10.5).epsilon(1e-15));
    CHECK(s.day_id == "2015-06-12");
}

TEST_CASE("day_summary amount keeps the third decimal") {
    auto s = day_summary(day_of({{3144, 1000}}));
    // 3.144 * 1000, not 3.14 * 1000
    CHECK(s.total_amount == doctest::Approx(3144.0).epsilon(1e-12));
    CHECK(s.weighted_mean_price == doctest::Approx(3.144).epsilon(1e-12));
}

TEST_CASE("single price day has pbar equal to that price") {
    auto s = day_summary(day_of({{3500, 10}, {3500, 20}}));
    CHECK(s.weighted_mean_price == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("distinct_price_count counts cent bins, not raw prices") {
    // 3.141 and 3.144 share a cent bin; 3.151 is its own
    auto s = day_summary(day_of({{3141, 10}, {3144, 10}, {3151, 10}}));
    CHECK(s.distinct_price_count == 2);
}

TEST_CASE("day_summary rejects zero-volume days") {
    CHECK_THROWS_AS(day_summary(day_of({{3140, 0}})), DegenerateDay);
    DayTicks empty;
    CHECK_THROWS_AS(day_summary(empty), DegenerateDay);
}

TEST_CASE("zero-volume ticks do not create bins") {
    auto h = build_histogram(day_of({{3140, 100}, {3150, 0}}), GridMode::TwoDecimal);
    REQUIRE(h.size() == 1);
    CHECK(h.prices[0] == 3140);
}
