#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pwave/prices.hpp"

namespace pwave {

// One trade. Timestamps are milliseconds since midnight; they only matter
// for ordering within a day.
struct TickRecord {
    std::int64_t timestamp_ms = 0;
    PriceMils price = 0;
    std::int64_t volume = 0;
};

// All trades of one calendar day, sorted by timestamp.
struct DayTicks {
    std::string day_id;  // ISO date, e.g. "2015-06-12"
    std::vector<TickRecord> records;
};

// Parse CSV with header `day,timestamp,price,volume`, group rows by day and
// sort each group by timestamp (stable, so equal timestamps keep file order).
// Days come back in ascending day_id order.
//
// Throws EmptyInput when there are no data rows, ParseError for rows that do
// not scan, DomainError for negative volume.
std::vector<DayTicks> parse_ticks(std::istream& in);
std::vector<DayTicks> parse_ticks_file(const std::string& path);

// "HH:MM:SS.mmm" (the ".mmm" part optional) -> ms since midnight.
std::int64_t parse_timestamp_ms(const std::string& text);
std::string format_timestamp(std::int64_t ms);

}  // namespace pwave
