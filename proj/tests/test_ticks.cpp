#include <doctest.h>

#include <sstream>
#include <string>

#include "pwave/errors.hpp"
#include "pwave/ticks.hpp"

using namespace pwave;

namespace {

std::vector<DayTicks> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_ticks(in);
}

const char* kHeader = "day,timestamp,price,volume\n";

}  // namespace

TEST_CASE("well-formed rows group into one day") {
    auto days = parse(std::string(kHeader) +
                      "2015-06-12,09:30:00.000,3.142,200\n"
                      "2015-06-12,09:30:01.500,3.150,100\n"
                      "2015-06-12,09:30:02.000,3.139,50\n");
    REQUIRE(days.size() == 1);
    CHECK(days[0].day_id == "2015-06-12");
    REQUIRE(days[0].records.size() == 3);
    CHECK(days[0].records[0].price == 3142);
    CHECK(days[0].records[0].volume == 200);
    CHECK(days[0].records[0].timestamp_ms == 34200000);
    CHECK(days[0].records[1].timestamp_ms == 34201500);
}

TEST_CASE("multiple dates come back as ascending day groups") {
    auto days = parse(std::string(kHeader) +
                      "2015-06-15,10:00:00,3.20,10\n"
                      "2015-06-12,10:00:00,3.10,10\n"
                      "2015-06-15,09:45:00,3.21,20\n");
    REQUIRE(days.size() == 2);
    CHECK(days[0].day_id == "2015-06-12");
    CHECK(days[1].day_id == "2015-06-15");
    REQUIRE(days[1].records.size() == 2);
    // sorted by timestamp within the day
    CHECK(days[1].records[0].price == 3210);
    CHECK(days[1].records[1].price == 3200);
}

TEST_CASE("equal timestamps keep file order (stable sort)") {
    auto days = parse(std::string(kHeader) +
                      "2015-06-12,09:30:00,3.11,1\n"
                      "2015-06-12,09:30:00,3.12,2\n"
                      "2015-06-12,09:30:00,3.13,3\n");
    REQUIRE(days[0].records.size() == 3);
    CHECK(days[0].records[0].price == 3110);
    CHECK(days[0].records[1].price == 3120);
    CHECK(days[0].records[2].price == 3130);
}

TEST_CASE("negative volume is a DomainError naming the line") {
    std::string text = std::string(kHeader) +
                       "2015-06-12,09:30:00,3.14,100\n"
                       "2015-06-12,09:30:01,3.14,-5\n";
    CHECK_THROWS_WITH_AS(parse(text), doctest::Contains("line 3"), DomainError);
}

TEST_CASE("malformed rows are ParseErrors with line numbers") {
    CHECK_THROWS_AS(parse(std::string(kHeader) + "2015-06-12,09:30:00,3.14\n"),
                    ParseError);  // missing field
    CHECK_THROWS_WITH_AS(parse(std::string(kHeader) +
                               "2015-06-12,09:30:00,3.14,100\n"
                               "not-a-date,09:30:00,3.14,100\n"),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_AS(parse(std::string(kHeader) + "2015-06-12,09:30:00,3.14,abc\n"),
                    ParseError);
    CHECK_THROWS_AS(parse(std::string(kHeader) + "2015-06-12,25:61:00,3.14,100\n"),
                    ParseError);
}

TEST_CASE("bad price text surfaces as a parse failure on that line") {
    CHECK_THROWS_WITH_AS(parse(std::string(kHeader) + "2015-06-12,09:30:00,3.1x,100\n"),
                         doctest::Contains("line 2"), ParseError);
}

TEST_CASE("a wrong header is rejected up front") {
    CHECK_THROWS_AS(parse("date,time,price,vol\n2015-06-12,09:30:00,3.14,100\n"),
                    ParseError);
}

TEST_CASE("empty input and header-only input are EmptyInput") {
    CHECK_THROWS_AS(parse(""), EmptyInput);
    CHECK_THROWS_AS(parse(kHeader), EmptyInput);
}

TEST_CASE("CRLF line endings and blank lines are tolerated") {
    auto days = parse("day,timestamp,price,volume\r\n"
                      "2015-06-12,09:30:00,3.14,100\r\n"
                      "\r\n"
                      "2015-06-12,09:30:01,3.15,200\r\n");
    REQUIRE(days.size() == 1);
    CHECK(days[0].records.size() == 2);
}

TEST_CASE("zero volume rows parse (they are dropped later, not here)") {
    auto days = parse(std::string(kHeader) + "2015-06-12,09:30:00,3.14,0\n");
    REQUIRE(days.size() == 1);
    CHECK(days[0].records[0].volume == 0);
}

TEST_CASE("timestamp parsing handles optional milliseconds") {
    CHECK(parse_timestamp_ms("09:30:00.000") == 34200000);
    CHECK(parse_timestamp_ms("09:30:00.123") == 34200123);
    CHECK(parse_timestamp_ms("09:30:00") == 34200000);
    CHECK(parse_timestamp_ms("00:00:00") == 0);
    CHECK(parse_timestamp_ms("23:59:59.999") == 86399999);
    CHECK_THROWS_AS(parse_timestamp_ms("24:00:00"), DomainError);
    CHECK_THROWS_AS(parse_timestamp_ms("09:60:00"), DomainError);
    CHECK_THROWS_AS(parse_timestamp_ms("junk"), DomainError);
}

TEST_CASE("format_timestamp round-trips") {
    for (std::int64_t ms : {0LL, 34200000LL, 34200123LL, 86399999LL})
        CHECK(parse_timestamp_ms(format_timestamp(ms)) == ms);
    CHECK(format_timestamp(34200123) == "09:30:00.123");
}

TEST_CASE("parse_ticks_file reports missing files as IoError") {
    CHECK_THROWS_AS(parse_ticks_file("/nonexistent/nowhere.csv"), IoError);
}
