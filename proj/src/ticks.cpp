#include "pwave/ticks.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "pwave/errors.hpp"

namespace pwave {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

std::int64_t parse_timestamp_ms(const std::string& text) {
    int h = 0, m = 0, s = 0, ms = 0;
    char dot = 0;
    int n = std::sscanf(text.c_str(), "%d:%d:%d%c%3d", &h, &m, &s, &dot, &ms);
    if (n < 3 || (n >= 4 && dot != '.')) throw DomainError("bad timestamp: " + text);
    if (n == 4) throw DomainError("bad timestamp: " + text);
    if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59 || ms < 0 || ms > 999)
        throw DomainError("timestamp out of range: " + text);
    return ((h * 60LL + m) * 60 + s) * 1000 + ms;
}

std::string format_timestamp(std::int64_t t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld.%03lld",
                  static_cast<long long>(t / 3600000),
                  static_cast<long long>(t / 60000 % 60),
                  static_cast<long long>(t / 1000 % 60),
                  static_cast<long long>(t % 1000));
    return buf;
}

std::vector<DayTicks> parse_ticks(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput("no input");
    {
        auto cols = split_csv(line);
        if (cols.size() != 4 || trim(cols[0]) != "day" || trim(cols[1]) != "timestamp" ||
            trim(cols[2]) != "price" || trim(cols[3]) != "volume")
            throw ParseError("expected header day,timestamp,price,volume", 1);
    }

    std::map<std::string, std::vector<TickRecord>> days;
    long line_no = 1;
    long rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cols = split_csv(line);
        if (cols.size() != 4) throw ParseError("expected 4 fields", line_no);

        const std::string day = trim(cols[0]);
        if (!is_iso_date(day)) throw ParseError("bad date '" + day + "'", line_no);

        TickRecord rec;
        try {
            rec.timestamp_ms = parse_timestamp_ms(trim(cols[1]));
            rec.price = parse_price_mils(trim(cols[2]));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no);
        }

        const std::string vol = trim(cols[3]);
        try {
            size_t pos = 0;
            rec.volume = std::stoll(vol, &pos);
            if (pos != vol.size()) throw ParseError("bad volume '" + vol + "'", line_no);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad volume '" + vol + "'", line_no);
        }
        if (rec.volume < 0)
            throw DomainError("negative volume at line " + std::to_string(line_no));

        days[day].push_back(rec);
        ++rows;
    }
    if (rows == 0) throw EmptyInput("no data rows");

    std::vector<DayTicks> out;
    out.reserve(days.size());
    for (auto& [day, recs] : days) {
        std::stable_sort(recs.begin(), recs.end(),
                         [](const TickRecord& a, const TickRecord& b) {
                             return a.timestamp_ms < b.timestamp_ms;
                         });
        out.push_back(DayTicks{day, std::move(recs)});
    }
    return out;
}

std::vector<DayTicks> parse_ticks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_ticks(in);
}

}  // namespace pwave
