#include "pwave/prices.hpp"

#include <cctype>
#include <cstdio>

#include "pwave/errors.hpp"

namespace pwave {

PriceMils snap_two_decimal(PriceMils p) {
    const PriceMils d = p % kMilsPerCent;
    return p - d + (d >= 5 ? kMilsPerCent : 0);
}

PriceMils snap_half_cent(PriceMils p) {
    const PriceMils d = p % kMilsPerCent;
    if (d <= 2) return p - d;
    if (d <= 7) return p - d + kMilsPerHalfCent;
    return p - d + kMilsPerCent;
}

PriceMils snap_price(PriceMils p, GridMode mode) {
    return mode == GridMode::TwoDecimal ? snap_two_decimal(p) : snap_half_cent(p);
}

PriceMils parse_price_mils(const std::string& text) {
    const char* s = text.c_str();
    while (*s == ' ' || *s == '\t') ++s;
    if (*s == '\0') throw DomainError("empty price field");

    PriceMils whole = 0;
    bool any_digit = false;
    while (std::isdigit(static_cast<unsigned char>(*s))) {
        whole = whole * 10 + (*s - '0');
        if (whole > 1'000'000'000) throw DomainError("price out of range: " + text);
        any_digit = true;
        ++s;
    }
    PriceMils frac = 0;
    if (*s == '.') {
        ++s;
        int digits = 0;
        while (std::isdigit(static_cast<unsigned char>(*s))) {
            if (++digits > 3) throw DomainError("more than 3 price decimals: " + text);
            frac = frac * 10 + (*s - '0');
            any_digit = true;
            ++s;
        }
        for (; digits < 3; ++digits) frac *= 10;
    }
    while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
    if (*s != '\0' || !any_digit) throw DomainError("bad price: " + text);

    const PriceMils mils = whole * 1000 + frac;
    if (mils <= 0) throw DomainError("price must be positive: " + text);
    return mils;
}

std::string format_price(PriceMils p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(p / 1000),
                  static_cast<long long>(p % 1000));
    return buf;
}

}  // namespace pwave
