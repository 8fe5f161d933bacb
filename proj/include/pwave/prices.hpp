#pragma once

#include <cstdint>
#include <string>

namespace pwave {

// Prices are carried as integer thousandths of a currency unit ("mils") so
// that three-decimal tick prices and both snapping grids stay exact. A cent
// is 10 mils, a half-cent step is 5.
using PriceMils = std::int64_t;

inline constexpr PriceMils kMilsPerCent = 10;
inline constexpr PriceMils kMilsPerHalfCent = 5;

enum class GridMode { TwoDecimal, HalfCent };

// Round-half-up to the cent grid: .xx5 and above goes up.
PriceMils snap_two_decimal(PriceMils p);

// Half-cent grid on the third decimal digit d:
//   d in {0,1,2} -> .xx0, d in {3..7} -> .xx5, d in {8,9} -> next cent.
PriceMils snap_half_cent(PriceMils p);

PriceMils snap_price(PriceMils p, GridMode mode);

// Grid step in mils for a mode.
inline PriceMils grid_step(GridMode mode) {
    return mode == GridMode::TwoDecimal ? kMilsPerCent : kMilsPerHalfCent;
}

inline double to_currency(PriceMils p) { return static_cast<double>(p) / 1000.0; }

// Parse a decimal price with at most 3 fraction digits into mils.
// Throws DomainError on malformed text, more than 3 decimals, or p <= 0.
PriceMils parse_price_mils(const std::string& text);

// Render mils as a decimal string with exactly 3 fraction digits.
std::string format_price(PriceMils p);

}  // namespace pwave
