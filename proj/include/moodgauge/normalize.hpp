#pragma once

#include <span>

#include "moodgauge/core.hpp"

namespace moodgauge {

/// floor(100 * price / max_price) computed exactly for any finite doubles
/// with 0 <= price <= max_price and max_price > 0. The quotient never sees
/// floating-point rounding: both operands are decomposed into integer
/// mantissas and the floor is taken with 64-bit integer division.
int normalized_level(double price, double max_price);

/// Maps raw prices onto [0,100]. The position of the raw maximum becomes
/// exactly 100 (earliest position on ties); every other entry is the exact
/// integer part of 100 * raw[t] / max(raw).
///
/// Throws mood_error{all_zero_prices} when max(raw) == 0 and
/// mood_error{out_of_range} on negative or non-finite inputs.
NormalizedSeries normalize_prices(std::span<const double> raw);

}  // namespace moodgauge
