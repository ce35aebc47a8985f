#include "moodgauge/normalize.hpp"

#include <cmath>
#include <cstdint>

namespace moodgauge {

namespace {

struct MantissaExp {
    std::uint64_t mantissa;  // in [2^52, 2^53) for positive input
    int exponent;            // value = mantissa * 2^exponent
};

MantissaExp decompose(double value) {
    int exp = 0;
    const double frac = std::frexp(value, &exp);  // frac in [0.5, 1)
    return MantissaExp{static_cast<std::uint64_t>(std::ldexp(frac, 53)), exp - 53};
}

}  // namespace

int normalized_level(double price, double max_price) {
    if (!(std::isfinite(price) && std::isfinite(max_price)) || price < 0.0 ||
        max_price <= 0.0) {
        throw mood_error(errc::out_of_range, "prices must be finite and nonnegative");
    }
    if (price > max_price) {
        throw mood_error(errc::invariant_violation, "price exceeds stated maximum");
    }
    if (price == max_price) return 100;
    if (price == 0.0) return 0;

    const MantissaExp p = decompose(price);
    const MantissaExp m = decompose(max_price);
    // price < max_price and both mantissas are in [2^52, 2^53), so the
    // exponent gap is nonnegative.
    const int gap = m.exponent - p.exponent;
    if (gap >= 8) return 0;  // ratio below 2^-7, so 100 * ratio < 1
    const std::uint64_t numerator = 100 * p.mantissa;          // < 2^60
    const std::uint64_t denominator = m.mantissa << gap;       // < 2^60
    return static_cast<int>(numerator / denominator);
}

NormalizedSeries normalize_prices(std::span<const double> raw) {
    if (raw.empty()) {
        throw mood_error(errc::empty_series, "no prices to normalize");
    }
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i]) || raw[i] < 0.0) {
            throw mood_error(errc::out_of_range, "price is negative or not finite");
        }
        if (raw[i] > raw[argmax]) argmax = i;
    }
    if (raw[argmax] == 0.0) {
        throw mood_error(errc::all_zero_prices, "all prices are zero");
    }
    std::vector<int> levels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        levels[i] = normalized_level(raw[i], raw[argmax]);
    }
    return NormalizedSeries(std::move(levels), argmax);
}

}  // namespace moodgauge
