#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moodgauge/core.hpp"

namespace moodgauge {

/// A contiguous run of trading days, addressed with the 1-based inclusive
/// grid positions the indicator definitions use. Holds at most five trading
/// days (one calendar week of a 5-day market).
struct Window {
    std::size_t first{1};
    std::size_t last{1};
    IsoWeek label;

    Window(std::size_t first_pos, std::size_t last_pos, IsoWeek week_label);

    std::size_t length() const { return last - first + 1; }

    bool operator==(const Window&) const = default;
};

/// Per-index values for one window plus their country-level mean.
struct MoodWindowScore {
    Window window;
    std::vector<std::pair<std::string, double>> per_index;
    double country_value{0.0};

    MoodWindowScore(Window w, std::vector<std::pair<std::string, double>> values);
};

/// Full-period totals of the two aligned columns. Both are positive for any
/// valid pair.
PairAggregates pair_aggregates(const AlignedPair& pair);

/// Exact fraction form of the windowed mood measure over positions
/// [first, last]: (price-mass share minus search-mass share, affinely mapped
/// into [0,1]). Numerator and denominator are exact integers; summing the
/// numerators over a partition of the whole grid gives exactly zero drift.
RatioParts mood_window_parts(std::span<const int> search, std::span<const int> price,
                             const PairAggregates& totals, std::size_t first,
                             std::size_t last);

/// The windowed mood measure as a double in [0,1]. Values above one half
/// read as optimism (price mass outweighs search mass), below as pessimism.
double mood_window_index(const AlignedPair& pair, const PairAggregates& totals,
                         std::size_t first, std::size_t last);

double mood_window_index(const AlignedPair& pair, const PairAggregates& totals,
                         const Window& window);

/// Arithmetic mean of the per-market window values of one country.
double country_mood_window(std::span<const double> per_index_values);

/// Partitions the pair's grid by the ISO-8601 calendar week of each trading
/// date. Windows come back in chronological order; a week with six or more
/// trading days is rejected (the tool models 5-day trading calendars).
std::vector<Window> weekly_windows(const AlignedPair& pair);

/// Alternative windowing: consecutive runs of exactly five trading days from
/// the start of the grid (the tail window may be shorter). Each window is
/// labelled with the ISO week of its first day; labels stay unique under the
/// same 5-day-calendar restriction weekly_windows enforces.
std::vector<Window> fixed_windows(const AlignedPair& pair);

}  // namespace moodgauge
