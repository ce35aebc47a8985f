#include "moodgauge/temporal.hpp"

#include <algorithm>

namespace moodgauge {

Window::Window(std::size_t first_pos, std::size_t last_pos, IsoWeek week_label)
    : first(first_pos), last(last_pos), label(week_label) {
    if (first < 1 || first > last) {
        throw mood_error(errc::index_out_of_range, "window bounds out of order");
    }
    if (length() > 5) {
        throw mood_error(errc::week_overfull,
                         "window spans more than five trading days");
    }
}

MoodWindowScore::MoodWindowScore(Window w,
                                 std::vector<std::pair<std::string, double>> values)
    : window(std::move(w)), per_index(std::move(values)) {
    if (per_index.empty()) {
        throw mood_error(errc::empty_input, "window score needs at least one market");
    }
    double sum = 0.0;
    for (const auto& [id, value] : per_index) sum += value;
    country_value = sum / static_cast<double>(per_index.size());
}

PairAggregates pair_aggregates(const AlignedPair& pair) {
    long long search_total = 0;
    long long price_total = 0;
    for (int v : pair.search()) search_total += v;
    for (int v : pair.price().values()) price_total += v;
    if (search_total <= 0 || price_total <= 0) {
        // unreachable for a valid AlignedPair, kept as a hard stop
        throw mood_error(errc::zero_total, "pair has zero total mass");
    }
    return PairAggregates{search_total, price_total};
}

RatioParts mood_window_parts(std::span<const int> search, std::span<const int> price,
                             const PairAggregates& totals, std::size_t first,
                             std::size_t last) {
    const std::size_t t = search.size();
    if (price.size() != t) {
        throw mood_error(errc::shape_mismatch, "series lengths differ");
    }
    if (first < 1 || first > last || last > t) {
        throw mood_error(errc::index_out_of_range, "window outside grid");
    }
    long long search_sum = 0;
    long long price_sum = 0;
    for (std::size_t s = first - 1; s < last; ++s) {
        search_sum += search[s];
        price_sum += price[s];
    }
    // 1/2 * (price_sum/P - search_sum/W) + 1/2 over the common denominator
    // 2*W*P. Exact as long longs; the full grid gives num == den/2 exactly.
    const long long w_total = totals.search_total;
    const long long p_total = totals.price_total;
    const long long den = 2 * w_total * p_total;
    const long long num = price_sum * w_total - search_sum * p_total + w_total * p_total;
    return RatioParts{num, den};
}

double mood_window_index(const AlignedPair& pair, const PairAggregates& totals,
                         std::size_t first, std::size_t last) {
    return mood_window_parts(pair.search(), pair.price().values(), totals, first, last)
        .value();
}

double mood_window_index(const AlignedPair& pair, const PairAggregates& totals,
                         const Window& window) {
    return mood_window_index(pair, totals, window.first, window.last);
}

double country_mood_window(std::span<const double> per_index_values) {
    if (per_index_values.empty()) {
        throw mood_error(errc::empty_input, "no per-market values to average");
    }
    double sum = 0.0;
    for (double v : per_index_values) sum += v;
    return sum / static_cast<double>(per_index_values.size());
}

namespace {

// Shared grid sanity check: at most five trading days per ISO week.
void require_five_day_weeks(const AlignedPair& pair) {
    const auto& dates = pair.dates();
    std::size_t run = 1;
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i].iso_week() == dates[i - 1].iso_week()) {
            if (++run > 5) {
                throw mood_error(errc::week_overfull,
                                 "more than five trading days in week " +
                                     dates[i].iso_week().label());
            }
        } else {
            run = 1;
        }
    }
}

}  // namespace

std::vector<Window> weekly_windows(const AlignedPair& pair) {
    require_five_day_weeks(pair);
    const auto& dates = pair.dates();
    std::vector<Window> windows;
    std::size_t start = 1;
    IsoWeek current = dates.front().iso_week();
    for (std::size_t i = 1; i < dates.size(); ++i) {
        IsoWeek week = dates[i].iso_week();
        if (week != current) {
            windows.emplace_back(start, i, current);
            start = i + 1;
            current = week;
        }
    }
    windows.emplace_back(start, dates.size(), current);
    return windows;
}

std::vector<Window> fixed_windows(const AlignedPair& pair) {
    require_five_day_weeks(pair);
    const auto& dates = pair.dates();
    std::vector<Window> windows;
    for (std::size_t start = 1; start <= dates.size(); start += 5) {
        const std::size_t stop = std::min(start + 4, dates.size());
        windows.emplace_back(start, stop, dates[start - 1].iso_week());
    }
    return windows;
}

}  // namespace moodgauge
