#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moodgauge {

/// Stable error codes. The string form (error_code_name) is part of the
/// diagnostics CSV contract and must not change meaning between releases.
enum class errc {
    malformed_row,
    out_of_range,
    non_monotone_dates,
    empty_series,
    all_zero,
    insufficient_overlap,
    search_gap,
    country_empty,
    io_error,
    all_zero_prices,
    index_out_of_range,
    empty_input,
    shape_mismatch,
    non_finite_cell,
    bad_grid,
    out_of_domain,
    zero_total,
    bad_config,
    week_overfull,
    invariant_violation,
    // warning-only code: pair's aligned search series never reaches 100
    search_max_below_100,
};

std::string_view error_code_name(errc code);

/// True for codes that flag a pair without invalidating it.
bool is_warning(errc code);

class mood_error : public std::runtime_error {
public:
    mood_error(errc code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// ISO-8601 calendar week identity (week-based year + week number 1..53).
struct IsoWeek {
    int year{0};
    int week{0};

    auto operator<=>(const IsoWeek&) const = default;

    /// "2020-W07" form; zero-padded so labels sort chronologically as text.
    std::string label() const;
};

/// A single calendar day on the trading grid. Day precision, totally ordered.
class TradingDate {
public:
    TradingDate() = default;
    explicit TradingDate(std::chrono::sys_days day) : day_(day) {}
    TradingDate(int year, unsigned month, unsigned day);

    /// Parses with an std::get_time format string ("%Y-%m-%d" and friends).
    /// Throws mood_error{malformed_row} on anything that is not a real date.
    static TradingDate parse(std::string_view text, const std::string& format);

    std::chrono::sys_days day() const { return day_; }

    /// 1 = Monday .. 7 = Sunday.
    unsigned iso_weekday() const;

    IsoWeek iso_week() const;

    std::string to_string() const;  // always YYYY-MM-DD

    auto operator<=>(const TradingDate&) const = default;

private:
    std::chrono::sys_days day_{};
};

enum class SeriesKind { search, price };

struct Observation {
    TradingDate date;
    double value{0.0};

    bool operator==(const Observation&) const = default;
};

/// Dated sequence of values. Dates strictly increase; search values are
/// integers in [0,100], price values nonnegative reals. Never empty.
class ObservationSeries {
public:
    ObservationSeries(SeriesKind kind, std::vector<Observation> points);

    SeriesKind kind() const { return kind_; }
    const std::vector<Observation>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Observation& front() const { return points_.front(); }
    const Observation& back() const { return points_.back(); }

    bool operator==(const ObservationSeries&) const = default;

private:
    SeriesKind kind_;
    std::vector<Observation> points_;
};

/// Prices mapped onto the integer range [0,100]; the grid position of the
/// raw-price maximum is recorded and always carries the value 100.
class NormalizedSeries {
public:
    NormalizedSeries(std::vector<int> values, std::size_t argmax_index);

    const std::vector<int>& values() const { return values_; }
    std::size_t argmax_index() const { return argmax_index_; }
    std::size_t size() const { return values_.size(); }

    bool operator==(const NormalizedSeries&) const = default;

private:
    std::vector<int> values_;
    std::size_t argmax_index_;
};

/// ISO 3166-1 alpha-3 style code: exactly three uppercase letters.
class CountryCode {
public:
    explicit CountryCode(std::string code);

    const std::string& str() const { return code_; }

    auto operator<=>(const CountryCode&) const = default;

private:
    std::string code_;
};

/// One (country, stock index) pair on a common trading-day grid of length T.
/// The grid is the intersection of the search and price date sets, restricted
/// to dates on or after the first nonnull search day. The search series keeps
/// Google's own 0..100 normalization; the price series is normalized here.
class AlignedPair {
public:
    AlignedPair(CountryCode country, std::string index_id,
                std::vector<TradingDate> dates, std::vector<int> search,
                NormalizedSeries price);

    const CountryCode& country() const { return country_; }
    const std::string& index_id() const { return index_id_; }
    const std::vector<TradingDate>& dates() const { return dates_; }
    const std::vector<int>& search() const { return search_; }
    const NormalizedSeries& price() const { return price_; }
    std::size_t length() const { return dates_.size(); }

    /// True when the aligned search series never reaches 100, i.e. the
    /// provider-side maximum fell on a non-trading day. Reported, not fixed.
    bool search_max_below_100() const;

    bool operator==(const AlignedPair&) const = default;

private:
    CountryCode country_;
    std::string index_id_;
    std::vector<TradingDate> dates_;
    std::vector<int> search_;
    NormalizedSeries price_;
};

/// Totals over the full grid: search mass and normalized-price mass.
struct PairAggregates {
    long long search_total{0};
    long long price_total{0};

    bool operator==(const PairAggregates&) const = default;
};

/// All surviving pairs of one country.
class CountryPanel {
public:
    CountryPanel(CountryCode country, std::vector<AlignedPair> pairs);

    const CountryCode& country() const { return country_; }
    const std::vector<AlignedPair>& pairs() const { return pairs_; }
    std::size_t market_count() const { return pairs_.size(); }

    bool operator==(const CountryPanel&) const = default;

private:
    CountryCode country_;
    std::vector<AlignedPair> pairs_;
};

/// Joint-variation classes. Numeric values coincide with the joint variation
/// they classify, so the mapping is bijective with {-2,-1,0,1,2}.
enum class MoodLabel : int {
    strong_optimism = -2,
    mild_optimism = -1,
    neutral = 0,
    mild_pessimism = 1,
    strong_pessimism = 2,
};

std::string_view mood_label_name(MoodLabel label);

/// An indicator value as an exact integer fraction, before the single
/// final division. Keeps identities (complements, additivity) exact.
struct RatioParts {
    long long num{0};
    long long den{1};

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const RatioParts&) const = default;
};

}  // namespace moodgauge
