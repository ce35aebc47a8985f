#include "moodgauge/core.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace moodgauge {

std::string_view error_code_name(errc code) {
    switch (code) {
        case errc::malformed_row: return "malformed_row";
        case errc::out_of_range: return "out_of_range";
        case errc::non_monotone_dates: return "non_monotone_dates";
        case errc::empty_series: return "empty_series";
        case errc::all_zero: return "all_zero";
        case errc::insufficient_overlap: return "insufficient_overlap";
        case errc::search_gap: return "search_gap";
        case errc::country_empty: return "country_empty";
        case errc::io_error: return "io_error";
        case errc::all_zero_prices: return "all_zero_prices";
        case errc::index_out_of_range: return "index_out_of_range";
        case errc::empty_input: return "empty_input";
        case errc::shape_mismatch: return "shape_mismatch";
        case errc::non_finite_cell: return "non_finite_cell";
        case errc::bad_grid: return "bad_grid";
        case errc::out_of_domain: return "out_of_domain";
        case errc::zero_total: return "zero_total";
        case errc::bad_config: return "bad_config";
        case errc::week_overfull: return "week_overfull";
        case errc::invariant_violation: return "invariant_violation";
        case errc::search_max_below_100: return "search_max_below_100";
    }
    return "unknown";
}

bool is_warning(errc code) {
    return code == errc::search_max_below_100;
}

std::string IsoWeek::label() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", year, week);
    return buf;
}

TradingDate::TradingDate(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                       std::chrono::day{day}};
    if (!ymd.ok()) {
        throw mood_error(errc::malformed_row, "invalid calendar date");
    }
    day_ = sys_days{ymd};
}

TradingDate TradingDate::parse(std::string_view text, const std::string& format) {
    std::tm tm{};
    std::istringstream in{std::string(text)};
    in >> std::get_time(&tm, format.c_str());
    if (in.fail()) {
        throw mood_error(errc::malformed_row,
                         "unparseable date '" + std::string(text) + "'");
    }
    // get_time must consume the whole field; trailing junk is a bad row.
    in.peek();
    if (!in.eof()) {
        throw mood_error(errc::malformed_row,
                         "trailing characters in date '" + std::string(text) + "'");
    }
    return TradingDate(tm.tm_year + 1900, static_cast<unsigned>(tm.tm_mon + 1),
                       static_cast<unsigned>(tm.tm_mday));
}

unsigned TradingDate::iso_weekday() const {
    return std::chrono::weekday{day_}.iso_encoding();
}

IsoWeek TradingDate::iso_week() const {
    using namespace std::chrono;
    // The ISO week of a date is the week of its Thursday; the week-based
    // year is the civil year of that Thursday.
    sys_days thursday = day_ + days{4 - static_cast<int>(iso_weekday())};
    year_month_day thu_ymd{thursday};
    sys_days jan1{thu_ymd.year() / January / 1};
    int week = static_cast<int>((thursday - jan1).count()) / 7 + 1;
    return IsoWeek{static_cast<int>(thu_ymd.year()), week};
}

std::string TradingDate::to_string() const {
    std::chrono::year_month_day ymd{day_};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

ObservationSeries::ObservationSeries(SeriesKind kind, std::vector<Observation> points)
    : kind_(kind), points_(std::move(points)) {
    if (points_.empty()) {
        throw mood_error(errc::empty_series, "series has no observations");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double v = points_[i].value;
        if (!std::isfinite(v) || v < 0.0) {
            throw mood_error(errc::out_of_range,
                             "value at " + points_[i].date.to_string() +
                                 " is negative or not finite");
        }
        if (kind_ == SeriesKind::search &&
            (v > 100.0 || v != std::floor(v))) {
            throw mood_error(errc::out_of_range,
                             "search value at " + points_[i].date.to_string() +
                                 " is not an integer in [0,100]");
        }
        if (i > 0 && !(points_[i - 1].date < points_[i].date)) {
            throw mood_error(errc::non_monotone_dates,
                             "dates not strictly increasing at " +
                                 points_[i].date.to_string());
        }
    }
}

NormalizedSeries::NormalizedSeries(std::vector<int> values, std::size_t argmax_index)
    : values_(std::move(values)), argmax_index_(argmax_index) {
    if (values_.empty() || argmax_index_ >= values_.size()) {
        throw mood_error(errc::invariant_violation, "bad normalized series shape");
    }
    if (values_[argmax_index_] != 100) {
        throw mood_error(errc::invariant_violation,
                         "normalized maximum is not 100");
    }
    for (int v : values_) {
        if (v < 0 || v > 100) {
            throw mood_error(errc::invariant_violation,
                             "normalized value outside [0,100]");
        }
    }
}

CountryCode::CountryCode(std::string code) : code_(std::move(code)) {
    bool ok = code_.size() == 3;
    for (char c : code_) {
        ok = ok && c >= 'A' && c <= 'Z';
    }
    if (!ok) {
        throw mood_error(errc::bad_config,
                         "country code '" + code_ + "' is not three uppercase letters");
    }
}

AlignedPair::AlignedPair(CountryCode country, std::string index_id,
                         std::vector<TradingDate> dates, std::vector<int> search,
                         NormalizedSeries price)
    : country_(std::move(country)),
      index_id_(std::move(index_id)),
      dates_(std::move(dates)),
      search_(std::move(search)),
      price_(std::move(price)) {
    const std::size_t t = dates_.size();
    if (t < 2) {
        throw mood_error(errc::insufficient_overlap, "aligned grid shorter than 2 days");
    }
    if (search_.size() != t || price_.size() != t) {
        throw mood_error(errc::invariant_violation, "aligned columns differ in length");
    }
    bool any_positive = false;
    for (std::size_t i = 0; i < t; ++i) {
        if (search_[i] < 0 || search_[i] > 100) {
            throw mood_error(errc::out_of_range, "search value outside [0,100]");
        }
        any_positive = any_positive || search_[i] > 0;
        if (i > 0 && !(dates_[i - 1] < dates_[i])) {
            throw mood_error(errc::non_monotone_dates, "aligned dates not increasing");
        }
    }
    if (!any_positive) {
        throw mood_error(errc::all_zero, "aligned search series is identically zero");
    }
}

bool AlignedPair::search_max_below_100() const {
    for (int v : search_) {
        if (v == 100) return false;
    }
    return true;
}

CountryPanel::CountryPanel(CountryCode country, std::vector<AlignedPair> pairs)
    : country_(std::move(country)), pairs_(std::move(pairs)) {
    if (pairs_.empty()) {
        throw mood_error(errc::country_empty,
                         "country " + country_.str() + " has no aligned pairs");
    }
    for (const AlignedPair& pair : pairs_) {
        if (pair.country() != country_) {
            throw mood_error(errc::invariant_violation,
                             "pair country differs from panel country");
        }
    }
}

std::string_view mood_label_name(MoodLabel label) {
    switch (label) {
        case MoodLabel::strong_optimism: return "strong_optimism";
        case MoodLabel::mild_optimism: return "mild_optimism";
        case MoodLabel::neutral: return "neutral";
        case MoodLabel::mild_pessimism: return "mild_pessimism";
        case MoodLabel::strong_pessimism: return "strong_pessimism";
    }
    return "unknown";
}

}  // namespace moodgauge
