#pragma once

// Test-side oracles, deliberately independent of the library code paths:
// big-integer rational arithmetic for the normalization floor, naive loops
// for the variation indicators, and Sakamoto weekday / manual day-of-year
// arithmetic for the calendar.

#include <cmath>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "moodgauge/core.hpp"
#include "moodgauge/normalize.hpp"

namespace oracles {

/// floor(100 * p / m) over exact rationals: each finite double is taken
/// apart into integer mantissa and power of two, and the quotient floor is
/// computed with arbitrary-precision integers.
inline int floor_ratio(double p, double m) {
    using boost::multiprecision::cpp_int;
    if (p == 0.0) return 0;
    int pe = 0;
    int me = 0;
    const double pf = std::frexp(p, &pe);
    const double mf = std::frexp(m, &me);
    cpp_int num = 100 * cpp_int{static_cast<long long>(std::ldexp(pf, 53))};
    cpp_int den{static_cast<long long>(std::ldexp(mf, 53))};
    const int shift = (pe - 53) - (me - 53);
    if (shift >= 0) {
        num <<= shift;
    } else {
        den <<= -shift;
    }
    return static_cast<int>(num / den);
}

inline int sign_step(int from, int to, int zeta) {
    const int diff = to - from;
    if (diff > zeta) return 1;
    if (diff < -zeta) return -1;
    return 0;
}

inline double h_brute(const std::vector<int>& w, const std::vector<int>& p, int zeta) {
    const long long n = static_cast<long long>(w.size()) - 1;
    long long sum = 0;
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
        sum += sign_step(w[t], w[t + 1], zeta) - sign_step(p[t], p[t + 1], zeta);
    }
    return static_cast<double>(sum + 2 * n) / static_cast<double>(4 * n);
}

inline double r_brute(const std::vector<int>& w, const std::vector<int>& p, int zeta) {
    const long long n = static_cast<long long>(w.size()) - 1;
    long long plus2 = 0;
    long long minus2 = 0;
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
        const int d = sign_step(w[t], w[t + 1], zeta) - sign_step(p[t], p[t + 1], zeta);
        if (d == 2) ++plus2;
        if (d == -2) ++minus2;
    }
    return static_cast<double>(plus2 - minus2 + n) / static_cast<double>(2 * n);
}

/// Sakamoto's algorithm; 1 = Monday .. 7 = Sunday.
inline int weekday_brute(int y, int m, int d) {
    static const int offsets[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    if (m < 3) y -= 1;
    const int sunday0 = (y + y / 4 - y / 100 + y / 400 + offsets[m - 1] + d) % 7;
    return sunday0 == 0 ? 7 : sunday0;
}

inline bool leap_year(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline int day_of_year(int y, int m, int d) {
    static const int lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int doy = d;
    for (int i = 0; i < m - 1; ++i) doy += lens[i];
    if (m > 2 && leap_year(y)) doy += 1;
    return doy;
}

/// ISO week via the standard day-of-year formula, no calendar library.
inline std::pair<int, int> iso_week_brute(int y, int m, int d) {
    const int week = (day_of_year(y, m, d) - weekday_brute(y, m, d) + 10) / 7;
    if (week < 1) {
        const int py = y - 1;
        const int pw = (day_of_year(py, 12, 31) - weekday_brute(py, 12, 31) + 10) / 7;
        return {py, pw};
    }
    if (week > 52) {
        // week 53 exists only when Dec 31 falls on Thursday (or Wednesday in
        // a leap year); otherwise the date belongs to week 1 of next year.
        const int wd31 = weekday_brute(y, 12, 31);
        if (wd31 < 4) return {y + 1, 1};
    }
    return {y, week};
}

/// Random aligned pair on consecutive weekdays. The search column gets at
/// least one strictly positive value; prices go through the production
/// normalizer (the pair type requires a normalized column).
inline moodgauge::AlignedPair random_pair(std::mt19937& rng, int min_len = 10,
                                          int max_len = 300) {
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::uniform_int_distribution<int> search_dist(0, 100);
    std::uniform_real_distribution<double> price_dist(1.0, 50000.0);
    std::uniform_int_distribution<int> day_offset(0, 3000);

    const int len = len_dist(rng);
    std::vector<moodgauge::TradingDate> dates;
    std::chrono::sys_days day =
        std::chrono::sys_days{std::chrono::year{2019} / 1 / 7} +
        std::chrono::days{day_offset(rng) * 7};
    while (static_cast<int>(dates.size()) < len) {
        const unsigned wd = std::chrono::weekday{day}.iso_encoding();
        if (wd <= 5) dates.emplace_back(day);
        day += std::chrono::days{1};
    }

    std::vector<int> search(dates.size());
    bool any = false;
    for (int& v : search) {
        v = search_dist(rng);
        any = any || v > 0;
    }
    if (!any) search[search.size() / 2] = 37;

    std::vector<double> prices(dates.size());
    for (double& v : prices) v = price_dist(rng);

    return moodgauge::AlignedPair{moodgauge::CountryCode{"ZZZ"}, "TEST",
                                  std::move(dates), std::move(search),
                                  moodgauge::normalize_prices(prices)};
}

}  // namespace oracles
