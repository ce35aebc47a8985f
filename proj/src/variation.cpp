#include "moodgauge/variation.hpp"

namespace moodgauge {

namespace {

void require_zeta(int zeta) {
    if (zeta < 0 || zeta > 100) {
        throw mood_error(errc::out_of_range, "threshold outside [0,100]");
    }
}

int step_sign(int next, int current, int zeta) {
    const int diff = next - current;
    if (diff > zeta) return 1;
    if (diff < -zeta) return -1;
    return 0;
}

}  // namespace

int sign_variation(std::span<const int> series, std::size_t t, int zeta) {
    require_zeta(zeta);
    if (t < 1 || t + 1 > series.size()) {
        throw mood_error(errc::index_out_of_range, "step index outside 1..T-1");
    }
    return step_sign(series[t], series[t - 1], zeta);
}

int joint_variation(std::span<const int> search, std::span<const int> price,
                    std::size_t t, int zeta) {
    if (search.size() != price.size()) {
        throw mood_error(errc::shape_mismatch, "series lengths differ");
    }
    return sign_variation(search, t, zeta) - sign_variation(price, t, zeta);
}

int joint_variation(const AlignedPair& pair, std::size_t t, int zeta) {
    return joint_variation(pair.search(), pair.price().values(), t, zeta);
}

MoodLabel classify_delta(int delta) {
    if (delta < -2 || delta > 2) {
        throw mood_error(errc::out_of_domain, "joint variation outside {-2..2}");
    }
    return static_cast<MoodLabel>(delta);
}

RatioParts h_parts(std::span<const int> search, std::span<const int> price, int zeta) {
    require_zeta(zeta);
    if (search.size() != price.size() || search.size() < 2) {
        throw mood_error(errc::shape_mismatch, "need two equal-length series, T >= 2");
    }
    const long long steps = static_cast<long long>(search.size()) - 1;
    long long delta_sum = 0;
    for (std::size_t t = 1; t <= static_cast<std::size_t>(steps); ++t) {
        delta_sum += step_sign(search[t], search[t - 1], zeta) -
                     step_sign(price[t], price[t - 1], zeta);
    }
    return RatioParts{delta_sum + 2 * steps, 4 * steps};
}

double h_index(const AlignedPair& pair, int zeta) {
    return h_parts(pair.search(), pair.price().values(), zeta).value();
}

RatioParts r_parts(std::span<const int> search, std::span<const int> price, int zeta) {
    require_zeta(zeta);
    if (search.size() != price.size() || search.size() < 2) {
        throw mood_error(errc::shape_mismatch, "need two equal-length series, T >= 2");
    }
    const long long steps = static_cast<long long>(search.size()) - 1;
    long long pessimistic = 0;  // delta == +2
    long long optimistic = 0;   // delta == -2
    for (std::size_t t = 1; t <= static_cast<std::size_t>(steps); ++t) {
        const int delta = step_sign(search[t], search[t - 1], zeta) -
                          step_sign(price[t], price[t - 1], zeta);
        if (delta == 2) ++pessimistic;
        if (delta == -2) ++optimistic;
    }
    return RatioParts{pessimistic - optimistic + steps, 2 * steps};
}

double r_index(const AlignedPair& pair, int zeta) {
    return r_parts(pair.search(), pair.price().values(), zeta).value();
}

double country_mean(std::span<const double> per_index_values) {
    if (per_index_values.empty()) {
        throw mood_error(errc::empty_input, "no per-market values to average");
    }
    double sum = 0.0;
    for (double v : per_index_values) sum += v;
    return sum / static_cast<double>(per_index_values.size());
}

std::vector<int> default_zeta_grid() {
    std::vector<int> grid(51);
    for (int z = 0; z <= 50; ++z) grid[z] = z;
    return grid;
}

ThresholdProfile zeta_sweep(const CountryPanel& panel, std::span<const int> grid) {
    if (grid.empty()) {
        throw mood_error(errc::bad_grid, "threshold grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0 || grid[i] > 100) {
            throw mood_error(errc::bad_grid, "threshold outside [0,100]");
        }
        if (i > 0 && grid[i] <= grid[i - 1]) {
            throw mood_error(errc::bad_grid, "threshold grid not strictly increasing");
        }
    }

    ThresholdProfile profile;
    profile.zeta_grid.assign(grid.begin(), grid.end());
    for (const AlignedPair& pair : panel.pairs()) {
        profile.index_ids.push_back(pair.index_id());
        std::vector<double> h_row(grid.size());
        std::vector<double> r_row(grid.size());
        for (std::size_t zi = 0; zi < grid.size(); ++zi) {
            h_row[zi] = h_index(pair, grid[zi]);
            r_row[zi] = r_index(pair, grid[zi]);
        }
        profile.index_h.push_back(std::move(h_row));
        profile.index_r.push_back(std::move(r_row));
    }

    const std::size_t markets = profile.index_ids.size();
    profile.country_h.resize(grid.size());
    profile.country_r.resize(grid.size());
    std::vector<double> column(markets);
    for (std::size_t zi = 0; zi < grid.size(); ++zi) {
        for (std::size_t k = 0; k < markets; ++k) column[k] = profile.index_h[k][zi];
        profile.country_h[zi] = country_mean(column);
        for (std::size_t k = 0; k < markets; ++k) column[k] = profile.index_r[k][zi];
        profile.country_r[zi] = country_mean(column);
    }
    return profile;
}

}  // namespace moodgauge
