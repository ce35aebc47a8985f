#pragma once

#include <span>
#include <string>
#include <vector>

#include "moodgauge/core.hpp"

namespace moodgauge {

/// Ternary sign of the one-step change x(t+1) - x(t) against threshold zeta:
/// +1 above +zeta, -1 below -zeta, 0 inside the closed band [-zeta, zeta].
/// Positions are 1-based; valid t runs from 1 to T-1.
int sign_variation(std::span<const int> series, std::size_t t, int zeta);

/// Joint variation at t: sign of the search step minus sign of the price
/// step, in {-2,...,+2}. Positive values pair rising attention with falling
/// prices (pessimism); negative values the reverse.
int joint_variation(std::span<const int> search, std::span<const int> price,
                    std::size_t t, int zeta);

int joint_variation(const AlignedPair& pair, std::size_t t, int zeta);

/// Bijective mapping of the joint-variation value set onto mood classes.
MoodLabel classify_delta(int delta);

/// Aggregated mood over the whole grid as an exact fraction:
/// (sum of joint variations + 2(T-1)) over 4(T-1). Zero reads as maximal
/// optimism, one as maximal pessimism, one half as neutrality.
RatioParts h_parts(std::span<const int> search, std::span<const int> price, int zeta);

double h_index(const AlignedPair& pair, int zeta);

/// Ratio of fully pessimistic to fully optimistic days as an exact fraction:
/// (count(delta=+2) - count(delta=-2) + (T-1)) over 2(T-1).
RatioParts r_parts(std::span<const int> search, std::span<const int> price, int zeta);

double r_index(const AlignedPair& pair, int zeta);

/// Arithmetic mean of per-market indicator values.
double country_mean(std::span<const double> per_index_values);

/// Indicator values for every (market, threshold) cell of one country,
/// plus their per-threshold country means.
struct ThresholdProfile {
    std::vector<int> zeta_grid;
    std::vector<std::string> index_ids;
    std::vector<std::vector<double>> index_h;  // [market][threshold]
    std::vector<std::vector<double>> index_r;
    std::vector<double> country_h;  // [threshold]
    std::vector<double> country_r;
};

/// The default sweep grid 0,1,...,50.
std::vector<int> default_zeta_grid();

/// Evaluates H and R for every market of the panel at every threshold of the
/// grid. The grid must be strictly increasing integers within [0,100].
/// Results are a pure function of the inputs, independent of evaluation
/// order, so callers may sweep distinct countries concurrently.
ThresholdProfile zeta_sweep(const CountryPanel& panel, std::span<const int> grid);

}  // namespace moodgauge
