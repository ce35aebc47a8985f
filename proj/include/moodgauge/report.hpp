#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moodgauge/core.hpp"

namespace moodgauge {

/// One week's leaderboard: countries in non-increasing value order, ranks
/// consecutive from 1, ties broken by ascending country code.
struct WeeklyRanking {
    struct Row {
        int rank{0};
        CountryCode country;
        double value{0.0};
    };

    std::string week;
    std::vector<Row> rows;
};

WeeklyRanking rank_week(const std::map<CountryCode, double>& scores,
                        const std::string& week_label);

struct SummaryStats {
    std::size_t n_obs{0};
    double min{0.0};
    double max{0.0};
    double mean{0.0};
    double std_dev{0.0};  // population form (divisor n)
};

SummaryStats summarize(std::span<const double> values);

enum class HalfSide { above, below };

/// Share of values strictly beyond one half on the given side.
double fraction_beyond_half(std::span<const double> values, HalfSide side);

/// Labelled matrix with optional cells. An absent cell means "series not
/// started yet", which is different from a zero value and stays empty in
/// every serialization.
struct Matrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::optional<double>> cells;  // row-major

    static Matrix with_shape(std::vector<std::string> rows,
                             std::vector<std::string> cols);

    std::optional<double>& at(std::size_t row, std::size_t col);
    const std::optional<double>& at(std::size_t row, std::size_t col) const;
};

/// RFC-4180 serialization: first row is the column labels behind an empty
/// corner field, first column the row labels, absent cells empty fields.
/// Numbers are written in shortest round-trip form, so emit -> parse ->
/// emit is byte-identical.
std::string emit_matrix_csv(const Matrix& matrix);

Matrix parse_matrix_csv(std::string_view csv_bytes);

/// Standalone SVG heatmap: one rect per present cell, colored on a
/// diverging scale centered at 0.5 (blue below, red above), absent cells
/// left transparent, legend included. Output is a pure function of the
/// input. Cells must lie in [0,1]; non-finite cells are rejected.
std::string emit_heatmap_svg(const Matrix& matrix);

std::string rankings_csv(std::span<const WeeklyRanking> rankings);

struct SummaryRow {
    std::string series;   // which family of values (search, price_norm, ...)
    std::string subject;  // country or country/index the row describes
    SummaryStats stats;
};

std::string summary_stats_csv(std::span<const SummaryRow> rows);

}  // namespace moodgauge
