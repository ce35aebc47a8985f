#include "moodgauge/report.hpp"

#include <algorithm>
#include <cmath>

#include "moodgauge/csv_util.hpp"

namespace moodgauge {

WeeklyRanking rank_week(const std::map<CountryCode, double>& scores,
                        const std::string& week_label) {
    if (scores.empty()) {
        throw mood_error(errc::empty_input, "no scores to rank");
    }
    WeeklyRanking ranking;
    ranking.week = week_label;
    for (const auto& [country, value] : scores) {
        ranking.rows.push_back(WeeklyRanking::Row{0, country, value});
    }
    // The map iterates in ascending code order; a stable sort on value alone
    // therefore leaves ties ordered alphabetically.
    std::stable_sort(ranking.rows.begin(), ranking.rows.end(),
                     [](const auto& a, const auto& b) { return a.value > b.value; });
    for (std::size_t i = 0; i < ranking.rows.size(); ++i) {
        ranking.rows[i].rank = static_cast<int>(i) + 1;
    }
    return ranking;
}

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) {
        throw mood_error(errc::empty_input, "no values to summarize");
    }
    SummaryStats stats;
    stats.n_obs = values.size();
    stats.min = values.front();
    stats.max = values.front();
    double sum = 0.0;
    for (double v : values) {
        stats.min = std::min(stats.min, v);
        stats.max = std::max(stats.max, v);
        sum += v;
    }
    stats.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) {
        const double d = v - stats.mean;
        sq += d * d;
    }
    stats.std_dev = std::sqrt(sq / static_cast<double>(values.size()));
    return stats;
}

double fraction_beyond_half(std::span<const double> values, HalfSide side) {
    if (values.empty()) {
        throw mood_error(errc::empty_input, "no values to count");
    }
    std::size_t count = 0;
    for (double v : values) {
        if (side == HalfSide::above ? v > 0.5 : v < 0.5) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(values.size());
}

Matrix Matrix::with_shape(std::vector<std::string> rows, std::vector<std::string> cols) {
    Matrix m;
    m.row_labels = std::move(rows);
    m.col_labels = std::move(cols);
    m.cells.assign(m.row_labels.size() * m.col_labels.size(), std::nullopt);
    return m;
}

std::optional<double>& Matrix::at(std::size_t row, std::size_t col) {
    return cells[row * col_labels.size() + col];
}

const std::optional<double>& Matrix::at(std::size_t row, std::size_t col) const {
    return cells[row * col_labels.size() + col];
}

namespace {

void require_shape(const Matrix& matrix) {
    if (matrix.cells.size() != matrix.row_labels.size() * matrix.col_labels.size()) {
        throw mood_error(errc::shape_mismatch,
                         "cell count does not match labels");
    }
}

}  // namespace

std::string emit_matrix_csv(const Matrix& matrix) {
    require_shape(matrix);
    std::string out;
    for (const std::string& col : matrix.col_labels) {
        out += ',';
        out += csv::quote(col);
    }
    out += "\r\n";
    for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
        out += csv::quote(matrix.row_labels[r]);
        for (std::size_t c = 0; c < matrix.col_labels.size(); ++c) {
            out += ',';
            if (const auto& cell = matrix.at(r, c)) {
                out += csv::format_double(*cell);
            }
        }
        out += "\r\n";
    }
    return out;
}

Matrix parse_matrix_csv(std::string_view csv_bytes) {
    const auto lines = csv::split_lines(csv_bytes);
    if (lines.empty()) {
        throw mood_error(errc::shape_mismatch, "empty matrix document");
    }
    const auto header = csv::split_record(lines.front());
    if (header.empty() || !header.front().empty()) {
        throw mood_error(errc::shape_mismatch, "matrix header must start empty");
    }
    Matrix matrix;
    matrix.col_labels.assign(header.begin() + 1, header.end());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = csv::split_record(lines[i]);
        if (fields.size() != header.size()) {
            throw mood_error(errc::shape_mismatch,
                             "row " + std::to_string(i + 1) + " has " +
                                 std::to_string(fields.size()) + " fields");
        }
        matrix.row_labels.push_back(fields.front());
        for (std::size_t c = 1; c < fields.size(); ++c) {
            matrix.cells.push_back(fields[c].empty()
                                       ? std::optional<double>{}
                                       : std::optional<double>{csv::parse_double(fields[c])});
        }
    }
    return matrix;
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Diverging scale centered at 0.5: deep blue -> near-white -> deep red.
std::string diverging_color(double value) {
    constexpr int low[3] = {49, 54, 149};
    constexpr int mid[3] = {247, 247, 247};
    constexpr int high[3] = {165, 0, 38};
    const int* a = value < 0.5 ? low : mid;
    const int* b = value < 0.5 ? mid : high;
    const double u = value < 0.5 ? value / 0.5 : (value - 0.5) / 0.5;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::llround(a[0] + (b[0] - a[0]) * u)),
                  static_cast<int>(std::llround(a[1] + (b[1] - a[1]) * u)),
                  static_cast<int>(std::llround(a[2] + (b[2] - a[2]) * u)));
    return buf;
}

}  // namespace

std::string emit_heatmap_svg(const Matrix& matrix) {
    require_shape(matrix);
    for (const auto& cell : matrix.cells) {
        if (!cell) continue;
        if (!std::isfinite(*cell)) {
            throw mood_error(errc::non_finite_cell, "heatmap cell is not finite");
        }
        if (*cell < 0.0 || *cell > 1.0) {
            throw mood_error(errc::out_of_range, "heatmap cell outside [0,1]");
        }
    }

    constexpr int cell = 14;
    std::size_t max_row_chars = 0;
    for (const auto& label : matrix.row_labels) {
        max_row_chars = std::max(max_row_chars, label.size());
    }
    std::size_t max_col_chars = 0;
    for (const auto& label : matrix.col_labels) {
        max_col_chars = std::max(max_col_chars, label.size());
    }
    const int left = 12 + 7 * static_cast<int>(max_row_chars);
    const int top = 12 + 7 * static_cast<int>(max_col_chars);
    const int grid_w = cell * static_cast<int>(matrix.col_labels.size());
    const int grid_h = cell * static_cast<int>(matrix.row_labels.size());
    const int legend_h = 46;
    const int width = std::max(left + grid_w + 12, left + 248);
    const int height = top + grid_h + legend_h;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" font-family=\"monospace\" font-size=\"10\">\n";
    svg += "<rect width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" fill=\"white\"/>\n";

    for (std::size_t c = 0; c < matrix.col_labels.size(); ++c) {
        const int x = left + static_cast<int>(c) * cell + cell / 2 + 3;
        svg += "<text transform=\"translate(" + std::to_string(x) + "," +
               std::to_string(top - 4) + ") rotate(-90)\">" +
               xml_escape(matrix.col_labels[c]) + "</text>\n";
    }
    for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
        const int y = top + static_cast<int>(r) * cell + cell / 2 + 4;
        svg += "<text x=\"" + std::to_string(left - 4) + "\" y=\"" +
               std::to_string(y) + "\" text-anchor=\"end\">" +
               xml_escape(matrix.row_labels[r]) + "</text>\n";
    }
    for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
        for (std::size_t c = 0; c < matrix.col_labels.size(); ++c) {
            const auto& value = matrix.at(r, c);
            if (!value) continue;  // not-started cells stay transparent
            svg += "<rect x=\"" + std::to_string(left + static_cast<int>(c) * cell) +
                   "\" y=\"" + std::to_string(top + static_cast<int>(r) * cell) +
                   "\" width=\"" + std::to_string(cell - 1) + "\" height=\"" +
                   std::to_string(cell - 1) + "\" fill=\"" +
                   diverging_color(*value) + "\"/>\n";
        }
    }

    // Legend: 51 swatches from 0 to 1 with ticks at the ends and midpoint.
    const int legend_y = top + grid_h + 14;
    for (int i = 0; i <= 50; ++i) {
        svg += "<rect x=\"" + std::to_string(left + i * 4) + "\" y=\"" +
               std::to_string(legend_y) + "\" width=\"4\" height=\"12\" fill=\"" +
               diverging_color(i / 50.0) + "\"/>\n";
    }
    const int legend_text_y = legend_y + 24;
    svg += "<text x=\"" + std::to_string(left) + "\" y=\"" +
           std::to_string(legend_text_y) + "\">0</text>\n";
    svg += "<text x=\"" + std::to_string(left + 102) + "\" y=\"" +
           std::to_string(legend_text_y) + "\" text-anchor=\"middle\">0.5</text>\n";
    svg += "<text x=\"" + std::to_string(left + 204) + "\" y=\"" +
           std::to_string(legend_text_y) + "\" text-anchor=\"end\">1</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string rankings_csv(std::span<const WeeklyRanking> rankings) {
    std::string out = "week,rank,country,value\r\n";
    for (const WeeklyRanking& ranking : rankings) {
        for (const WeeklyRanking::Row& row : ranking.rows) {
            out += csv::quote(ranking.week);
            out += ',';
            out += std::to_string(row.rank);
            out += ',';
            out += row.country.str();
            out += ',';
            out += csv::format_double(row.value);
            out += "\r\n";
        }
    }
    return out;
}

std::string summary_stats_csv(std::span<const SummaryRow> rows) {
    std::string out = "series,subject,n_obs,min,max,mean,std_dev_population\r\n";
    for (const SummaryRow& row : rows) {
        out += csv::quote(row.series);
        out += ',';
        out += csv::quote(row.subject);
        out += ',';
        out += std::to_string(row.stats.n_obs);
        out += ',';
        out += csv::format_double(row.stats.min);
        out += ',';
        out += csv::format_double(row.stats.max);
        out += ',';
        out += csv::format_double(row.stats.mean);
        out += ',';
        out += csv::format_double(row.stats.std_dev);
        out += "\r\n";
    }
    return out;
}

}  // namespace moodgauge
