#include "moodgauge/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "moodgauge/csv_util.hpp"
#include "moodgauge/normalize.hpp"

namespace moodgauge {

namespace {

std::string resolve_path(const std::string& base_dir, const std::string& file) {
    std::filesystem::path p{file};
    if (p.is_absolute() || base_dir.empty()) return file;
    return (std::filesystem::path{base_dir} / p).lexically_normal().string();
}

PanelConfig config_from_json(const nlohmann::json& doc, const std::string& base_dir) {
    PanelConfig config;
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        throw mood_error(errc::bad_config, "config must be an object with an 'entries' array");
    }
    if (doc.contains("date_format")) {
        if (!doc["date_format"].is_string()) {
            throw mood_error(errc::bad_config, "'date_format' must be a string");
        }
        config.date_format = doc["date_format"].get<std::string>();
    }
    std::set<std::string> seen_countries;
    std::set<std::pair<std::string, std::string>> seen_pairs;
    for (const auto& entry : doc["entries"]) {
        if (!entry.is_object() || !entry.contains("country") ||
            !entry.contains("search_file") || !entry.contains("indexes")) {
            throw mood_error(errc::bad_config,
                             "entry needs 'country', 'search_file' and 'indexes'");
        }
        PanelEntry parsed{CountryCode{entry["country"].get<std::string>()},
                          resolve_path(base_dir, entry["search_file"].get<std::string>()),
                          {}};
        if (entry["search_file"].get<std::string>().empty()) {
            throw mood_error(errc::bad_config, "empty search_file path");
        }
        if (!seen_countries.insert(parsed.country.str()).second) {
            throw mood_error(errc::bad_config,
                             "duplicate country entry " + parsed.country.str());
        }
        if (!entry["indexes"].is_array() || entry["indexes"].empty()) {
            throw mood_error(errc::bad_config,
                             "country " + parsed.country.str() + " lists no indexes");
        }
        for (const auto& index : entry["indexes"]) {
            if (!index.is_object() || !index.contains("index_id") ||
                !index.contains("price_file")) {
                throw mood_error(errc::bad_config,
                                 "index needs 'index_id' and 'price_file'");
            }
            IndexSpec spec{index["index_id"].get<std::string>(),
                           resolve_path(base_dir, index["price_file"].get<std::string>())};
            if (spec.index_id.empty() || index["price_file"].get<std::string>().empty()) {
                throw mood_error(errc::bad_config, "empty index_id or price_file");
            }
            if (!seen_pairs.insert({parsed.country.str(), spec.index_id}).second) {
                throw mood_error(errc::bad_config,
                                 "duplicate pair " + parsed.country.str() + "/" +
                                     spec.index_id);
            }
            parsed.indexes.push_back(std::move(spec));
        }
        config.entries.push_back(std::move(parsed));
    }
    return config;
}

}  // namespace

PanelConfig parse_panel_config(std::string_view json_text, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw mood_error(errc::bad_config, std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(doc, base_dir);
}

PanelConfig load_panel_config(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        throw mood_error(errc::io_error, "cannot open config " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string base_dir = std::filesystem::path{path}.parent_path().string();
    return parse_panel_config(buffer.str(), base_dir);
}

ObservationSeries parse_series(std::string_view csv_bytes, SeriesKind kind,
                               const std::string& date_format) {
    if (csv_bytes.starts_with("\xEF\xBB\xBF")) csv_bytes.remove_prefix(3);
    const auto lines = csv::split_lines(csv_bytes);
    if (lines.empty() || lines.front() != "date,value") {
        throw mood_error(errc::malformed_row, "missing 'date,value' header row");
    }
    std::vector<Observation> points;
    points.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::string line_tag = "line " + std::to_string(i + 1) + ": ";
        std::vector<std::string> fields;
        try {
            fields = csv::split_record(lines[i]);
        } catch (const mood_error& e) {
            throw mood_error(errc::malformed_row, line_tag + e.what());
        }
        if (fields.size() != 2) {
            throw mood_error(errc::malformed_row,
                             line_tag + "expected 2 fields, got " +
                                 std::to_string(fields.size()));
        }
        TradingDate date;
        double value = 0.0;
        try {
            date = TradingDate::parse(fields[0], date_format);
            value = csv::parse_double(fields[1]);
        } catch (const mood_error& e) {
            throw mood_error(errc::malformed_row, line_tag + e.what());
        }
        if (!points.empty()) {
            if (date == points.back().date) {
                throw mood_error(errc::malformed_row,
                                 line_tag + "duplicate date " + date.to_string());
            }
            if (date < points.back().date) {
                throw mood_error(errc::non_monotone_dates,
                                 line_tag + "date " + date.to_string() +
                                     " earlier than previous row");
            }
        }
        points.push_back(Observation{date, value});
    }
    return ObservationSeries{kind, std::move(points)};
}

ObservationSeries trim_to_first_nonnull(const ObservationSeries& search) {
    if (search.kind() != SeriesKind::search) {
        throw mood_error(errc::invariant_violation, "trim expects a search series");
    }
    const auto& points = search.points();
    std::size_t start = 0;
    while (start < points.size() && points[start].value == 0.0) ++start;
    if (start == points.size()) {
        throw mood_error(errc::all_zero, "search series has no positive value");
    }
    return ObservationSeries{SeriesKind::search,
                             {points.begin() + static_cast<std::ptrdiff_t>(start),
                              points.end()}};
}

AlignedPair align(const CountryCode& country, const std::string& index_id,
                  const ObservationSeries& search, const ObservationSeries& price) {
    if (search.kind() != SeriesKind::search || price.kind() != SeriesKind::price) {
        throw mood_error(errc::invariant_violation, "align expects (search, price)");
    }
    if (search.front().value <= 0.0) {
        throw mood_error(errc::invariant_violation,
                         "search series must be trimmed to its first nonnull day");
    }

    const auto& s_points = search.points();
    const auto& p_points = price.points();
    const TradingDate span_begin = search.front().date;
    const TradingDate span_end = search.back().date;

    std::vector<TradingDate> grid;
    std::vector<int> attention;
    std::vector<double> raw_prices;
    std::vector<TradingDate> gaps;
    std::size_t si = 0;
    for (const Observation& p : p_points) {
        if (p.date < span_begin || span_end < p.date) continue;
        while (si < s_points.size() && s_points[si].date < p.date) ++si;
        if (si < s_points.size() && s_points[si].date == p.date) {
            grid.push_back(p.date);
            attention.push_back(static_cast<int>(s_points[si].value));
            raw_prices.push_back(p.value);
        } else {
            gaps.push_back(p.date);
        }
    }
    if (!gaps.empty()) {
        throw mood_error(errc::search_gap,
                         "no search value on trading day " + gaps.front().to_string() +
                             (gaps.size() > 1
                                  ? " (+" + std::to_string(gaps.size() - 1) + " more)"
                                  : ""));
    }
    if (grid.size() < 2) {
        throw mood_error(errc::insufficient_overlap,
                         "only " + std::to_string(grid.size()) +
                             " common trading days");
    }
    NormalizedSeries normalized = normalize_prices(raw_prices);
    return AlignedPair{country, index_id, std::move(grid), std::move(attention),
                       std::move(normalized)};
}

bool BuildResult::clean() const {
    for (const Diagnostic& d : diagnostics) {
        if (!is_warning(d.code)) return false;
    }
    return true;
}

bool BuildResult::any_country_empty() const {
    for (const Diagnostic& d : diagnostics) {
        if (d.code == errc::country_empty) return true;
    }
    return false;
}

FileResolver filesystem_resolver() {
    return [](const std::string& path) -> std::string {
        std::ifstream in{path, std::ios::binary};
        if (!in) {
            throw mood_error(errc::io_error, "cannot open " + path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
}

BuildResult build_panel(const PanelConfig& config, const FileResolver& resolver) {
    BuildResult result;
    for (const PanelEntry& entry : config.entries) {
        const std::string& country = entry.country.str();
        std::optional<ObservationSeries> search;
        try {
            search = trim_to_first_nonnull(
                parse_series(resolver(entry.search_file), SeriesKind::search,
                             config.date_format));
        } catch (const mood_error& e) {
            result.diagnostics.push_back(
                Diagnostic{country, "", e.code(), entry.search_file + ": " + e.what()});
            result.diagnostics.push_back(Diagnostic{
                country, "", errc::country_empty, "search series unusable"});
            continue;
        }

        std::vector<AlignedPair> pairs;
        for (const IndexSpec& spec : entry.indexes) {
            try {
                ObservationSeries price = parse_series(
                    resolver(spec.price_file), SeriesKind::price, config.date_format);
                pairs.push_back(align(entry.country, spec.index_id, *search, price));
                if (pairs.back().search_max_below_100()) {
                    result.diagnostics.push_back(
                        Diagnostic{country, spec.index_id, errc::search_max_below_100,
                                   "aligned search maximum fell on a non-trading day"});
                }
            } catch (const mood_error& e) {
                result.diagnostics.push_back(
                    Diagnostic{country, spec.index_id, e.code(),
                               spec.price_file + ": " + e.what()});
            }
        }
        if (pairs.empty()) {
            result.diagnostics.push_back(
                Diagnostic{country, "", errc::country_empty, "all indexes failed"});
        } else {
            result.panels.emplace_back(entry.country, std::move(pairs));
        }
    }
    return result;
}

std::string emit_diagnostics_csv(std::span<const Diagnostic> diagnostics) {
    std::string out = "country,index_id,error_code,detail\r\n";
    for (const Diagnostic& d : diagnostics) {
        out += csv::quote(d.country);
        out += ',';
        out += csv::quote(d.index_id);
        out += ',';
        out += error_code_name(d.code);
        out += ',';
        out += csv::quote(d.detail);
        out += "\r\n";
    }
    return out;
}

}  // namespace moodgauge
