#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "moodgauge/core.hpp"

namespace moodgauge {

struct IndexSpec {
    std::string index_id;
    std::string price_file;
};

struct PanelEntry {
    CountryCode country;
    std::string search_file;
    std::vector<IndexSpec> indexes;
};

/// Declarative description of the whole panel: which countries to load,
/// where their attention and price CSVs live, and how dates are written.
struct PanelConfig {
    std::string date_format{"%Y-%m-%d"};
    std::vector<PanelEntry> entries;
};

/// Reads a JSON panel config (schema documented in the README). Relative
/// file paths are resolved against the config file's directory.
/// Throws mood_error{io_error} or mood_error{bad_config}.
PanelConfig load_panel_config(const std::string& path);

/// Same, from an in-memory JSON document; base_dir anchors relative paths.
PanelConfig parse_panel_config(std::string_view json_text, const std::string& base_dir);

/// Parses a `date,value` CSV into a validated series. Accepts LF or CRLF
/// and an optional UTF-8 BOM; anything else irregular is an error:
/// unparseable rows and duplicate dates are malformed_row, decreasing dates
/// non_monotone_dates, values outside the kind's range out_of_range, and a
/// file with no data rows empty_series.
ObservationSeries parse_series(std::string_view csv_bytes, SeriesKind kind,
                               const std::string& date_format);

/// Drops leading zeros so the series starts on its first nonnull day.
/// Later zeros are kept. Throws mood_error{all_zero} when no positive
/// value exists.
ObservationSeries trim_to_first_nonnull(const ObservationSeries& search);

/// Builds the aligned pair for one (country, index): the date grid is the
/// intersection of the two date sets from the trimmed search start onward,
/// and prices are normalized on that grid. A price date strictly inside the
/// search series' span with no matching search row is a search_gap error
/// (a provider hole, not a calendar effect); fewer than two common days is
/// insufficient_overlap.
AlignedPair align(const CountryCode& country, const std::string& index_id,
                  const ObservationSeries& search, const ObservationSeries& price);

/// One row of the ingestion diagnostics report.
struct Diagnostic {
    std::string country;
    std::string index_id;  // empty for country-level rows
    errc code;
    std::string detail;
};

struct BuildResult {
    std::vector<CountryPanel> panels;
    std::vector<Diagnostic> diagnostics;

    /// True when every configured pair ingested with no error-level rows.
    bool clean() const;

    /// True when at least one configured country ended up with no markets.
    bool any_country_empty() const;
};

using FileResolver = std::function<std::string(const std::string& path)>;

/// Reads whole files from disk; throws mood_error{io_error} when unreadable.
FileResolver filesystem_resolver();

/// Loads every configured (country, index) pair. Per-pair failures become
/// diagnostics rows instead of aborting the build; a country whose markets
/// all fail is dropped and recorded as country_empty. Pairs whose aligned
/// search series never reaches 100 get a warning row and are kept.
/// Distinct pairs share no mutable state, so resolvers may be called from
/// concurrent contexts.
BuildResult build_panel(const PanelConfig& config, const FileResolver& resolver);

/// `country,index_id,error_code,detail` CSV, CRLF line endings.
std::string emit_diagnostics_csv(std::span<const Diagnostic> diagnostics);

}  // namespace moodgauge
