#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moodgauge/ingest.hpp"
#include "moodgauge/report.hpp"
#include "moodgauge/temporal.hpp"
#include "moodgauge/variation.hpp"

namespace moodgauge {

enum class WindowMode { iso_week, fixed_5 };

std::string_view window_mode_name(WindowMode mode);

/// Windowed mood values of one market on its own grid.
struct PairMood {
    std::string index_id;
    std::vector<Window> windows;
    std::vector<double> values;  // one per window
};

/// Everything the reports need about one country.
struct CountryMood {
    CountryCode country;
    std::vector<PairMood> pairs;
    std::vector<MoodWindowScore> weekly;  // chronological, per window label
    ThresholdProfile profile;
};

/// Pure per-country computation; safe to run for distinct countries
/// concurrently.
CountryMood compute_country(const CountryPanel& panel, WindowMode mode,
                            std::span<const int> zeta_grid);

struct RunOptions {
    std::string config_path;
    std::string out_dir;
    int zeta_max{50};
    WindowMode window_mode{WindowMode::iso_week};
    std::optional<std::pair<int, int>> weeks;  // inclusive week-number range
    std::vector<std::string> countries;        // empty keeps every entry
    std::optional<int> threads;                // overrides MOODGAUGE_THREADS
};

struct EmittedFile {
    std::string name;
    std::string sha256;
    std::size_t bytes{0};
};

struct RunManifest {
    std::string config_path;
    std::string out_dir;
    int zeta_min{0};
    int zeta_max{50};
    WindowMode window_mode{WindowMode::iso_week};
    std::string weeks_filter{"all"};
    std::string countries_filter{"all"};
    int threads{1};
    std::string created_utc;  // the only timestamp anywhere in a run
    std::vector<EmittedFile> files;
};

/// The manifest's documented key-value text form.
std::string manifest_text(const RunManifest& manifest);

std::string sha256_hex(std::string_view bytes);

struct RunOutcome {
    BuildResult build;
    RunManifest manifest;   // populated only when data_ok
    bool data_ok{false};    // false: diagnostics written, reports skipped
};

/// Executes the whole run: ingest, indicators, reports, manifest. Output
/// bytes are a pure function of the inputs and options; the manifest's
/// timestamp is the only run-dependent content. Throws mood_error for
/// usage-level problems (unreadable or invalid config, bad option values);
/// data-level failures come back as data_ok == false with diagnostics.
RunOutcome run_pipeline(const RunOptions& options);

/// Ingests everything once and reports diagnostics without writing reports.
BuildResult validate_panel(const std::string& config_path);

}  // namespace moodgauge
