#include "moodgauge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include <openssl/evp.h>

namespace moodgauge {

std::string_view window_mode_name(WindowMode mode) {
    return mode == WindowMode::iso_week ? "iso-week" : "fixed-5";
}

CountryMood compute_country(const CountryPanel& panel, WindowMode mode,
                            std::span<const int> zeta_grid) {
    CountryMood mood{panel.country(), {}, {}, zeta_sweep(panel, zeta_grid)};

    std::map<IsoWeek, std::vector<std::pair<std::string, double>>> by_week;
    for (const AlignedPair& pair : panel.pairs()) {
        PairMood pm;
        pm.index_id = pair.index_id();
        pm.windows = mode == WindowMode::iso_week ? weekly_windows(pair)
                                                  : fixed_windows(pair);
        const PairAggregates totals = pair_aggregates(pair);
        pm.values.reserve(pm.windows.size());
        for (const Window& window : pm.windows) {
            const double value = mood_window_index(pair, totals, window);
            pm.values.push_back(value);
            by_week[window.label].emplace_back(pair.index_id(), value);
        }
        mood.pairs.push_back(std::move(pm));
    }
    for (auto& [week, values] : by_week) {
        // Window bounds differ per market; the label is the shared identity,
        // so the score carries the first contributing market's window.
        Window representative{1, 1, week};
        for (const PairMood& pm : mood.pairs) {
            bool found = false;
            for (const Window& w : pm.windows) {
                if (w.label == week) {
                    representative = w;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        mood.weekly.emplace_back(representative, std::move(values));
    }
    return mood;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                   nullptr) != 1) {
        throw mood_error(errc::io_error, "digest computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string manifest_text(const RunManifest& manifest) {
    std::string out;
    out += "schema=moodgauge-run/1\n";
    out += "created_utc=" + manifest.created_utc + "\n";
    out += "config=" + manifest.config_path + "\n";
    out += "out_dir=" + manifest.out_dir + "\n";
    out += "zeta_min=" + std::to_string(manifest.zeta_min) + "\n";
    out += "zeta_max=" + std::to_string(manifest.zeta_max) + "\n";
    out += "window_mode=" + std::string(window_mode_name(manifest.window_mode)) + "\n";
    out += "weeks=" + manifest.weeks_filter + "\n";
    out += "countries=" + manifest.countries_filter + "\n";
    out += "threads=" + std::to_string(manifest.threads) + "\n";
    for (const EmittedFile& file : manifest.files) {
        out += "file=" + file.name + " sha256=" + file.sha256 + " bytes=" +
               std::to_string(file.bytes) + "\n";
    }
    return out;
}

namespace {

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int resolve_thread_count(const RunOptions& options, std::size_t jobs) {
    int requested = 0;
    if (options.threads) {
        requested = *options.threads;
    } else if (const char* env = std::getenv("MOODGAUGE_THREADS")) {
        requested = std::atoi(env);
    }
    if (requested <= 0) {
        requested = static_cast<int>(std::thread::hardware_concurrency());
    }
    requested = std::max(requested, 1);
    return static_cast<int>(std::min<std::size_t>(requested, std::max<std::size_t>(jobs, 1)));
}

bool week_selected(const IsoWeek& week, const std::optional<std::pair<int, int>>& filter) {
    return !filter || (week.week >= filter->first && week.week <= filter->second);
}

std::string pair_label(const CountryCode& country, const std::string& index_id) {
    return country.str() + "/" + index_id;
}

struct Reports {
    Matrix a_by_index;
    Matrix a_by_country;
    Matrix h_by_zeta;
    Matrix r_by_zeta;
    std::vector<WeeklyRanking> rankings;
    std::vector<SummaryRow> summary;
};

Reports assemble_reports(const std::vector<CountryMood>& moods,
                         std::span<const int> zeta_grid,
                         const std::optional<std::pair<int, int>>& weeks_filter) {
    Reports reports;

    std::set<IsoWeek> week_set;
    for (const CountryMood& mood : moods) {
        for (const MoodWindowScore& score : mood.weekly) {
            if (week_selected(score.window.label, weeks_filter)) {
                week_set.insert(score.window.label);
            }
        }
    }
    std::vector<IsoWeek> weeks(week_set.begin(), week_set.end());
    std::vector<std::string> week_labels;
    week_labels.reserve(weeks.size());
    for (const IsoWeek& week : weeks) week_labels.push_back(week.label());
    const auto week_col = [&](const IsoWeek& week) {
        return static_cast<std::size_t>(
            std::lower_bound(weeks.begin(), weeks.end(), week) - weeks.begin());
    };

    std::vector<std::string> pair_rows;
    std::vector<std::string> country_rows;
    for (const CountryMood& mood : moods) {
        country_rows.push_back(mood.country.str());
        for (const PairMood& pm : mood.pairs) {
            pair_rows.push_back(pair_label(mood.country, pm.index_id));
        }
    }
    std::sort(pair_rows.begin(), pair_rows.end());
    std::sort(country_rows.begin(), country_rows.end());
    const auto row_of = [](const std::vector<std::string>& labels,
                           const std::string& label) {
        return static_cast<std::size_t>(
            std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    };

    reports.a_by_index = Matrix::with_shape(pair_rows, week_labels);
    reports.a_by_country = Matrix::with_shape(country_rows, week_labels);

    std::map<IsoWeek, std::map<CountryCode, double>> ranking_input;
    for (const CountryMood& mood : moods) {
        for (const PairMood& pm : mood.pairs) {
            const std::size_t row = row_of(pair_rows, pair_label(mood.country, pm.index_id));
            for (std::size_t i = 0; i < pm.windows.size(); ++i) {
                if (!week_selected(pm.windows[i].label, weeks_filter)) continue;
                reports.a_by_index.at(row, week_col(pm.windows[i].label)) = pm.values[i];
            }
        }
        const std::size_t row = row_of(country_rows, mood.country.str());
        for (const MoodWindowScore& score : mood.weekly) {
            if (!week_selected(score.window.label, weeks_filter)) continue;
            reports.a_by_country.at(row, week_col(score.window.label)) =
                score.country_value;
            ranking_input[score.window.label][mood.country] = score.country_value;
        }
    }

    for (const auto& [week, scores] : ranking_input) {
        reports.rankings.push_back(rank_week(scores, week.label()));
    }

    std::vector<std::string> zeta_labels;
    zeta_labels.reserve(zeta_grid.size());
    for (int z : zeta_grid) zeta_labels.push_back(std::to_string(z));
    std::vector<std::string> hr_rows = pair_rows;
    hr_rows.insert(hr_rows.end(), country_rows.begin(), country_rows.end());
    std::sort(hr_rows.begin(), hr_rows.end());
    reports.h_by_zeta = Matrix::with_shape(hr_rows, zeta_labels);
    reports.r_by_zeta = Matrix::with_shape(hr_rows, zeta_labels);
    for (const CountryMood& mood : moods) {
        for (std::size_t k = 0; k < mood.profile.index_ids.size(); ++k) {
            const std::size_t row =
                row_of(hr_rows, pair_label(mood.country, mood.profile.index_ids[k]));
            for (std::size_t zi = 0; zi < zeta_grid.size(); ++zi) {
                reports.h_by_zeta.at(row, zi) = mood.profile.index_h[k][zi];
                reports.r_by_zeta.at(row, zi) = mood.profile.index_r[k][zi];
            }
        }
        const std::size_t row = row_of(hr_rows, mood.country.str());
        for (std::size_t zi = 0; zi < zeta_grid.size(); ++zi) {
            reports.h_by_zeta.at(row, zi) = mood.profile.country_h[zi];
            reports.r_by_zeta.at(row, zi) = mood.profile.country_r[zi];
        }
    }

    // Summary rows mirror the report families: raw aligned columns, weekly
    // mood values, and both threshold indicators, at market and country level.
    struct Entry {
        std::string series;
        std::string subject;
        std::vector<double> values;
    };
    std::vector<Entry> entries;
    for (const CountryMood& mood : moods) {
        std::vector<double> country_a;
        for (const MoodWindowScore& score : mood.weekly) {
            if (week_selected(score.window.label, weeks_filter)) {
                country_a.push_back(score.country_value);
            }
        }
        if (!country_a.empty()) {
            entries.push_back({"A_country", mood.country.str(), std::move(country_a)});
        }
        entries.push_back({"H_country", mood.country.str(), mood.profile.country_h});
        entries.push_back({"R_country", mood.country.str(), mood.profile.country_r});
        for (const PairMood& pm : mood.pairs) {
            const std::string subject = pair_label(mood.country, pm.index_id);
            std::vector<double> a_values;
            for (std::size_t i = 0; i < pm.windows.size(); ++i) {
                if (week_selected(pm.windows[i].label, weeks_filter)) {
                    a_values.push_back(pm.values[i]);
                }
            }
            if (!a_values.empty()) {
                entries.push_back({"A_index", subject, std::move(a_values)});
            }
        }
        for (std::size_t k = 0; k < mood.profile.index_ids.size(); ++k) {
            const std::string subject =
                pair_label(mood.country, mood.profile.index_ids[k]);
            entries.push_back({"H_index", subject, mood.profile.index_h[k]});
            entries.push_back({"R_index", subject, mood.profile.index_r[k]});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.series, a.subject) < std::tie(b.series, b.subject);
    });
    for (const Entry& entry : entries) {
        reports.summary.push_back(SummaryRow{entry.series, entry.subject,
                                             summarize(entry.values)});
    }
    return reports;
}

// Raw aligned-series stats need the panel itself, not just the mood values.
void append_series_summaries(std::vector<SummaryRow>& summary,
                             const std::vector<CountryPanel>& panels) {
    struct Entry {
        std::string series;
        std::string subject;
        std::vector<double> values;
    };
    std::vector<Entry> entries;
    for (const CountryPanel& panel : panels) {
        for (const AlignedPair& pair : panel.pairs()) {
            const std::string subject = pair_label(pair.country(), pair.index_id());
            std::vector<double> search(pair.search().begin(), pair.search().end());
            std::vector<double> price(pair.price().values().begin(),
                                      pair.price().values().end());
            entries.push_back({"search", subject, std::move(search)});
            entries.push_back({"price_norm", subject, std::move(price)});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.series, a.subject) < std::tie(b.series, b.subject);
    });
    std::vector<SummaryRow> rows;
    for (const Entry& entry : entries) {
        rows.push_back(SummaryRow{entry.series, entry.subject, summarize(entry.values)});
    }
    // Keep raw series first, computed indicators after.
    rows.insert(rows.end(), summary.begin(), summary.end());
    summary = std::move(rows);
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out{path, std::ios::binary};
    if (!out) {
        throw mood_error(errc::io_error, "cannot write " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw mood_error(errc::io_error, "short write to " + path.string());
    }
}

}  // namespace

BuildResult validate_panel(const std::string& config_path) {
    const PanelConfig config = load_panel_config(config_path);
    return build_panel(config, filesystem_resolver());
}

RunOutcome run_pipeline(const RunOptions& options) {
    if (options.zeta_max < 0 || options.zeta_max > 100) {
        throw mood_error(errc::bad_grid, "zeta bound outside [0,100]");
    }
    if (options.weeks &&
        (options.weeks->first < 1 || options.weeks->second > 53 ||
         options.weeks->first > options.weeks->second)) {
        throw mood_error(errc::bad_config, "week range must satisfy 1 <= A <= B <= 53");
    }
    PanelConfig config = load_panel_config(options.config_path);
    if (!options.countries.empty()) {
        std::set<std::string> keep(options.countries.begin(), options.countries.end());
        std::erase_if(config.entries, [&](const PanelEntry& entry) {
            return keep.count(entry.country.str()) == 0;
        });
    }

    RunOutcome outcome;
    outcome.build = build_panel(config, filesystem_resolver());

    std::filesystem::create_directories(options.out_dir);
    const auto out_path = [&](const std::string& name) {
        return std::filesystem::path{options.out_dir} / name;
    };
    const std::string diagnostics = emit_diagnostics_csv(outcome.build.diagnostics);

    outcome.data_ok =
        !outcome.build.panels.empty() && !outcome.build.any_country_empty();
    if (!outcome.data_ok) {
        write_file(out_path("diagnostics.csv"), diagnostics);
        return outcome;
    }

    std::vector<int> zeta_grid;
    for (int z = 0; z <= options.zeta_max; ++z) zeta_grid.push_back(z);

    const std::vector<CountryPanel>& panels = outcome.build.panels;
    std::vector<std::optional<CountryMood>> slots(panels.size());
    const int threads = resolve_thread_count(options, panels.size());
    {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < panels.size();
                 i = next.fetch_add(1)) {
                slots[i] = compute_country(panels[i], options.window_mode, zeta_grid);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
        for (std::thread& t : pool) t.join();
    }
    std::vector<CountryMood> moods;
    moods.reserve(slots.size());
    for (auto& slot : slots) moods.push_back(std::move(*slot));

    Reports reports = assemble_reports(moods, zeta_grid, options.weeks);
    append_series_summaries(reports.summary, panels);

    RunManifest& manifest = outcome.manifest;
    manifest.config_path = options.config_path;
    manifest.out_dir = options.out_dir;
    manifest.zeta_min = 0;
    manifest.zeta_max = options.zeta_max;
    manifest.window_mode = options.window_mode;
    manifest.weeks_filter =
        options.weeks ? std::to_string(options.weeks->first) + ":" +
                            std::to_string(options.weeks->second)
                      : "all";
    if (options.countries.empty()) {
        manifest.countries_filter = "all";
    } else {
        manifest.countries_filter.clear();
        for (std::size_t i = 0; i < options.countries.size(); ++i) {
            if (i) manifest.countries_filter += ',';
            manifest.countries_filter += options.countries[i];
        }
    }
    manifest.threads = threads;
    manifest.created_utc = utc_now();

    const std::vector<std::pair<std::string, std::string>> outputs = {
        {"A_weekly_by_index.csv", emit_matrix_csv(reports.a_by_index)},
        {"A_weekly_by_country.csv", emit_matrix_csv(reports.a_by_country)},
        {"H_by_zeta.csv", emit_matrix_csv(reports.h_by_zeta)},
        {"R_by_zeta.csv", emit_matrix_csv(reports.r_by_zeta)},
        {"rankings.csv", rankings_csv(reports.rankings)},
        {"summary_stats.csv", summary_stats_csv(reports.summary)},
        {"diagnostics.csv", diagnostics},
        {"A_weekly_by_index.svg", emit_heatmap_svg(reports.a_by_index)},
        {"A_weekly_by_country.svg", emit_heatmap_svg(reports.a_by_country)},
        {"H_by_zeta.svg", emit_heatmap_svg(reports.h_by_zeta)},
        {"R_by_zeta.svg", emit_heatmap_svg(reports.r_by_zeta)},
    };
    for (const auto& [name, bytes] : outputs) {
        write_file(out_path(name), bytes);
        manifest.files.push_back(EmittedFile{name, sha256_hex(bytes), bytes.size()});
    }
    std::sort(manifest.files.begin(), manifest.files.end(),
              [](const EmittedFile& a, const EmittedFile& b) { return a.name < b.name; });
    write_file(out_path("run_manifest.txt"), manifest_text(manifest));
    return outcome;
}

}  // namespace moodgauge
