#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moodgauge/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_codes(const std::string& csv) {
    std::vector<std::string> codes;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string code = csv.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!code.empty()) codes.push_back(code);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return codes;
}

int run_validate(const std::string& config_path) {
    moodgauge::BuildResult build;
    try {
        build = moodgauge::validate_panel(config_path);
    } catch (const moodgauge::mood_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!build.diagnostics.empty()) {
        std::cout << moodgauge::emit_diagnostics_csv(build.diagnostics);
    }
    return build.clean() ? kExitOk : kExitDataError;
}

int run_run(const moodgauge::RunOptions& options) {
    moodgauge::RunOutcome outcome;
    try {
        outcome = moodgauge::run_pipeline(options);
    } catch (const moodgauge::mood_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!outcome.data_ok) {
        std::cerr << "error: panel unusable, see " << options.out_dir
                  << "/diagnostics.csv\n";
        return kExitDataError;
    }
    std::cout << "wrote " << outcome.manifest.files.size() + 1 << " files to "
              << options.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Country-level mood indicators from search-attention and "
                 "stock-index co-movement"};
    app.require_subcommand(1);

    std::string config_path;
    auto* validate = app.add_subcommand(
        "validate", "Check that every configured (country, index) pair ingests");
    validate->add_option("--config", config_path, "panel config JSON")->required();

    moodgauge::RunOptions options;
    std::string window_mode{"iso-week"};
    std::string weeks;
    std::string countries;
    auto* run = app.add_subcommand("run", "Compute indicators and write reports");
    run->add_option("--config", options.config_path, "panel config JSON")->required();
    run->add_option("--out", options.out_dir, "output directory")->required();
    run->add_option("--zeta-max", options.zeta_max,
                    "largest variation threshold to sweep (default 50)")
        ->check(CLI::Range(0, 100));
    run->add_option("--window-mode", window_mode, "iso-week (default) or fixed-5")
        ->check(CLI::IsMember({"iso-week", "fixed-5"}));
    run->add_option("--weeks", weeks, "restrict mood outputs to week numbers A:B");
    run->add_option("--countries", countries, "comma-separated country codes to keep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (validate->parsed()) {
        return run_validate(config_path);
    }

    options.window_mode = window_mode == "fixed-5" ? moodgauge::WindowMode::fixed_5
                                                   : moodgauge::WindowMode::iso_week;
    if (!weeks.empty()) {
        int first = 0;
        int last = 0;
        if (std::sscanf(weeks.c_str(), "%d:%d", &first, &last) != 2) {
            std::cerr << "error: --weeks expects A:B\n";
            return kExitUsage;
        }
        options.weeks = {first, last};
    }
    if (!countries.empty()) {
        options.countries = split_codes(countries);
    }
    return run_run(options);
}
