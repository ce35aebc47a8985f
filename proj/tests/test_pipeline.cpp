#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "moodgauge/pipeline.hpp"

using namespace moodgauge;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = MOODGAUGE_FIXTURE_DIR;
const std::string kCli = MOODGAUGE_CLI_PATH;

std::string slurp(const fs::path& path) {
    std::ifstream in{path, std::ios::binary};
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args) {
    const std::string command = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("sha256 known answer") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("manifest text lists options and digests") {
    RunManifest manifest;
    manifest.config_path = "c.json";
    manifest.out_dir = "out";
    manifest.zeta_max = 7;
    manifest.created_utc = "2020-06-19T00:00:00Z";
    manifest.files.push_back(EmittedFile{"a.csv", "00ff", 12});
    const std::string text = manifest_text(manifest);
    CHECK(text.find("schema=moodgauge-run/1\n") == 0);
    CHECK(text.find("zeta_max=7\n") != std::string::npos);
    CHECK(text.find("file=a.csv sha256=00ff bytes=12\n") != std::string::npos);
}

TEST_CASE("run_pipeline writes the full report set") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_full").string();
    RunOutcome outcome = run_pipeline(options);
    REQUIRE(outcome.data_ok);
    CHECK(outcome.build.panels.size() == 3);

    const std::vector<std::string> expected{
        "A_weekly_by_index.csv", "A_weekly_by_country.csv", "H_by_zeta.csv",
        "R_by_zeta.csv",         "rankings.csv",            "summary_stats.csv",
        "diagnostics.csv",       "A_weekly_by_index.svg",   "A_weekly_by_country.svg",
        "H_by_zeta.svg",         "R_by_zeta.svg",           "run_manifest.txt"};
    for (const std::string& name : expected) {
        CHECK(fs::exists(fs::path{options.out_dir} / name));
    }
    CHECK(outcome.manifest.files.size() == expected.size() - 1);  // manifest itself

    // The ISL pair's provider maximum fell on a weekend: flagged, not fatal.
    const std::string diags = slurp(fs::path{options.out_dir} / "diagnostics.csv");
    CHECK(diags.find("ISL,OMXI,search_max_below_100") != std::string::npos);

    // Countries absent before their search series starts: empty cells, no zeros.
    const std::string by_country =
        slurp(fs::path{options.out_dir} / "A_weekly_by_country.csv");
    CHECK(by_country.find("ISL,,,,,,") != std::string::npos);
}

TEST_CASE("digests are stable across runs") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_a").string();
    RunOutcome first = run_pipeline(options);
    options.out_dir = fresh_dir("moodgauge_run_b").string();
    RunOutcome second = run_pipeline(options);
    REQUIRE(first.data_ok);
    REQUIRE(second.data_ok);
    REQUIRE(first.manifest.files.size() == second.manifest.files.size());
    for (std::size_t i = 0; i < first.manifest.files.size(); ++i) {
        CHECK(first.manifest.files[i].name == second.manifest.files[i].name);
        CHECK(first.manifest.files[i].sha256 == second.manifest.files[i].sha256);
    }
}

TEST_CASE("zeta bound restricts the sweep") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_z0").string();
    options.zeta_max = 0;
    RunOutcome outcome = run_pipeline(options);
    REQUIRE(outcome.data_ok);
    const std::string h = slurp(fs::path{options.out_dir} / "H_by_zeta.csv");
    CHECK(h.substr(0, h.find("\r\n")) == ",0");
}

TEST_CASE("week filter restricts mood outputs") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_weeks").string();
    options.weeks = {{10, 11}};
    RunOutcome outcome = run_pipeline(options);
    REQUIRE(outcome.data_ok);
    const std::string a = slurp(fs::path{options.out_dir} / "A_weekly_by_country.csv");
    CHECK(a.substr(0, a.find("\r\n")) == ",2020-W10,2020-W11");
    const std::string rankings = slurp(fs::path{options.out_dir} / "rankings.csv");
    CHECK(rankings.find("2020-W12") == std::string::npos);
    CHECK(rankings.find("2020-W10") != std::string::npos);
}

TEST_CASE("country filter drops other entries") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_cc").string();
    options.countries = {"ITA", "DEU"};
    RunOutcome outcome = run_pipeline(options);
    REQUIRE(outcome.data_ok);
    CHECK(outcome.build.panels.size() == 2);
    const std::string a = slurp(fs::path{options.out_dir} / "A_weekly_by_country.csv");
    CHECK(a.find("ISL") == std::string::npos);
}

TEST_CASE("fixed-5 window mode stays deterministic and labelled") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_f5").string();
    options.window_mode = WindowMode::fixed_5;
    RunOutcome outcome = run_pipeline(options);
    REQUIRE(outcome.data_ok);
    const std::string a = slurp(fs::path{options.out_dir} / "A_weekly_by_country.csv");
    CHECK(a.find("2020-W") != std::string::npos);
}

TEST_CASE("MOODGAUGE_THREADS caps the pool") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_env").string();
    setenv("MOODGAUGE_THREADS", "2", 1);
    RunOutcome outcome = run_pipeline(options);
    unsetenv("MOODGAUGE_THREADS");
    REQUIRE(outcome.data_ok);
    CHECK(outcome.manifest.threads <= 2);
}

TEST_CASE("thread cap does not change results") {
    RunOptions options;
    options.config_path = kFixtures + "/panel/config.json";
    options.out_dir = fresh_dir("moodgauge_run_t1").string();
    options.threads = 1;
    RunOutcome one = run_pipeline(options);
    options.out_dir = fresh_dir("moodgauge_run_t4").string();
    options.threads = 4;
    RunOutcome four = run_pipeline(options);
    REQUIRE(one.manifest.files.size() == four.manifest.files.size());
    for (std::size_t i = 0; i < one.manifest.files.size(); ++i) {
        CHECK(one.manifest.files[i].sha256 == four.manifest.files[i].sha256);
    }
    CHECK(four.manifest.threads <= 4);
}

TEST_CASE("validate_panel mirrors the CLI validate semantics") {
    BuildResult clean = validate_panel(kFixtures + "/panel/config.json");
    CHECK(clean.clean());  // the ISL row is a warning, not an error
    CHECK_FALSE(clean.diagnostics.empty());

    BuildResult broken = validate_panel(kFixtures + "/bad/config.json");
    CHECK_FALSE(broken.clean());
    REQUIRE(broken.diagnostics.size() == 1);
    CHECK(broken.diagnostics[0].code == errc::non_monotone_dates);
    CHECK(broken.diagnostics[0].index_id == "BAD");

    CHECK_THROWS_AS(validate_panel(kFixtures + "/does_not_exist.json"), mood_error);
}

TEST_CASE("CLI exit codes follow the contract") {
    CHECK(run_cli("validate --config " + kFixtures + "/panel/config.json") == 0);
    CHECK(run_cli("validate --config " + kFixtures + "/bad/config.json") == 1);
    CHECK(run_cli("validate --config " + kFixtures + "/missing.json") == 2);
    CHECK(run_cli("bogus-subcommand") == 2);
    CHECK(run_cli("run --config " + kFixtures + "/panel/config.json") == 2);  // no --out

    const fs::path out = fresh_dir("moodgauge_cli_run");
    CHECK(run_cli("run --config " + kFixtures + "/panel/config.json --out " +
                  out.string()) == 0);
    CHECK(fs::exists(out / "run_manifest.txt"));

    const fs::path bad_out = fresh_dir("moodgauge_cli_bad");
    CHECK(run_cli("run --config " + kFixtures + "/bad/config.json --out " +
                  bad_out.string()) == 0);  // country keeps its good index
}

TEST_CASE("a run whose only country empties exits with a data error") {
    const fs::path dir = fresh_dir("moodgauge_cli_empty");
    fs::create_directories(dir);
    {
        std::ofstream config{dir / "config.json"};
        config << R"({"entries":[{"country":"ITA","search_file":"missing.csv",
                     "indexes":[{"index_id":"MIB","price_file":"missing.csv"}]}]})";
    }
    const fs::path out = dir / "out";
    CHECK(run_cli("run --config " + (dir / "config.json").string() + " --out " +
                  out.string()) == 1);
    CHECK(fs::exists(out / "diagnostics.csv"));
    CHECK_FALSE(fs::exists(out / "rankings.csv"));
}
