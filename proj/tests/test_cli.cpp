// End-to-end tests of the command-line binary: golden output lines,
// format contracts, byte determinism across runs, and the exit-code
// contract (0 success, 1 data error, 2 usage error).
#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "fixture_constants.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string command = std::string(NETMARK_CLI_PATH) + " " + args +
                                (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.output.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

const std::string kSnapshot = fixtures::adjacency_path;
const std::string kRoster = fixtures::roster_path;
const std::string kFeatures = fixtures::features_path;

} // namespace

TEST_CASE("cli: identical invocations produce identical bytes") {
    for (const std::string& args :
         {"centrality --snapshot " + kSnapshot + " --roster " + kRoster +
              " --metric information --format json",
          "merger-screen --roster " + kRoster + " --format csv",
          "concentration --roster " + kRoster + " --snapshot " + kSnapshot +
              " --format table"}) {
        const RunResult first = run_cli(args);
        const RunResult second = run_cli(args);
        REQUIRE(first.exit_code == 0);
        CHECK(first.output == second.output);
        CHECK_FALSE(first.output.empty());
    }
}

TEST_CASE("cli centrality: betweenness table golden") {
    const RunResult r = run_cli("centrality --snapshot " + kSnapshot + " --roster " +
                                kRoster + " --metric betweenness");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() >= 9);
    CHECK(lines[0] == "centrality: betweenness_normalized");
    CHECK(lines[1] == "rank  id         score");
    CHECK(lines[2] == "   1  directhit   5.66");
    CHECK(lines[3] == "   2  yahoo       4.90");
    CHECK(lines[4] == "   3  askjeeves   4.25");
    CHECK(lines[5] == "   4  altavista   1.96");
    CHECK(lines[6] == "mean: 0.96");
    CHECK(lines[7] == "stdev: 1.80");
    CHECK_THAT(lines[8], ContainsSubstring("note: directed geodesics"));
}

TEST_CASE("cli centrality: JSON carries the full report") {
    const RunResult r = run_cli("centrality --snapshot " + kSnapshot + " --roster " +
                                kRoster + " --metric betweenness --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["metric"] == "betweenness_normalized");
    REQUIRE(j["top"].size() == 4);
    const std::vector<std::string> expect = {"directhit", "yahoo", "askjeeves",
                                             "altavista"};
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(j["top"][i]["id"] == expect[i]);
    CHECK(j["scores"].size() == 19);
    CHECK(j["mean"].get<double>() == Approx(fixtures::betweenness_mean).margin(1e-9));
}

TEST_CASE("cli centrality: degree ties extend the printed list") {
    const RunResult r = run_cli("centrality --snapshot " + kSnapshot + " --roster " +
                                kRoster + " --metric indegree --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["top"].size() == 6);   // rank-4 tie block of three
    CHECK(j["top"][0]["id"] == "altavista");
    CHECK(j["top"][5]["id"] == "yahoo");
}

TEST_CASE("cli centrality: works without a roster file") {
    const RunResult r =
        run_cli("centrality --snapshot " + kSnapshot + " --metric outdegree");
    REQUIRE(r.exit_code == 0);
    CHECK_THAT(r.output, ContainsSubstring("opendirectory"));
}

TEST_CASE("cli concentration: table golden") {
    const RunResult r = run_cli("concentration --roster " + kRoster + " --snapshot " +
                                kSnapshot);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "concentration: 19 firms");
    CHECK(lines[1] == "rank  id        share_pct");
    CHECK(lines[2] == "   1  yahoo         22.71");
    CHECK(lines[3] == "   2  msn           17.29");
    CHECK(lines[4] == "   3  go             9.23");
    CHECK(lines[5] == "   4  netscape       7.44");
    CHECK(lines[6] == "cr4: 0.57");
    CHECK(lines[7] == "hhi: 1180.38");
    CHECK(lines[8] == "hhi classification: ModeratelyConcentrated");
    CHECK(lines[9] == "nahhi (overlap 0.30): 851.92");
    CHECK(lines[10] == "nahhi classification: Unconcentrated");
}

TEST_CASE("cli concentration: csv comment line carries full precision") {
    const RunResult r = run_cli("concentration --roster " + kRoster + " --snapshot " +
                                kSnapshot + " --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.output)[0] ==
          "# concentration, firms=19, cr4=0.5666666666666667, "
          "hhi=1180.3776050782985, hhi_class=ModeratelyConcentrated, "
          "overlap=0.3, nahhi=851.9205936547216, nahhi_class=Unconcentrated");
}

TEST_CASE("cli concentration: overlap option changes the adjusted index") {
    const RunResult r = run_cli("concentration --roster " + kRoster + " --snapshot " +
                                kSnapshot + " --overlap 0.5 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["nahhi"]["overlap"] == 0.5);
    CHECK(j["nahhi"]["value"].get<double>() ==
          Approx(fixtures::nahhi_grid[5]).margin(1e-9));
}

TEST_CASE("cli merger-screen: csv layout") {
    const RunResult r = run_cli("merger-screen --roster " + kRoster + " --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 21);
    CHECK(lines[0] == "# merger screen, threshold=100, flagged_pairs=29");
    CHECK(lines[1].rfind("id,altavista,askjeeves,", 0) == 0);
    CHECK(lines.back() == "yahoo" + std::string(19, ','));
}

TEST_CASE("cli merger-screen: json pairs") {
    const RunResult r = run_cli("merger-screen --roster " + kRoster + " --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["threshold"] == 100.0);
    CHECK(j["flagged_pairs"] == 29);
    REQUIRE(j["pairs"].size() == 171);
    size_t flagged = 0;
    double best = 0.0;
    for (const auto& p : j["pairs"]) {
        if (p["flagged"].get<bool>()) ++flagged;
        best = std::max(best, p["delta"].get<double>());
    }
    CHECK(flagged == 29);
    CHECK(best == Approx(fixtures::delta_yahoo_msn).margin(1e-9));
}

TEST_CASE("cli merger-screen: table lists flagged pairs by size") {
    const RunResult r = run_cli("merger-screen --roster " + kRoster);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    CHECK(lines[0] == "merger screen: threshold 100.00, flagged pairs 29");
    REQUIRE(lines.size() == 2 + 29);
    CHECK_THAT(lines[2], ContainsSubstring("msn") && ContainsSubstring("yahoo") &&
                             ContainsSubstring("785.36"));
    CHECK_THAT(lines[3], ContainsSubstring("go") && ContainsSubstring("419.01"));
}

TEST_CASE("cli merger-screen: raising the threshold empties the flag list") {
    const RunResult r = run_cli("merger-screen --roster " + kRoster +
                                " --threshold 10000 --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output)["flagged_pairs"] == 0);
}

TEST_CASE("cli sensitivity: ten-step overlap grid stays unconcentrated") {
    const RunResult r = run_cli("sensitivity --roster " + kRoster + " --snapshot " +
                                kSnapshot + " --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "overlap,nahhi,classification");
    CHECK(lines[1] == "0,892.2611229456628,Unconcentrated");
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto comma = lines[i].find(','), comma2 = lines[i].rfind(',');
        const double value = std::stod(lines[i].substr(comma + 1, comma2 - comma - 1));
        CHECK(value < 1000.0);
        CHECK(lines[i].substr(comma2 + 1) == "Unconcentrated");
    }
}

TEST_CASE("cli trend: single-snapshot table golden") {
    const RunResult r =
        run_cli("trend --snapshot " + kSnapshot + " --roster " + kRoster);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "network series: 1 snapshot");
    CHECK(lines[2] == "2000-08-12  1.84 (1.60)  1.84 (2.32)  0.96 (1.80)  "
                      "1.00 (0.46)  0.10 (0.30)");
}

TEST_CASE("cli trend: repeated dates are a data error") {
    const RunResult r = run_cli("trend --snapshot " + kSnapshot + " --snapshot " +
                                    kSnapshot + " --roster " + kRoster,
                                /*merge_stderr=*/true);
    CHECK(r.exit_code == 1);
    CHECK_THAT(r.output, ContainsSubstring("strictly increasing"));
}

TEST_CASE("cli trend: a second snapshot yields verdict lines") {
    // Same matrix, later date -> every verdict is flat.
    std::ifstream in(kSnapshot);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    const std::string marker = "#date,2000-08-12";
    text.replace(text.find(marker), marker.size(), "#date,2000-09-12");
    const TempFile later("netmark_cli_later_snapshot.csv", text);

    const RunResult r = run_cli("trend --snapshot " + kSnapshot + " --snapshot " +
                                later.str() + " --roster " + kRoster + " --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["trends"].size() == 5);
    CHECK(j["trends"]["density"] == "flat");
}

TEST_CASE("cli regress: csv carries full-precision coefficients") {
    const RunResult r = run_cli("regress --features " + kFeatures + " --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] ==
          "# logistic fits: feature flag on setup_year, observations=19");
    CHECK(lines[5] == "# ols fit: reach_pct on setup_year");

    // Logistic rows: feature,slope,...; compare numerically field by field.
    for (size_t i = 0; i < fixtures::logistic_goldens.size(); ++i) {
        const auto& golden = fixtures::logistic_goldens[i];
        std::istringstream row(lines[2 + i]);
        std::string feature, slope, intercept, odds, lr, p, r2, conv;
        std::getline(row, feature, ',');
        std::getline(row, slope, ',');
        std::getline(row, intercept, ',');
        std::getline(row, odds, ',');
        std::getline(row, lr, ',');
        std::getline(row, p, ',');
        std::getline(row, r2, ',');
        std::getline(row, conv, ',');
        CHECK(feature == golden.feature);
        CHECK(std::stod(slope) == Approx(golden.slope).margin(1e-9));
        CHECK(std::stod(intercept) == Approx(golden.intercept).margin(1e-5));
        CHECK(std::stod(odds) == Approx(golden.odds_ratio).margin(1e-9));
        CHECK(std::stod(lr) == Approx(golden.lr_statistic).margin(1e-5));
        CHECK(std::stod(p) == Approx(golden.p_value).margin(1e-5));
        CHECK(std::stod(r2) == Approx(golden.r2_nagelkerke).margin(1e-5));
        CHECK(conv == "1");
    }
    CHECK(lines[7].rfind("-3.873280423", 0) == 0);
    CHECK(lines[7].substr(lines[7].size() - 3) == ",19");
}

TEST_CASE("cli validate: clean fixtures pass") {
    const RunResult r = run_cli("validate --roster " + kRoster + " --snapshot " +
                                kSnapshot + " --features " + kFeatures);
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "validate: 3 files, 0 issues");
    CHECK(lines[1] == "ok " + kRoster + " (roster)");
    CHECK(lines[2] == "ok " + kSnapshot + " (snapshot)");
    CHECK(lines[3] == "ok " + kFeatures + " (features)");
}

TEST_CASE("cli validate: broken files fail with located issues") {
    const TempFile bad("netmark_cli_bad_snapshot.csv",
                       "#date,2000-01-02\nid,a,b\na,1,2\nb,0,0\n");
    const RunResult r =
        run_cli("validate --snapshot " + bad.str() + " --format json");
    CHECK(r.exit_code == 1);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["ok"] == false);
    CHECK(j["issue_count"].get<int>() >= 2);   // self-link and non-binary cell
    CHECK(j["files"][0]["kind"] == "snapshot");
}

TEST_CASE("cli validate: missing file is reported, not fatal") {
    const RunResult r = run_cli("validate --roster /nonexistent/r.csv");
    CHECK(r.exit_code == 1);
    CHECK_THAT(r.output, ContainsSubstring("cannot open file"));
}

TEST_CASE("cli exit codes: usage errors are 2") {
    CHECK(run_cli("", true).exit_code == 2);                       // no subcommand
    CHECK(run_cli("centrality", true).exit_code == 2);             // missing required
    CHECK(run_cli("frobnicate --x 1", true).exit_code == 2);       // unknown command
    CHECK(run_cli("centrality --snapshot " + kSnapshot + " --metric pagerank", true)
              .exit_code == 2);                                    // bad metric value
    CHECK(run_cli("concentration --roster " + kRoster + " --format yaml", true)
              .exit_code == 2);                                    // bad format value
    CHECK(run_cli("merger-screen --roster " + kRoster + " --threshold -5", true)
              .exit_code == 2);                                    // negative threshold
    CHECK(run_cli("concentration --roster " + kRoster + " --overlap 1.5", true)
              .exit_code == 2);                                    // overlap out of range
    CHECK(run_cli("validate", true).exit_code == 2);               // nothing to validate
}

TEST_CASE("cli exit codes: help is 0, data problems are 1") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("centrality --help").exit_code == 0);

    const RunResult missing = run_cli(
        "centrality --snapshot /nonexistent.csv --metric indegree", true);
    CHECK(missing.exit_code == 1);
    CHECK_THAT(missing.output, ContainsSubstring("error: cannot open file"));

    const TempFile selflink("netmark_cli_selflink.csv",
                            "#date,2000-01-02\nid,a,b\na,1,0\nb,0,0\n");
    const RunResult bad = run_cli(
        "centrality --snapshot " + selflink.str() + " --metric indegree", true);
    CHECK(bad.exit_code == 1);
    CHECK_THAT(bad.output, ContainsSubstring("self-link"));
}

TEST_CASE("cli --help names every subcommand") {
    const RunResult r = run_cli("--help");
    REQUIRE(r.exit_code == 0);
    for (const char* name : {"centrality", "concentration", "merger-screen",
                             "sensitivity", "trend", "regress", "validate"})
        CHECK_THAT(r.output, ContainsSubstring(name));
}
