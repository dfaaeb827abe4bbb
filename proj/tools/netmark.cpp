// netmark — network-centrality and market-concentration reports over
// directed interconnection snapshots and audience-reach rosters.
//
// Exit codes: 0 success, 1 data error (unreadable/invalid input, failed
// validation), 2 usage error (unknown flags, missing required options).

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netmark/centrality.hpp"
#include "netmark/common.hpp"
#include "netmark/concentration.hpp"
#include "netmark/io.hpp"
#include "netmark/longitudinal.hpp"
#include "netmark/roster.hpp"
#include "netmark/snapshot.hpp"
#include "netmark/stats.hpp"

namespace {

netmark::OutputFormat parse_format(const std::string& name) {
    const auto f = netmark::format_from_string(name);
    if (!f) throw netmark::Error("unknown format '" + name + "'");
    return *f;
}

int run_centrality(const std::string& snapshot_path, const std::string& roster_path,
                   const std::string& metric_name_arg, int top_k_arg,
                   const std::string& format_arg) {
    std::optional<netmark::EngineRoster> roster;
    if (!roster_path.empty()) roster = netmark::load_roster(roster_path);
    const netmark::NetworkSnapshot snapshot =
        netmark::load_snapshot(snapshot_path, roster ? &*roster : nullptr);

    const auto metric = netmark::metric_from_string(metric_name_arg);
    if (!metric) throw netmark::Error("unknown metric '" + metric_name_arg + "'");

    netmark::CentralityReport report;
    switch (*metric) {
        case netmark::Metric::Indegree:
        case netmark::Metric::Outdegree:
            report = netmark::degree_centrality(snapshot, *metric);
            break;
        case netmark::Metric::BetweennessNormalized:
            report = netmark::betweenness(snapshot);
            break;
        case netmark::Metric::Information:
            report = netmark::information_centrality(snapshot);
            break;
    }
    const size_t k = std::min<size_t>(static_cast<size_t>(top_k_arg), snapshot.size());
    const std::vector<netmark::RankedEntry> top = netmark::top_k(report, k);
    std::cout << netmark::emit_centrality(report, top, parse_format(format_arg));
    return 0;
}

int run_concentration(const std::string& roster_path, const std::string& snapshot_path,
                      double overlap, int top_k_arg, const std::string& format_arg) {
    const netmark::EngineRoster roster = netmark::load_roster(roster_path);
    const netmark::ShareTable shares = netmark::shares_from_reach(roster);
    std::optional<netmark::NetworkSnapshot> snapshot;
    if (!snapshot_path.empty())
        snapshot = netmark::load_snapshot(snapshot_path, &roster);
    const size_t k = std::min<size_t>(static_cast<size_t>(top_k_arg), shares.size());
    const netmark::ConcentrationReport report = netmark::make_concentration_report(
        shares, k, &roster, snapshot ? &*snapshot : nullptr, overlap);
    std::cout << netmark::emit_concentration(report, parse_format(format_arg));
    return 0;
}

int run_merger_screen(const std::string& roster_path, double threshold,
                      const std::string& format_arg) {
    const netmark::EngineRoster roster = netmark::load_roster(roster_path);
    const netmark::ShareTable shares = netmark::shares_from_reach(roster);
    const netmark::MergerScreenMatrix matrix = netmark::merger_screen(shares, threshold);
    std::cout << netmark::emit_merger_screen(matrix, parse_format(format_arg));
    return 0;
}

int run_sensitivity(const std::string& roster_path, const std::string& snapshot_path,
                    const std::string& format_arg) {
    const netmark::EngineRoster roster = netmark::load_roster(roster_path);
    const netmark::NetworkSnapshot snapshot =
        netmark::load_snapshot(snapshot_path, &roster);
    std::vector<double> grid;
    for (int i = 0; i <= 9; ++i) grid.push_back(static_cast<double>(i) / 10.0);
    const netmark::SensitivityReport report = netmark::make_sensitivity_report(
        netmark::overlap_sensitivity(roster, snapshot, grid));
    std::cout << netmark::emit_sensitivity(report, parse_format(format_arg));
    return 0;
}

int run_trend(const std::vector<std::string>& snapshot_paths,
              const std::string& roster_path, const std::string& format_arg) {
    std::optional<netmark::EngineRoster> roster;
    if (!roster_path.empty()) roster = netmark::load_roster(roster_path);
    std::vector<netmark::NetworkSnapshot> snapshots;
    snapshots.reserve(snapshot_paths.size());
    for (const std::string& path : snapshot_paths) {
        const netmark::EngineRoster* expected =
            roster ? &*roster
                   : (snapshots.empty() ? nullptr : &snapshots.front().roster());
        snapshots.push_back(netmark::load_snapshot(path, expected));
    }
    const netmark::SnapshotSeries series(std::move(snapshots));
    const netmark::TrendReport report = netmark::make_trend_report(series);
    std::cout << netmark::emit_trend(report, parse_format(format_arg));
    return 0;
}

int run_regress(const std::string& features_path, const std::string& format_arg) {
    const netmark::FeatureTable table = netmark::load_features(features_path);
    const netmark::RegressionReport report = netmark::make_regression_report(table);
    std::cout << netmark::emit_regression(report, parse_format(format_arg));
    return 0;
}

int run_validate(const std::vector<std::string>& roster_paths,
                 const std::vector<std::string>& snapshot_paths,
                 const std::vector<std::string>& features_paths,
                 const std::string& format_arg) {
    namespace nm = netmark;
    nm::ValidationReport report;

    // When a roster is supplied, snapshots are cross-checked against the
    // first one that parses cleanly.
    std::optional<nm::EngineRoster> reference_roster;
    for (const std::string& path : roster_paths) {
        nm::ValidationReport::File file{path, "roster", {}};
        try {
            const std::string text = nm::detail::read_file(path);
            file.issues = nm::inspect_roster_csv(text, path);
            if (file.issues.empty() && !reference_roster)
                reference_roster = nm::parse_roster_csv(text, path);
        } catch (const nm::Error&) {
            file.issues.push_back({path, -1, -1, "cannot open file"});
        }
        report.files.push_back(std::move(file));
    }
    for (const std::string& path : snapshot_paths) {
        nm::ValidationReport::File file{path, "snapshot", {}};
        try {
            const std::string text = nm::detail::read_file(path);
            file.issues = nm::inspect_snapshot_csv(
                text, path, reference_roster ? &*reference_roster : nullptr);
        } catch (const nm::Error&) {
            file.issues.push_back({path, -1, -1, "cannot open file"});
        }
        report.files.push_back(std::move(file));
    }
    for (const std::string& path : features_paths) {
        nm::ValidationReport::File file{path, "features", {}};
        try {
            const std::string text = nm::detail::read_file(path);
            file.issues = nm::inspect_features_csv(text, path);
        } catch (const nm::Error&) {
            file.issues.push_back({path, -1, -1, "cannot open file"});
        }
        report.files.push_back(std::move(file));
    }

    std::cout << nm::emit_validation(report, parse_format(format_arg));
    return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-centrality and market-concentration reports over "
                 "directed interconnection snapshots",
                 "netmark"};
    app.require_subcommand(1);

    const std::vector<std::string> formats{"table", "csv", "json"};
    const std::vector<std::string> metrics{"indegree", "outdegree", "betweenness",
                                           "betweenness_normalized", "information"};

    std::string cent_snapshot, cent_roster, cent_metric, cent_format = "table";
    int cent_top_k = 4;
    CLI::App* cent = app.add_subcommand(
        "centrality", "Per-node centrality scores for one snapshot");
    cent->add_option("--snapshot", cent_snapshot, "Snapshot CSV")->required();
    cent->add_option("--roster", cent_roster, "Roster CSV the snapshot must match");
    cent->add_option("--metric", cent_metric, "Which centrality to compute")
        ->required()
        ->check(CLI::IsMember(metrics));
    cent->add_option("--top-k", cent_top_k,
                     "Ranking length (clamped to the node count)")
        ->default_val(4)
        ->check(CLI::Range(1, 1000000));
    cent->add_option("--format", cent_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    std::string conc_roster, conc_snapshot, conc_format = "table";
    double conc_overlap = 0.3;
    int conc_top_k = 4;
    CLI::App* conc = app.add_subcommand(
        "concentration", "Market-share concentration (CR, HHI, network-adjusted HHI)");
    conc->add_option("--roster", conc_roster, "Roster CSV with reach_pct")->required();
    conc->add_option("--snapshot", conc_snapshot,
                     "Snapshot CSV; adds the network-adjusted index");
    conc->add_option("--overlap", conc_overlap,
                     "Assumed shared-audience fraction for the network adjustment")
        ->default_val(0.3)
        ->check(CLI::Range(0.0, 1.0));
    conc->add_option("--top-k", conc_top_k, "k for the concentration ratio")
        ->default_val(4)
        ->check(CLI::Range(1, 1000000));
    conc->add_option("--format", conc_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    std::string merger_roster, merger_format = "table";
    double merger_threshold = 100.0;
    CLI::App* merger = app.add_subcommand(
        "merger-screen", "Pairwise HHI increase for every hypothetical merger");
    merger->add_option("--roster", merger_roster, "Roster CSV with reach_pct")
        ->required();
    merger->add_option("--threshold", merger_threshold,
                       "Flag pairs whose HHI increase exceeds this")
        ->default_val(100.0)
        ->check(CLI::NonNegativeNumber);
    merger->add_option("--format", merger_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    std::string sens_roster, sens_snapshot, sens_format = "table";
    CLI::App* sens = app.add_subcommand(
        "sensitivity", "Network-adjusted HHI across overlap 0.0-0.9");
    sens->add_option("--roster", sens_roster, "Roster CSV with reach_pct")->required();
    sens->add_option("--snapshot", sens_snapshot, "Snapshot CSV")->required();
    sens->add_option("--format", sens_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    std::vector<std::string> trend_snapshots;
    std::string trend_roster, trend_format = "table";
    CLI::App* trend = app.add_subcommand(
        "trend", "Metric summaries and trend verdicts across dated snapshots");
    trend->add_option("--snapshot", trend_snapshots,
                      "Snapshot CSVs in ascending date order (repeatable)")
        ->required();
    trend->add_option("--roster", trend_roster, "Roster CSV all snapshots must match");
    trend->add_option("--format", trend_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    std::string regress_features, regress_format = "table";
    CLI::App* regress = app.add_subcommand(
        "regress", "Feature-on-year logistic fits and reach-on-year least squares");
    regress->add_option("--features", regress_features, "Feature table CSV")
        ->required();
    regress->add_option("--format", regress_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    std::vector<std::string> val_rosters, val_snapshots, val_features;
    std::string val_format = "table";
    CLI::App* validate = app.add_subcommand(
        "validate", "Check input files and list every problem found");
    validate->add_option("--roster", val_rosters, "Roster CSVs (repeatable)");
    validate->add_option("--snapshot", val_snapshots, "Snapshot CSVs (repeatable)");
    validate->add_option("--features", val_features, "Feature table CSVs (repeatable)");
    validate->add_option("--format", val_format, "Output format")
        ->default_val("table")
        ->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);   // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cent)
            return run_centrality(cent_snapshot, cent_roster, cent_metric, cent_top_k,
                                  cent_format);
        if (*conc)
            return run_concentration(conc_roster, conc_snapshot, conc_overlap,
                                     conc_top_k, conc_format);
        if (*merger)
            return run_merger_screen(merger_roster, merger_threshold, merger_format);
        if (*sens) return run_sensitivity(sens_roster, sens_snapshot, sens_format);
        if (*trend) return run_trend(trend_snapshots, trend_roster, trend_format);
        if (*regress) return run_regress(regress_features, regress_format);
        if (*validate) {
            if (val_rosters.empty() && val_snapshots.empty() && val_features.empty()) {
                std::cerr << "validate: provide at least one of --roster, --snapshot, "
                             "--features\n";
                return 2;
            }
            return run_validate(val_rosters, val_snapshots, val_features, val_format);
        }
    } catch (const netmark::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
