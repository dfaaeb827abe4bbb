#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "netmark/centrality.hpp"
#include "netmark/common.hpp"
#include "netmark/snapshot.hpp"

namespace netmark {

/// Summary statistics of one snapshot: mean and population stdev of each
/// centrality metric over all nodes, plus density. The value attached to
/// density is the standard deviation of the binary cell variable,
/// sqrt(d(1-d)), which is what the published monthly tables parenthesize
/// next to density.
struct SeriesRow {
    std::string date;
    double mean_indegree = 0.0, sd_indegree = 0.0;
    double mean_outdegree = 0.0, sd_outdegree = 0.0;
    double mean_betweenness = 0.0, sd_betweenness = 0.0;
    double mean_information = 0.0, sd_information = 0.0;
    double density = 0.0, density_sd = 0.0;
};

struct SeriesReport {
    std::vector<SeriesRow> rows;   ///< one per snapshot, in date order
};

enum class SeriesMetric {
    MeanIndegree,
    MeanOutdegree,
    MeanBetweenness,
    MeanInformation,
    Density
};

inline std::string series_metric_name(SeriesMetric m) {
    switch (m) {
        case SeriesMetric::MeanIndegree: return "mean_indegree";
        case SeriesMetric::MeanOutdegree: return "mean_outdegree";
        case SeriesMetric::MeanBetweenness: return "mean_betweenness";
        case SeriesMetric::MeanInformation: return "mean_information";
        case SeriesMetric::Density: return "density";
    }
    throw Error("series_metric_name: unknown metric");
}

/// Per-snapshot summaries of all five metrics. Errors from the underlying
/// metrics (for example betweenness on fewer than 3 nodes) propagate.
inline SeriesReport summarize_series(const SnapshotSeries& series) {
    if (series.empty()) throw Error("summarize_series: empty series");
    SeriesReport report;
    report.rows.reserve(series.size());
    for (const NetworkSnapshot& snapshot : series.snapshots()) {
        SeriesRow row;
        row.date = snapshot.date();
        const CentralityReport in = degree_centrality(snapshot, Metric::Indegree);
        const CentralityReport out = degree_centrality(snapshot, Metric::Outdegree);
        const CentralityReport betw = betweenness(snapshot);
        const CentralityReport info = information_centrality(snapshot);
        row.mean_indegree = in.mean;
        row.sd_indegree = in.stdev;
        row.mean_outdegree = out.mean;
        row.sd_outdegree = out.stdev;
        row.mean_betweenness = betw.mean;
        row.sd_betweenness = betw.stdev;
        row.mean_information = info.mean;
        row.sd_information = info.stdev;
        row.density = density(snapshot);
        row.density_sd = std::sqrt(row.density * (1.0 - row.density));
        report.rows.push_back(row);
    }
    return report;
}

enum class TrendVerdict { Increasing, Decreasing, Flat, NonMonotonicUp, NonMonotonicDown };

inline std::string trend_verdict_name(TrendVerdict v) {
    switch (v) {
        case TrendVerdict::Increasing: return "increasing";
        case TrendVerdict::Decreasing: return "decreasing";
        case TrendVerdict::Flat: return "flat";
        case TrendVerdict::NonMonotonicUp: return "non-monotonic-up";
        case TrendVerdict::NonMonotonicDown: return "non-monotonic-down";
    }
    throw Error("trend_verdict_name: unknown verdict");
}

/// Compare last against first and check the monotonicity of the steps in
/// between. Steps use strict inequality: equal consecutive values do not
/// break monotonicity. When the endpoints are equal the verdict is flat
/// (endpoint-comparison semantics).
inline TrendVerdict classify_trend(const std::vector<double>& values) {
    if (values.size() < 2)
        throw Error("classify_trend: needs at least 2 values");
    bool any_up = false, any_down = false;
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1]) any_up = true;
        if (values[i] < values[i - 1]) any_down = true;
    }
    const double first = values.front(), last = values.back();
    if (last > first) return any_down ? TrendVerdict::NonMonotonicUp : TrendVerdict::Increasing;
    if (last < first) return any_up ? TrendVerdict::NonMonotonicDown : TrendVerdict::Decreasing;
    return TrendVerdict::Flat;
}

inline TrendVerdict structuration_trend(const SeriesReport& report, SeriesMetric metric) {
    std::vector<double> values;
    values.reserve(report.rows.size());
    for (const SeriesRow& row : report.rows) {
        switch (metric) {
            case SeriesMetric::MeanIndegree: values.push_back(row.mean_indegree); break;
            case SeriesMetric::MeanOutdegree: values.push_back(row.mean_outdegree); break;
            case SeriesMetric::MeanBetweenness: values.push_back(row.mean_betweenness); break;
            case SeriesMetric::MeanInformation: values.push_back(row.mean_information); break;
            case SeriesMetric::Density: values.push_back(row.density); break;
        }
    }
    return classify_trend(values);
}

/// Mean in/out degree of a designated group versus the rest of the roster,
/// per snapshot and across the whole series, plus per-member cross-series
/// means. The group must be a non-empty proper subset of the roster.
struct GroupComparison {
    std::vector<std::string> group_ids;   ///< roster order
    std::vector<std::string> other_ids;   ///< roster order

    struct Row {
        std::string date;
        double group_mean_in = 0.0, group_mean_out = 0.0;
        double others_mean_in = 0.0, others_mean_out = 0.0;
    };
    std::vector<Row> rows;

    double group_mean_in = 0.0, group_mean_out = 0.0;
    double others_mean_in = 0.0, others_mean_out = 0.0;

    struct MemberMean {
        std::string id;
        double mean_in = 0.0, mean_out = 0.0;
    };
    std::vector<MemberMean> member_means;   ///< group members, roster order
};

inline GroupComparison compare_groups(const SnapshotSeries& series,
                                      const std::vector<std::string>& group_ids) {
    if (series.empty()) throw Error("compare_groups: empty series");
    const EngineRoster& roster = series.at(0).roster();
    const size_t n = roster.size();
    if (group_ids.empty()) throw Error("compare_groups: empty group");

    std::vector<bool> in_group(n, false);
    for (const std::string& id : group_ids) {
        const size_t idx = roster.require_index(id);
        if (in_group[idx]) throw Error("compare_groups: duplicate group id '" + id + "'");
        in_group[idx] = true;
    }
    size_t group_size = 0;
    for (bool b : in_group) group_size += b ? 1 : 0;
    if (group_size == n)
        throw Error("compare_groups: group must be a proper subset of the roster");

    GroupComparison out;
    for (size_t i = 0; i < n; ++i)
        (in_group[i] ? out.group_ids : out.other_ids).push_back(roster.entry(i).id);

    const double gsize = static_cast<double>(group_size);
    const double osize = static_cast<double>(n - group_size);
    std::vector<double> member_in_sum(n, 0.0), member_out_sum(n, 0.0);

    for (const NetworkSnapshot& snapshot : series.snapshots()) {
        GroupComparison::Row row;
        row.date = snapshot.date();
        double gin = 0.0, gout = 0.0, oin = 0.0, oout = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double din = in_degree(snapshot, i);
            const double dout = out_degree(snapshot, i);
            member_in_sum[i] += din;
            member_out_sum[i] += dout;
            if (in_group[i]) { gin += din; gout += dout; }
            else { oin += din; oout += dout; }
        }
        row.group_mean_in = gin / gsize;
        row.group_mean_out = gout / gsize;
        row.others_mean_in = oin / osize;
        row.others_mean_out = oout / osize;
        out.rows.push_back(row);
    }

    const double snapshots = static_cast<double>(series.size());
    double gin = 0.0, gout = 0.0, oin = 0.0, oout = 0.0;
    for (const auto& row : out.rows) {
        gin += row.group_mean_in;
        gout += row.group_mean_out;
        oin += row.others_mean_in;
        oout += row.others_mean_out;
    }
    out.group_mean_in = gin / snapshots;
    out.group_mean_out = gout / snapshots;
    out.others_mean_in = oin / snapshots;
    out.others_mean_out = oout / snapshots;

    for (size_t i = 0; i < n; ++i)
        if (in_group[i])
            out.member_means.push_back({roster.entry(i).id,
                                        member_in_sum[i] / snapshots,
                                        member_out_sum[i] / snapshots});
    return out;
}

} // namespace netmark
