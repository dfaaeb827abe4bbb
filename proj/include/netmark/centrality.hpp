#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "netmark/common.hpp"
#include "netmark/snapshot.hpp"

namespace netmark {

enum class Metric { Indegree, Outdegree, BetweennessNormalized, Information };

inline std::string metric_name(Metric metric) {
    switch (metric) {
        case Metric::Indegree: return "indegree";
        case Metric::Outdegree: return "outdegree";
        case Metric::BetweennessNormalized: return "betweenness_normalized";
        case Metric::Information: return "information";
    }
    throw Error("metric_name: unknown metric");
}

inline std::optional<Metric> metric_from_string(std::string_view name) {
    if (name == "indegree") return Metric::Indegree;
    if (name == "outdegree") return Metric::Outdegree;
    if (name == "betweenness" || name == "betweenness_normalized")
        return Metric::BetweennessNormalized;
    if (name == "information") return Metric::Information;
    return std::nullopt;
}

/// Per-node scores for one metric plus the summary statistics reported in
/// the monthly network tables. convention_notes records the direction and
/// normalization conventions so emitted reports are self-describing.
struct CentralityReport {
    Metric metric{};
    std::vector<std::string> ids;   ///< roster order
    std::vector<double> scores;     ///< parallel to ids
    double mean = 0.0;
    double stdev = 0.0;             ///< population formula
    std::string convention_notes;
};

/// Mean and population standard deviation (sqrt(E[x^2] - mean^2)).
/// The population (not sample) formula is the one the summary tables use.
inline std::pair<double, double> centrality_summary(const std::vector<double>& scores) {
    if (scores.empty()) throw Error("centrality_summary: empty score list");
    double sum = 0.0, sum_sq = 0.0;
    for (double v : scores) { sum += v; sum_sq += v * v; }
    const double n = static_cast<double>(scores.size());
    const double mean = sum / n;
    const double variance = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(variance)};
}

namespace detail {

inline CentralityReport make_report(Metric metric, const EngineRoster& roster,
                                    std::vector<double> scores,
                                    std::string convention_notes) {
    CentralityReport report;
    report.metric = metric;
    report.ids = roster.ids();
    report.scores = std::move(scores);
    const auto [mean, stdev] = centrality_summary(report.scores);
    report.mean = mean;
    report.stdev = stdev;
    report.convention_notes = std::move(convention_notes);
    return report;
}

inline std::vector<std::vector<size_t>> adjacency_lists(const NetworkSnapshot& snapshot) {
    const size_t n = snapshot.size();
    std::vector<std::vector<size_t>> adj(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (snapshot.adjacency()[i][j] == 1) adj[i].push_back(j);
    return adj;
}

} // namespace detail

/// Indegree or outdegree of every node, packaged as a report.
inline CentralityReport degree_centrality(const NetworkSnapshot& snapshot, Metric metric) {
    detail::require_valid(snapshot);
    if (metric != Metric::Indegree && metric != Metric::Outdegree)
        throw Error("degree_centrality: metric must be indegree or outdegree");
    const size_t n = snapshot.size();
    if (n == 0) throw Error("degree_centrality: empty roster");
    std::vector<double> scores(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        scores[i] = metric == Metric::Indegree
                        ? static_cast<double>(in_degree(snapshot, i))
                        : static_cast<double>(out_degree(snapshot, i));
    return detail::make_report(
        metric, snapshot.roster(), std::move(scores),
        metric == Metric::Indegree
            ? "indegree = column sum of the directed 0/1 adjacency (links received)"
            : "outdegree = row sum of the directed 0/1 adjacency (links placed)");
}

/// Betweenness centrality on the DIRECTED graph. For node v, the raw score
/// sums, over ordered pairs (s, t) with s != t != v, the fraction of
/// shortest directed s->t paths that pass through v; pairs with no s->t
/// path contribute 0. The reported score is the percentage normalization
/// 100 * raw / ((n-1)(n-2)).
///
/// Geodesic counts are accumulated exactly in 64-bit integers (overflow is
/// detected and reported rather than silently wrapping).
inline CentralityReport betweenness(const NetworkSnapshot& snapshot) {
    detail::require_valid(snapshot);
    const size_t n = snapshot.size();
    if (n < 3) throw Error("betweenness: requires at least 3 nodes");

    const auto adj = detail::adjacency_lists(snapshot);
    constexpr int kUnreached = -1;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreached));
    std::vector<std::vector<std::uint64_t>> sigma(n, std::vector<std::uint64_t>(n, 0));

    for (size_t s = 0; s < n; ++s) {
        dist[s][s] = 0;
        sigma[s][s] = 1;
        std::deque<size_t> queue{s};
        while (!queue.empty()) {
            const size_t u = queue.front();
            queue.pop_front();
            for (size_t v : adj[u]) {
                if (dist[s][v] == kUnreached) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
                if (dist[s][v] == dist[s][u] + 1) {
                    const std::uint64_t before = sigma[s][v];
                    sigma[s][v] += sigma[s][u];
                    if (sigma[s][v] < before)
                        throw Error("betweenness: geodesic count overflow");
                }
            }
        }
    }

    std::vector<double> raw(n, 0.0);
    for (size_t s = 0; s < n; ++s) {
        for (size_t t = 0; t < n; ++t) {
            if (s == t || dist[s][t] == kUnreached) continue;
            for (size_t v = 0; v < n; ++v) {
                if (v == s || v == t) continue;
                if (dist[s][v] == kUnreached || dist[v][t] == kUnreached) continue;
                if (dist[s][v] + dist[v][t] != dist[s][t]) continue;
                const auto through =
                    static_cast<unsigned __int128>(sigma[s][v]) * sigma[v][t];
                raw[v] += static_cast<double>(through) / static_cast<double>(sigma[s][t]);
            }
        }
    }

    const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    std::vector<double> scores(n, 0.0);
    for (size_t v = 0; v < n; ++v) scores[v] = 100.0 * raw[v] / denom;

    return detail::make_report(
        Metric::BetweennessNormalized, snapshot.roster(), std::move(scores),
        "directed geodesics; unreachable pairs contribute 0; "
        "percentage normalization 100/((n-1)(n-2))");
}

/// Information centrality after symmetrizing the directed graph by edge
/// union (an undirected edge exists when a link exists in either
/// direction). For each connected component of size m, build
/// B = D - A + J over the component (D = degree diagonal, J = all-ones),
/// invert to C, and score node i as 1 / (c_ii + (T - 2R)/m) with
/// T = trace(C) and R = any row sum of C (all row sums of C equal 1/m
/// because B*1 = m*1; this identity is asserted as an internal check).
///
/// Disconnected graphs are handled per component, with J and m taken per
/// component; isolated nodes score 0. Scores are reported raw (no
/// rescaling).
inline CentralityReport information_centrality(const NetworkSnapshot& snapshot) {
    detail::require_valid(snapshot);
    const size_t n = snapshot.size();
    if (n == 0) throw Error("information_centrality: empty roster");

    std::vector<std::vector<int>> sym(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j &&
                (snapshot.adjacency()[i][j] == 1 || snapshot.adjacency()[j][i] == 1))
                sym[i][j] = 1;

    std::vector<int> component(n, -1);
    int component_count = 0;
    for (size_t start = 0; start < n; ++start) {
        if (component[start] != -1) continue;
        const int c = component_count++;
        std::deque<size_t> queue{start};
        component[start] = c;
        while (!queue.empty()) {
            const size_t u = queue.front();
            queue.pop_front();
            for (size_t v = 0; v < n; ++v)
                if (sym[u][v] == 1 && component[v] == -1) {
                    component[v] = c;
                    queue.push_back(v);
                }
        }
    }

    std::vector<double> scores(n, 0.0);
    for (int c = 0; c < component_count; ++c) {
        std::vector<size_t> members;
        for (size_t i = 0; i < n; ++i)
            if (component[i] == c) members.push_back(i);
        const size_t m = members.size();
        if (m == 1) continue; // isolated node scores 0

        Eigen::MatrixXd b(m, m);
        for (size_t a = 0; a < m; ++a) {
            int degree = 0;
            for (size_t k = 0; k < m; ++k) degree += sym[members[a]][members[k]];
            for (size_t k = 0; k < m; ++k)
                b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
                    (a == k ? degree : -sym[members[a]][members[k]]) + 1.0;
        }

        const Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
        if (!lu.isInvertible())
            throw Error("information_centrality: singular B matrix");
        const Eigen::MatrixXd cmat = lu.inverse();

        const double trace = cmat.trace();
        const double row_sum = cmat.row(0).sum();
        if (std::abs(row_sum - 1.0 / static_cast<double>(m)) >
            1e-8 * std::max(1.0, std::abs(trace)))
            throw Error("information_centrality: inverse failed internal row-sum check");

        for (size_t a = 0; a < m; ++a) {
            const double c_aa = cmat(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
            scores[members[a]] =
                1.0 / (c_aa + (trace - 2.0 * row_sum) / static_cast<double>(m));
        }
    }

    return detail::make_report(
        Metric::Information, snapshot.roster(), std::move(scores),
        "symmetrized by edge union; B = D - A + J inverted per connected "
        "component (J and n taken per component); isolated nodes score 0; "
        "raw values, no rescaling");
}

struct RankedEntry {
    std::string id;
    double score = 0.0;
};

/// The k highest-scoring nodes in descending order, ties broken by roster
/// order. When the k-th score is tied with later entries, the whole tie
/// block is included, so the result may be longer than k. Tie detection
/// uses exact score equality (degree scores are exact integers; for real-
/// valued metrics only genuinely identical doubles merge into a block).
inline std::vector<RankedEntry> top_k(const CentralityReport& report, size_t k) {
    const size_t n = report.scores.size();
    if (k < 1) throw Error("top_k: k must be at least 1");
    if (k > n)
        throw Error("top_k: k = " + std::to_string(k) + " exceeds node count " +
                    std::to_string(n));
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (report.scores[a] != report.scores[b])
            return report.scores[a] > report.scores[b];
        return a < b;
    });
    size_t take = k;
    while (take < n && report.scores[order[take]] == report.scores[order[k - 1]])
        ++take;
    std::vector<RankedEntry> out;
    out.reserve(take);
    for (size_t i = 0; i < take; ++i)
        out.push_back({report.ids[order[i]], report.scores[order[i]]});
    return out;
}

} // namespace netmark
