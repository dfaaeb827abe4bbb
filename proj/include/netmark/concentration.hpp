#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "netmark/common.hpp"
#include "netmark/roster.hpp"
#include "netmark/snapshot.hpp"

namespace netmark {

/// Combined market share of the k largest firms.
inline double cr_k(const ShareTable& shares, size_t k) {
    const size_t n = shares.size();
    if (k < 1 || k > n)
        throw Error("cr_k: k = " + std::to_string(k) +
                    " out of range for " + std::to_string(n) + " firms");
    std::vector<double> sorted = shares.shares();
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double sum = 0.0;
    for (size_t i = 0; i < k; ++i) sum += sorted[i];
    return sum;
}

/// Herfindahl-Hirschman Index: sum of squared percentage shares,
/// Σ (100 s_i)^2. 10000 corresponds to a pure monopoly.
inline double hhi(const ShareTable& shares) {
    double sum = 0.0;
    for (double s : shares.shares()) sum += (100.0 * s) * (100.0 * s);
    return sum;
}

/// 1992 Horizontal Merger Guidelines concentration bands. The moderate
/// band is inclusive on both ends ("between 1000 and 1800"), so 1000 and
/// 1800 both classify as moderately concentrated.
enum class Classification { Unconcentrated, ModeratelyConcentrated, HighlyConcentrated };

inline std::string classification_name(Classification c) {
    switch (c) {
        case Classification::Unconcentrated: return "Unconcentrated";
        case Classification::ModeratelyConcentrated: return "ModeratelyConcentrated";
        case Classification::HighlyConcentrated: return "HighlyConcentrated";
    }
    throw Error("classification_name: unknown classification");
}

inline Classification classify_concentration(double hhi_value) {
    if (!(hhi_value >= 0.0))
        throw Error("classify_concentration: HHI must be non-negative, got " +
                    detail::format_double(hhi_value));
    if (hhi_value < 1000.0) return Classification::Unconcentrated;
    if (hhi_value <= 1800.0) return Classification::ModeratelyConcentrated;
    return Classification::HighlyConcentrated;
}

/// Audience reach each firm could command if it captured the not-already-
/// shared audience of every firm linking to it:
/// pr_i = reach_i + (1 - overlap) * Σ_{j links to i} reach_j.
/// overlap is the assumed fraction of a linking firm's audience already
/// shared with the linked firm, so overlap = 1 leaves reach unchanged.
struct PossibleReach {
    std::vector<std::string> ids;   ///< roster order
    std::vector<double> values;     ///< parallel to ids
    double overlap = 0.0;
};

inline PossibleReach possible_reach(const EngineRoster& roster,
                                    const NetworkSnapshot& snapshot,
                                    double overlap) {
    detail::require_valid(snapshot);
    if (!(overlap >= 0.0 && overlap <= 1.0))
        throw Error("possible_reach: overlap must lie in [0, 1], got " +
                    detail::format_double(overlap));
    if (!roster.same_ids(snapshot.roster()))
        throw Error("possible_reach: roster and snapshot cover different ids");
    const size_t n = roster.size();
    std::vector<double> reach(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        const RosterEntry& e = roster.entry(i);
        if (!e.reach_pct)
            throw Error("possible_reach: missing reach_pct for '" + e.id + "'");
        reach[i] = *e.reach_pct;
    }
    PossibleReach out;
    out.ids = roster.ids();
    out.overlap = overlap;
    out.values.resize(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double inflow = 0.0;
        for (size_t j = 0; j < n; ++j)
            if (snapshot.adjacency()[j][i] == 1) inflow += reach[j];
        out.values[i] = reach[i] + (1.0 - overlap) * inflow;
    }
    return out;
}

/// Network-adjusted HHI: recompute the index on shares of possible reach,
/// Q_i = pr_i / Σ pr_j, returning Σ (100 Q_i)^2. With an empty network or
/// overlap = 1 this degenerates to the plain HHI of the reach shares.
inline double nahhi(const EngineRoster& roster, const NetworkSnapshot& snapshot,
                    double overlap) {
    const PossibleReach pr = possible_reach(roster, snapshot, overlap);
    double total = 0.0;
    for (double v : pr.values) total += v;
    if (total <= 0.0) throw Error("nahhi: all reach values are zero");
    double sum = 0.0;
    for (double v : pr.values) {
        const double q = 100.0 * v / total;
        sum += q * q;
    }
    return sum;
}

/// NAHHI evaluated at each overlap value in the grid, preserving input
/// order. An empty grid yields an empty list.
inline std::vector<std::pair<double, double>> overlap_sensitivity(
    const EngineRoster& roster, const NetworkSnapshot& snapshot,
    const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double w : grid) out.emplace_back(w, nahhi(roster, snapshot, w));
    return out;
}

/// Exact HHI increase from merging firms i and j: 2 (100 s_i)(100 s_j),
/// since (a + b)^2 - a^2 - b^2 = 2ab.
inline double merger_delta(const ShareTable& shares, std::string_view id_a,
                           std::string_view id_b) {
    const size_t a = shares.require_index(id_a);
    const size_t b = shares.require_index(id_b);
    if (a == b)
        throw Error("merger_delta: a firm cannot merge with itself ('" +
                    std::string(id_a) + "')");
    return 2.0 * (100.0 * shares.share(a)) * (100.0 * shares.share(b));
}

/// Pairwise HHI deltas for every firm pair, with cells flagged when the
/// delta strictly exceeds the screening threshold ("more than" the
/// guideline value, so the comparison is >, not >=).
struct MergerScreenMatrix {
    std::vector<std::string> ids;              ///< roster order
    std::vector<std::vector<double>> deltas;   ///< full symmetric, zero diagonal
    double threshold = 100.0;
    std::vector<std::pair<size_t, size_t>> flagged;  ///< i < j, roster order

    double delta(size_t i, size_t j) const { return deltas.at(i).at(j); }
    bool is_flagged(size_t i, size_t j) const {
        return i != j && deltas.at(i).at(j) > threshold;
    }
};

inline MergerScreenMatrix merger_screen(const ShareTable& shares, double threshold) {
    if (!(threshold >= 0.0))
        throw Error("merger_screen: threshold must be non-negative, got " +
                    detail::format_double(threshold));
    const size_t n = shares.size();
    MergerScreenMatrix out;
    out.ids = shares.ids();
    out.threshold = threshold;
    out.deltas.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double d =
                2.0 * (100.0 * shares.share(i)) * (100.0 * shares.share(j));
            out.deltas[i][j] = d;
            out.deltas[j][i] = d;
            if (d > threshold) out.flagged.emplace_back(i, j);
        }
    return out;
}

} // namespace netmark
