#pragma once

#include <string>
#include <utility>
#include <vector>

#include "netmark/common.hpp"
#include "netmark/roster.hpp"

namespace netmark {

/// One validation problem. row/col are 0-based matrix coordinates, or -1
/// when the violation is not tied to a specific cell.
struct Violation {
    std::string message;
    long row = -1;
    long col = -1;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Dated directed 0/1 adjacency matrix over a roster: cell (i, j) = 1 means
/// organization i places a hyperlink pointing to organization j.
///
/// Construction stores the matrix as given (possibly ragged or non-binary)
/// so that validate_snapshot can report violations; every analytic
/// operation requires a valid snapshot and throws otherwise.
/// Immutable after construction; safe for concurrent reads.
class NetworkSnapshot {
public:
    NetworkSnapshot(std::string date, EngineRoster roster,
                    std::vector<std::vector<int>> adjacency)
        : date_(std::move(date)), roster_(std::move(roster)),
          adjacency_(std::move(adjacency)) {}

    const std::string& date() const { return date_; }
    const EngineRoster& roster() const { return roster_; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    size_t size() const { return roster_.size(); }

private:
    std::string date_;
    EngineRoster roster_;
    std::vector<std::vector<int>> adjacency_;
};

/// Check the structural invariants of a snapshot: the matrix is square with
/// dimension equal to the roster size, every entry is 0 or 1, and the
/// diagonal is all zero (self-links are rejected rather than ignored).
/// Violations are data, not failures: the result lists every problem found.
inline ValidationResult validate_snapshot(const NetworkSnapshot& snapshot) {
    ValidationResult result;
    const size_t n = snapshot.roster().size();
    const auto& m = snapshot.adjacency();
    if (m.size() != n)
        result.violations.push_back(
            {"non-square: matrix has " + std::to_string(m.size()) +
                 " rows for a roster of " + std::to_string(n),
             -1, -1});
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != n)
            result.violations.push_back(
                {"non-square: row " + std::to_string(i) + " has " +
                     std::to_string(m[i].size()) + " cells, expected " +
                     std::to_string(n),
                 static_cast<long>(i), -1});
        for (size_t j = 0; j < m[i].size(); ++j) {
            const int v = m[i][j];
            if (v != 0 && v != 1)
                result.violations.push_back(
                    {"non-binary cell at (" + std::to_string(i) + "," +
                         std::to_string(j) + "): " + std::to_string(v),
                     static_cast<long>(i), static_cast<long>(j)});
            else if (i == j && v != 0)
                result.violations.push_back(
                    {"self-link at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")",
                     static_cast<long>(i), static_cast<long>(j)});
        }
    }
    return result;
}

namespace detail {

inline void require_valid(const NetworkSnapshot& snapshot) {
    const ValidationResult r = validate_snapshot(snapshot);
    if (!r.ok())
        throw Error("invalid snapshot (" + snapshot.date() + "): " +
                    r.violations.front().message +
                    (r.violations.size() > 1
                         ? " (+" + std::to_string(r.violations.size() - 1) +
                               " more violations)"
                         : ""));
}

} // namespace detail

/// Number of links pointing at the node (column sum).
inline int in_degree(const NetworkSnapshot& snapshot, size_t index) {
    detail::require_valid(snapshot);
    if (index >= snapshot.size())
        throw Error("in_degree: node index out of range");
    int sum = 0;
    for (size_t i = 0; i < snapshot.size(); ++i)
        sum += snapshot.adjacency()[i][index];
    return sum;
}

inline int in_degree(const NetworkSnapshot& snapshot, std::string_view id) {
    return in_degree(snapshot, snapshot.roster().require_index(id));
}

/// Number of links the node places (row sum).
inline int out_degree(const NetworkSnapshot& snapshot, size_t index) {
    detail::require_valid(snapshot);
    if (index >= snapshot.size())
        throw Error("out_degree: node index out of range");
    int sum = 0;
    for (size_t j = 0; j < snapshot.size(); ++j)
        sum += snapshot.adjacency()[index][j];
    return sum;
}

inline int out_degree(const NetworkSnapshot& snapshot, std::string_view id) {
    return out_degree(snapshot, snapshot.roster().require_index(id));
}

inline long link_count(const NetworkSnapshot& snapshot) {
    detail::require_valid(snapshot);
    long sum = 0;
    for (const auto& row : snapshot.adjacency())
        for (int v : row) sum += v;
    return sum;
}

/// Fraction of possible directed links that are present: links / (n(n-1)).
/// The diagonal is excluded from the denominator because self-links are
/// structurally forbidden.
inline double density(const NetworkSnapshot& snapshot) {
    detail::require_valid(snapshot);
    const size_t n = snapshot.size();
    if (n < 2) throw Error("density: requires at least 2 nodes");
    return static_cast<double>(link_count(snapshot)) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Ordered list of snapshots over one roster with strictly increasing dates
/// (ISO YYYY-MM-DD labels compare correctly as strings). Every member must
/// be structurally valid. Immutable after construction.
class SnapshotSeries {
public:
    explicit SnapshotSeries(std::vector<NetworkSnapshot> snapshots)
        : snapshots_(std::move(snapshots)) {
        for (size_t i = 0; i < snapshots_.size(); ++i) {
            detail::require_valid(snapshots_[i]);
            if (i > 0) {
                if (!snapshots_[i].roster().same_ids(snapshots_[0].roster()))
                    throw Error("snapshot series: snapshot " + std::to_string(i) +
                                " (" + snapshots_[i].date() +
                                ") uses a different roster");
                if (!(snapshots_[i - 1].date() < snapshots_[i].date()))
                    throw Error("snapshot series: dates must be strictly increasing ('" +
                                snapshots_[i - 1].date() + "' then '" +
                                snapshots_[i].date() + "')");
            }
        }
    }

    size_t size() const { return snapshots_.size(); }
    bool empty() const { return snapshots_.empty(); }
    const std::vector<NetworkSnapshot>& snapshots() const { return snapshots_; }
    const NetworkSnapshot& at(size_t i) const { return snapshots_.at(i); }

private:
    std::vector<NetworkSnapshot> snapshots_;
};

} // namespace netmark
