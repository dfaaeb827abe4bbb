#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netmark/common.hpp"

namespace netmark {

struct RosterEntry {
    std::string id;                    ///< short unique token, non-empty
    std::string name;                  ///< display string
    std::optional<int> setup_year;     ///< calendar year the organization launched
    std::optional<double> reach_pct;   ///< percentage of surveyed audience, in [0, 100]
};

/// Ordered list of organizations. The ordering is stable and defines the
/// row/column order of every matrix built over the roster. Audience-reach
/// percentages may sum to more than 100 across entries (one person can
/// visit many sites); each individual value must lie in [0, 100].
///
/// Immutable after construction; safe for concurrent reads.
class EngineRoster {
public:
    explicit EngineRoster(std::vector<RosterEntry> entries)
        : entries_(std::move(entries)) {
        for (size_t i = 0; i < entries_.size(); ++i) {
            const RosterEntry& e = entries_[i];
            if (e.id.empty())
                throw Error("roster entry " + std::to_string(i + 1) + " has an empty id");
            if (e.reach_pct &&
                !(*e.reach_pct >= 0.0 && *e.reach_pct <= 100.0))
                throw Error("reach_pct for '" + e.id + "' must lie in [0, 100], got " +
                            detail::format_double(*e.reach_pct));
            for (size_t j = 0; j < i; ++j)
                if (entries_[j].id == e.id)
                    throw Error("duplicate roster id '" + e.id + "'");
        }
    }

    size_t size() const { return entries_.size(); }
    const std::vector<RosterEntry>& entries() const { return entries_; }
    const RosterEntry& entry(size_t index) const { return entries_.at(index); }

    std::optional<size_t> index_of(std::string_view id) const {
        for (size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].id == id) return i;
        return std::nullopt;
    }

    size_t require_index(std::string_view id) const {
        if (const auto i = index_of(id)) return *i;
        throw Error("unknown id '" + std::string(id) + "'");
    }

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.id);
        return out;
    }

    /// True when both rosters list the same ids in the same order.
    bool same_ids(const EngineRoster& other) const {
        if (entries_.size() != other.entries_.size()) return false;
        for (size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].id != other.entries_[i].id) return false;
        return true;
    }

private:
    std::vector<RosterEntry> entries_;
};

/// Normalized market shares s_i (non-negative, summing to 1 within 1e-12),
/// indexed in roster order. Immutable after construction.
class ShareTable {
public:
    ShareTable(std::vector<std::string> ids, std::vector<double> shares)
        : ids_(std::move(ids)), shares_(std::move(shares)) {
        if (ids_.size() != shares_.size())
            throw Error("share table: id and share counts differ");
        if (ids_.empty())
            throw Error("share table: empty");
        double sum = 0.0;
        for (size_t i = 0; i < ids_.size(); ++i) {
            if (ids_[i].empty())
                throw Error("share table: empty id at position " + std::to_string(i));
            for (size_t j = 0; j < i; ++j)
                if (ids_[j] == ids_[i])
                    throw Error("share table: duplicate id '" + ids_[i] + "'");
            if (!std::isfinite(shares_[i]) || shares_[i] < 0.0)
                throw Error("share table: share for '" + ids_[i] +
                            "' must be a finite non-negative fraction, got " +
                            detail::format_double(shares_[i]));
            sum += shares_[i];
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw Error("share table: shares sum to " + detail::format_double(sum) +
                        ", expected 1 within 1e-12");
    }

    size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<double>& shares() const { return shares_; }
    double share(size_t index) const { return shares_.at(index); }

    std::optional<size_t> index_of(std::string_view id) const {
        for (size_t i = 0; i < ids_.size(); ++i)
            if (ids_[i] == id) return i;
        return std::nullopt;
    }

    size_t require_index(std::string_view id) const {
        if (const auto i = index_of(id)) return *i;
        throw Error("unknown id '" + std::string(id) + "'");
    }

private:
    std::vector<std::string> ids_;
    std::vector<double> shares_;
};

/// Market share of each roster member: its audience reach divided by the
/// summed reach of the whole roster (the roster is taken to be the entire
/// market). Every entry must carry a reach value and at least one must be
/// positive; a missing value is a hard error rather than an implicit zero,
/// because silently zeroing a firm would distort every concentration index
/// computed downstream.
inline ShareTable shares_from_reach(const EngineRoster& roster) {
    if (roster.size() == 0) throw Error("shares_from_reach: empty roster");
    double total = 0.0;
    for (const RosterEntry& e : roster.entries()) {
        if (!e.reach_pct)
            throw Error("shares_from_reach: missing reach_pct for '" + e.id + "'");
        total += *e.reach_pct;
    }
    if (total <= 0.0)
        throw Error("shares_from_reach: all reach values are zero");
    std::vector<double> shares;
    shares.reserve(roster.size());
    for (const RosterEntry& e : roster.entries())
        shares.push_back(*e.reach_pct / total);
    return ShareTable(roster.ids(), std::move(shares));
}

} // namespace netmark
