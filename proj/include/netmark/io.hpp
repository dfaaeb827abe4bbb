#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netmark/centrality.hpp"
#include "netmark/common.hpp"
#include "netmark/concentration.hpp"
#include "netmark/longitudinal.hpp"
#include "netmark/roster.hpp"
#include "netmark/snapshot.hpp"
#include "netmark/stats.hpp"

namespace netmark {

enum class OutputFormat { Table, Csv, Json };

inline std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    throw Error("format_name: unknown format");
}

inline std::optional<OutputFormat> format_from_string(std::string_view name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    return std::nullopt;
}

/// One diagnostic tied to an input file. line is 1-based; col is the
/// 1-based field index within the line; -1 means not applicable.
struct FileIssue {
    std::string file;
    long line = -1;
    long col = -1;
    std::string message;

    std::string format() const {
        std::string s = file;
        if (line > 0) {
            s += ":" + std::to_string(line);
            if (col > 0) s += ":" + std::to_string(col);
        }
        s += ": " + message;
        return s;
    }
};

namespace detail {

/// Strict parsers throw on the first problem; lenient inspection passes a
/// sink and keeps going, collecting every problem in the file.
struct IssueSink {
    std::vector<FileIssue>* issues = nullptr;

    bool lenient() const { return issues != nullptr; }
    void report(std::string file, long line, long col, std::string message) const {
        FileIssue issue{std::move(file), line, col, std::move(message)};
        if (issues) issues->push_back(std::move(issue));
        else throw Error(issue.format());
    }
};

/// Split into lines on '\n', dropping a trailing '\r' from each (so CRLF
/// files parse identically) and ignoring a final empty fragment.
inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t nl = text.find('\n', start);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

inline bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Render rows as space-aligned columns: each column padded to its widest
/// cell, two spaces between columns, trailing spaces trimmed. Output is a
/// pure function of the cell strings, so tables stay byte-deterministic.
inline std::string render_table(const std::vector<std::vector<std::string>>& rows,
                                const std::vector<bool>& right_align) {
    std::vector<size_t> width;
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            const size_t pad = width[c] - row[c].size();
            if (c < right_align.size() && right_align[c])
                line += std::string(pad, ' ') + row[c];
            else {
                line += row[c];
                if (c + 1 < row.size()) line += std::string(pad, ' ');
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Roster files: header `id,name,setup_year,reach_pct`; blank lines and
// lines starting with '#' (provenance notes) are ignored; empty cells are
// absent optionals.
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<EngineRoster> parse_roster_impl(std::string_view text,
                                                     std::string_view source,
                                                     std::vector<FileIssue>* issues) {
    const IssueSink sink{issues};
    const std::string src(source);
    const std::vector<std::string> lines = split_lines(text);

    bool header_seen = false;
    std::vector<RosterEntry> entries;
    std::vector<std::pair<std::string, long>> first_line_of_id;

    for (size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string trimmed = trim(lines[li]);
        if (trimmed.empty()) continue;
        if (trimmed[0] == '#') continue;

        std::vector<std::string> fields = split_csv(lines[li]);
        for (std::string& f : fields) f = trim(f);

        if (!header_seen) {
            if (fields.size() != 4 || fields[0] != "id" || fields[1] != "name" ||
                fields[2] != "setup_year" || fields[3] != "reach_pct") {
                sink.report(src, line_no, -1,
                            "expected header 'id,name,setup_year,reach_pct', got '" +
                                trimmed + "'");
                return std::nullopt;   // cannot interpret rows without the header
            }
            header_seen = true;
            continue;
        }

        if (fields.size() != 4) {
            sink.report(src, line_no, -1,
                        "expected 4 fields, got " + std::to_string(fields.size()));
            continue;
        }

        RosterEntry entry;
        entry.id = fields[0];
        entry.name = fields[1];
        bool row_ok = true;

        if (entry.id.empty()) {
            sink.report(src, line_no, 1, "empty id");
            row_ok = false;
        } else {
            for (const auto& [seen_id, seen_line] : first_line_of_id)
                if (seen_id == entry.id) {
                    sink.report(src, line_no, 1,
                                "duplicate id '" + entry.id + "' (first seen at line " +
                                    std::to_string(seen_line) + ")");
                    row_ok = false;
                    break;
                }
        }

        if (!fields[2].empty()) {
            const auto year = parse_long(fields[2]);
            if (!year) {
                sink.report(src, line_no, 3,
                            "setup_year must be an integer, got '" + fields[2] + "'");
                row_ok = false;
            } else {
                entry.setup_year = static_cast<int>(*year);
            }
        }

        if (!fields[3].empty()) {
            const auto reach = parse_double(fields[3]);
            if (!reach) {
                sink.report(src, line_no, 4,
                            "reach_pct must be a number, got '" + fields[3] + "'");
                row_ok = false;
            } else if (!(*reach >= 0.0 && *reach <= 100.0)) {
                sink.report(src, line_no, 4,
                            "reach_pct must lie in [0, 100], got '" + fields[3] + "'");
                row_ok = false;
            } else {
                entry.reach_pct = *reach;
            }
        }

        if (row_ok) {
            first_line_of_id.emplace_back(entry.id, line_no);
            entries.push_back(std::move(entry));
        }
    }

    if (!header_seen) {
        sink.report(src, -1, -1, "missing header 'id,name,setup_year,reach_pct'");
        return std::nullopt;
    }
    if (entries.empty()) {
        sink.report(src, -1, -1, "no roster rows");
        return std::nullopt;
    }
    return EngineRoster(std::move(entries));
}

} // namespace detail

inline EngineRoster parse_roster_csv(std::string_view text,
                                     std::string_view source = "<roster>") {
    auto roster = detail::parse_roster_impl(text, source, nullptr);
    return *roster;   // strict mode threw on any problem
}

inline std::vector<FileIssue> inspect_roster_csv(std::string_view text,
                                                 std::string_view source) {
    std::vector<FileIssue> issues;
    detail::parse_roster_impl(text, source, &issues);
    return issues;
}

inline EngineRoster load_roster(const std::string& path) {
    return parse_roster_csv(detail::read_file(path), path);
}

inline std::string emit_roster_csv(const EngineRoster& roster) {
    std::string out = "id,name,setup_year,reach_pct\n";
    for (const RosterEntry& e : roster.entries()) {
        out += detail::csv_field(e.id);
        out += ',';
        out += detail::csv_field(e.name);
        out += ',';
        if (e.setup_year) out += std::to_string(*e.setup_year);
        out += ',';
        if (e.reach_pct) out += detail::format_double(*e.reach_pct);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Snapshot files: first content row `#date,YYYY-MM-DD`; then a header row
// `id,<ids...>`; then one row per node, id first, in the same order. Cells
// are strictly 0 or 1. Other '#' lines are comments; blank lines ignored.
// When a roster is supplied the header must list exactly its ids in order;
// otherwise a roster is synthesized from the header.
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<NetworkSnapshot> parse_snapshot_impl(std::string_view text,
                                                          std::string_view source,
                                                          const EngineRoster* roster,
                                                          std::vector<FileIssue>* issues) {
    const IssueSink sink{issues};
    const std::string src(source);
    const std::vector<std::string> lines = split_lines(text);

    enum class Stage { Date, Header, Rows } stage = Stage::Date;
    std::string date;
    std::vector<std::string> header_ids;
    struct RowRecord {
        long line_no;
        std::vector<std::string> fields;
    };
    std::vector<RowRecord> rows;

    for (size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string trimmed = trim(lines[li]);
        if (trimmed.empty()) continue;

        if (stage == Stage::Date) {
            std::vector<std::string> fields = split_csv(trimmed);
            for (std::string& f : fields) f = trim(f);
            if (fields.size() != 2 || fields[0] != "#date") {
                sink.report(src, line_no, 1,
                            "first row must be '#date,YYYY-MM-DD', got '" + trimmed + "'");
                return std::nullopt;
            }
            if (!valid_iso_date(fields[1]))
                sink.report(src, line_no, 2,
                            "date must be YYYY-MM-DD, got '" + fields[1] + "'");
            date = fields[1];
            stage = Stage::Header;
            continue;
        }

        if (trimmed[0] == '#') continue;   // comment

        std::vector<std::string> fields = split_csv(lines[li]);
        for (std::string& f : fields) f = trim(f);

        if (stage == Stage::Header) {
            if (fields.empty() || fields[0] != "id") {
                sink.report(src, line_no, 1,
                            "header row must begin with 'id', got '" + trimmed + "'");
                return std::nullopt;
            }
            header_ids.assign(fields.begin() + 1, fields.end());
            if (header_ids.empty()) {
                sink.report(src, line_no, -1, "header lists no ids");
                return std::nullopt;
            }
            if (roster) {
                if (header_ids.size() != roster->size()) {
                    sink.report(src, line_no, -1,
                                "header lists " + std::to_string(header_ids.size()) +
                                    " ids, roster has " + std::to_string(roster->size()));
                    if (sink.lenient()) return std::nullopt;
                }
                for (size_t j = 0; j < header_ids.size(); ++j)
                    if (header_ids[j] != roster->entry(j).id) {
                        sink.report(src, line_no, static_cast<long>(j) + 2,
                                    "header id '" + header_ids[j] +
                                        "' does not match roster id '" +
                                        roster->entry(j).id + "' at position " +
                                        std::to_string(j + 1));
                        if (sink.lenient()) return std::nullopt;
                    }
            } else {
                for (size_t j = 0; j < header_ids.size(); ++j) {
                    if (header_ids[j].empty()) {
                        sink.report(src, line_no, static_cast<long>(j) + 2, "empty header id");
                        return std::nullopt;
                    }
                    for (size_t k = 0; k < j; ++k)
                        if (header_ids[k] == header_ids[j]) {
                            sink.report(src, line_no, static_cast<long>(j) + 2,
                                        "duplicate header id '" + header_ids[j] + "'");
                            return std::nullopt;
                        }
                }
            }
            stage = Stage::Rows;
            continue;
        }

        rows.push_back({line_no, std::move(fields)});
    }

    if (stage == Stage::Date) {
        sink.report(src, -1, -1, "missing '#date,YYYY-MM-DD' row");
        return std::nullopt;
    }
    if (stage == Stage::Header) {
        sink.report(src, -1, -1, "missing id header row");
        return std::nullopt;
    }

    const size_t n = header_ids.size();
    if (rows.size() != n) {
        const long at = rows.size() > n ? rows[n].line_no : -1;
        sink.report(src, at, -1,
                    "expected " + std::to_string(n) + " data rows, got " +
                        std::to_string(rows.size()));
    }

    std::vector<std::vector<int>> matrix;
    matrix.reserve(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        const RowRecord& rec = rows[r];
        if (!sink.lenient() && rec.fields.size() != n + 1)
            sink.report(src, rec.line_no, -1,
                        "row has " + std::to_string(rec.fields.size() - 1) +
                            " cells, expected " + std::to_string(n));
        const std::string& row_id = rec.fields[0];
        const std::string expected_id =
            r < n ? header_ids[r] : std::string("<none>");
        if (row_id != expected_id)
            sink.report(src, rec.line_no, 1,
                        "row id '" + row_id + "' out of order: expected '" +
                            expected_id + "'");
        std::vector<int> cells;
        cells.reserve(rec.fields.size() - 1);
        for (size_t j = 1; j < rec.fields.size(); ++j) {
            const std::string& cell = rec.fields[j];
            if (cell == "0") cells.push_back(0);
            else if (cell == "1") cells.push_back(1);
            else if (sink.lenient()) {
                if (const auto v = parse_long(cell)) cells.push_back(static_cast<int>(*v));
                else {
                    sink.report(src, rec.line_no, static_cast<long>(j) + 1,
                                "cell must be 0 or 1, got '" + cell + "'");
                    cells.push_back(0);
                }
            } else {
                sink.report(src, rec.line_no, static_cast<long>(j) + 1,
                            "cell must be 0 or 1, got '" + cell + "'");
            }
        }
        matrix.push_back(std::move(cells));
    }

    std::optional<EngineRoster> effective;
    if (roster) effective = *roster;
    else {
        std::vector<RosterEntry> entries;
        entries.reserve(n);
        for (const std::string& id : header_ids)
            entries.push_back({id, id, std::nullopt, std::nullopt});
        effective = EngineRoster(std::move(entries));
    }

    NetworkSnapshot snapshot(date, std::move(*effective), std::move(matrix));
    const ValidationResult check = validate_snapshot(snapshot);
    for (const Violation& v : check.violations) {
        const long line =
            v.row >= 0 && static_cast<size_t>(v.row) < rows.size()
                ? rows[static_cast<size_t>(v.row)].line_no
                : -1;
        const long col = v.col >= 0 ? v.col + 2 : -1;
        sink.report(src, line, col, v.message);
    }
    return snapshot;
}

} // namespace detail

inline NetworkSnapshot parse_snapshot_csv(std::string_view text,
                                          std::string_view source = "<snapshot>",
                                          const EngineRoster* roster = nullptr) {
    auto snapshot = detail::parse_snapshot_impl(text, source, roster, nullptr);
    return *snapshot;
}

inline std::vector<FileIssue> inspect_snapshot_csv(std::string_view text,
                                                   std::string_view source,
                                                   const EngineRoster* roster = nullptr) {
    std::vector<FileIssue> issues;
    detail::parse_snapshot_impl(text, source, roster, &issues);
    return issues;
}

inline NetworkSnapshot load_snapshot(const std::string& path,
                                     const EngineRoster* roster = nullptr) {
    return parse_snapshot_csv(detail::read_file(path), path, roster);
}

inline std::string emit_snapshot_csv(const NetworkSnapshot& snapshot) {
    detail::require_valid(snapshot);
    std::string out = "#date," + snapshot.date() + "\n";
    out += "id";
    for (const RosterEntry& e : snapshot.roster().entries()) {
        out += ',';
        out += detail::csv_field(e.id);
    }
    out += '\n';
    const auto& m = snapshot.adjacency();
    for (size_t i = 0; i < m.size(); ++i) {
        out += detail::csv_field(snapshot.roster().entry(i).id);
        for (int cell : m[i]) {
            out += ',';
            out += cell ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Feature tables: header `id,setup_year,<feature names...>,reach_pct`;
// flags strictly 0/1; empty reach_pct is an absent optional.
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<FeatureTable> parse_features_impl(std::string_view text,
                                                       std::string_view source,
                                                       std::vector<FileIssue>* issues) {
    const IssueSink sink{issues};
    const std::string src(source);
    const std::vector<std::string> lines = split_lines(text);

    bool header_seen = false;
    std::vector<std::string> feature_names;
    std::vector<FeatureRow> rows;
    std::vector<std::pair<std::string, long>> first_line_of_id;

    for (size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string trimmed = trim(lines[li]);
        if (trimmed.empty()) continue;
        if (trimmed[0] == '#') continue;

        std::vector<std::string> fields = split_csv(lines[li]);
        for (std::string& f : fields) f = trim(f);

        if (!header_seen) {
            if (fields.size() < 4 || fields.front() != "id" || fields[1] != "setup_year" ||
                fields.back() != "reach_pct") {
                sink.report(src, line_no, -1,
                            "expected header 'id,setup_year,<features...>,reach_pct', got '" +
                                trimmed + "'");
                return std::nullopt;
            }
            feature_names.assign(fields.begin() + 2, fields.end() - 1);
            header_seen = true;
            continue;
        }

        if (fields.size() != feature_names.size() + 3) {
            sink.report(src, line_no, -1,
                        "expected " + std::to_string(feature_names.size() + 3) +
                            " fields, got " + std::to_string(fields.size()));
            continue;
        }

        FeatureRow row;
        row.id = fields[0];
        bool row_ok = true;

        if (row.id.empty()) {
            sink.report(src, line_no, 1, "empty id");
            row_ok = false;
        } else {
            for (const auto& [seen_id, seen_line] : first_line_of_id)
                if (seen_id == row.id) {
                    sink.report(src, line_no, 1,
                                "duplicate id '" + row.id + "' (first seen at line " +
                                    std::to_string(seen_line) + ")");
                    row_ok = false;
                    break;
                }
        }

        const auto year = parse_long(fields[1]);
        if (!year || *year < 1990 || *year > 2005) {
            sink.report(src, line_no, 2,
                        "setup_year must be an integer in [1990, 2005], got '" +
                            fields[1] + "'");
            row_ok = false;
        } else {
            row.setup_year = static_cast<int>(*year);
        }

        for (size_t f = 0; f < feature_names.size(); ++f) {
            const std::string& cell = fields[2 + f];
            if (cell == "0") row.flags.push_back(0);
            else if (cell == "1") row.flags.push_back(1);
            else {
                sink.report(src, line_no, static_cast<long>(f) + 3,
                            "flag '" + feature_names[f] + "' must be 0 or 1, got '" +
                                cell + "'");
                row.flags.push_back(0);
                row_ok = false;
            }
        }

        const std::string& reach_field = fields.back();
        if (!reach_field.empty()) {
            const auto reach = parse_double(reach_field);
            if (!reach || !(*reach >= 0.0 && *reach <= 100.0)) {
                sink.report(src, line_no, static_cast<long>(fields.size()),
                            "reach_pct must be a number in [0, 100], got '" +
                                reach_field + "'");
                row_ok = false;
            } else {
                row.reach_pct = *reach;
            }
        }

        if (row_ok) {
            first_line_of_id.emplace_back(row.id, line_no);
            rows.push_back(std::move(row));
        }
    }

    if (!header_seen) {
        sink.report(src, -1, -1, "missing header 'id,setup_year,<features...>,reach_pct'");
        return std::nullopt;
    }
    if (rows.empty()) {
        sink.report(src, -1, -1, "no feature rows");
        return std::nullopt;
    }
    return FeatureTable(std::move(feature_names), std::move(rows));
}

} // namespace detail

inline FeatureTable parse_features_csv(std::string_view text,
                                       std::string_view source = "<features>") {
    auto table = detail::parse_features_impl(text, source, nullptr);
    return *table;
}

inline std::vector<FileIssue> inspect_features_csv(std::string_view text,
                                                   std::string_view source) {
    std::vector<FileIssue> issues;
    detail::parse_features_impl(text, source, &issues);
    return issues;
}

inline FeatureTable load_features(const std::string& path) {
    return parse_features_csv(detail::read_file(path), path);
}

// ---------------------------------------------------------------------------
// Report emission. Table mode prints two-decimal values (the precision of
// the published tables these mirror); CSV and JSON carry full precision.
// All emitters are pure functions of their inputs, so output bytes are
// identical across runs.
// ---------------------------------------------------------------------------

using detail::format_double;
using detail::format_fixed;

inline std::string emit_centrality(const CentralityReport& report,
                                   const std::vector<RankedEntry>& top,
                                   OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: {
            std::string out = "# centrality, metric=" + metric_name(report.metric) +
                              ", mean=" + format_double(report.mean) +
                              ", stdev=" + format_double(report.stdev) + "\n";
            out += "# note: " + report.convention_notes + "\n";
            out += "id,score\n";
            for (size_t i = 0; i < report.ids.size(); ++i)
                out += detail::csv_field(report.ids[i]) + "," +
                       format_double(report.scores[i]) + "\n";
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["metric"] = metric_name(report.metric);
            j["mean"] = report.mean;
            j["stdev"] = report.stdev;
            j["convention_notes"] = report.convention_notes;
            j["scores"] = nlohmann::ordered_json::array();
            for (size_t i = 0; i < report.ids.size(); ++i)
                j["scores"].push_back({{"id", report.ids[i]}, {"score", report.scores[i]}});
            j["top"] = nlohmann::ordered_json::array();
            for (size_t i = 0; i < top.size(); ++i)
                j["top"].push_back({{"rank", i + 1},
                                    {"id", top[i].id},
                                    {"score", top[i].score}});
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            std::string out = "centrality: " + metric_name(report.metric) + "\n";
            std::vector<std::vector<std::string>> rows{{"rank", "id", "score"}};
            for (size_t i = 0; i < top.size(); ++i)
                rows.push_back({std::to_string(i + 1), top[i].id,
                                format_fixed(top[i].score)});
            out += detail::render_table(rows, {true, false, true});
            out += "mean: " + format_fixed(report.mean) + "\n";
            out += "stdev: " + format_fixed(report.stdev) + "\n";
            out += "note: " + report.convention_notes + "\n";
            return out;
        }
    }
    throw Error("emit_centrality: unknown format");
}

/// Concentration measures over one share table, with the network-adjusted
/// index attached when a snapshot was supplied.
struct ConcentrationReport {
    std::vector<std::string> ids;   ///< roster order
    std::vector<double> shares;     ///< fractions, parallel to ids
    size_t cr_top_k = 4;
    double cr_value = 0.0;
    double hhi_value = 0.0;
    Classification hhi_class = Classification::Unconcentrated;
    std::optional<double> overlap;
    std::optional<double> nahhi_value;
    std::optional<Classification> nahhi_class;
};

inline ConcentrationReport make_concentration_report(
    const ShareTable& shares, size_t cr_top_k, const EngineRoster* roster,
    const NetworkSnapshot* snapshot, double overlap) {
    ConcentrationReport report;
    report.ids = shares.ids();
    report.shares = shares.shares();
    report.cr_top_k = cr_top_k;
    report.cr_value = cr_k(shares, cr_top_k);
    report.hhi_value = hhi(shares);
    report.hhi_class = classify_concentration(report.hhi_value);
    if (snapshot) {
        if (!roster)
            throw Error("make_concentration_report: snapshot requires the roster");
        report.overlap = overlap;
        report.nahhi_value = nahhi(*roster, *snapshot, overlap);
        report.nahhi_class = classify_concentration(*report.nahhi_value);
    }
    return report;
}

inline std::string emit_concentration(const ConcentrationReport& report,
                                      OutputFormat format) {
    const std::string cr_label = "cr" + std::to_string(report.cr_top_k);
    switch (format) {
        case OutputFormat::Csv: {
            std::string out = "# concentration, firms=" + std::to_string(report.ids.size()) +
                              ", " + cr_label + "=" + format_double(report.cr_value) +
                              ", hhi=" + format_double(report.hhi_value) +
                              ", hhi_class=" + classification_name(report.hhi_class);
            if (report.nahhi_value)
                out += ", overlap=" + format_double(*report.overlap) +
                       ", nahhi=" + format_double(*report.nahhi_value) +
                       ", nahhi_class=" + classification_name(*report.nahhi_class);
            out += "\nid,share\n";
            for (size_t i = 0; i < report.ids.size(); ++i)
                out += detail::csv_field(report.ids[i]) + "," +
                       format_double(report.shares[i]) + "\n";
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["firms"] = report.ids.size();
            j[cr_label] = report.cr_value;
            j["hhi"] = report.hhi_value;
            j["hhi_classification"] = classification_name(report.hhi_class);
            if (report.nahhi_value) {
                j["nahhi"] = {{"overlap", *report.overlap},
                              {"value", *report.nahhi_value},
                              {"classification", classification_name(*report.nahhi_class)}};
            }
            j["shares"] = nlohmann::ordered_json::array();
            for (size_t i = 0; i < report.ids.size(); ++i)
                j["shares"].push_back({{"id", report.ids[i]}, {"share", report.shares[i]}});
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            const size_t n = report.ids.size();
            std::string out = "concentration: " + std::to_string(n) + " firms\n";
            std::vector<size_t> order(n);
            for (size_t i = 0; i < n; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                if (report.shares[a] != report.shares[b])
                    return report.shares[a] > report.shares[b];
                return a < b;
            });
            std::vector<std::vector<std::string>> rows{{"rank", "id", "share_pct"}};
            const size_t shown = std::min(report.cr_top_k, n);
            for (size_t i = 0; i < shown; ++i)
                rows.push_back({std::to_string(i + 1), report.ids[order[i]],
                                format_fixed(100.0 * report.shares[order[i]])});
            out += detail::render_table(rows, {true, false, true});
            out += cr_label + ": " + format_fixed(report.cr_value) + "\n";
            out += "hhi: " + format_fixed(report.hhi_value) + "\n";
            out += "hhi classification: " + classification_name(report.hhi_class) + "\n";
            if (report.nahhi_value) {
                out += "nahhi (overlap " + format_fixed(*report.overlap) + "): " +
                       format_fixed(*report.nahhi_value) + "\n";
                out += "nahhi classification: " +
                       classification_name(*report.nahhi_class) + "\n";
            }
            return out;
        }
    }
    throw Error("emit_concentration: unknown format");
}

inline std::string emit_merger_screen(const MergerScreenMatrix& matrix,
                                      OutputFormat format) {
    const size_t n = matrix.ids.size();
    switch (format) {
        case OutputFormat::Csv: {
            // Upper triangle with empty cells on and below the diagonal,
            // mirroring the layout of published pairwise-delta tables.
            std::string out = "# merger screen, threshold=" +
                              format_double(matrix.threshold) + ", flagged_pairs=" +
                              std::to_string(matrix.flagged.size()) + "\n";
            out += "id";
            for (const std::string& id : matrix.ids) out += "," + detail::csv_field(id);
            out += '\n';
            for (size_t i = 0; i < n; ++i) {
                out += detail::csv_field(matrix.ids[i]);
                for (size_t j = 0; j < n; ++j) {
                    out += ',';
                    if (j > i) out += format_double(matrix.deltas[i][j]);
                }
                out += '\n';
            }
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["threshold"] = matrix.threshold;
            j["flagged_pairs"] = matrix.flagged.size();
            j["pairs"] = nlohmann::ordered_json::array();
            for (size_t i = 0; i < n; ++i)
                for (size_t k = i + 1; k < n; ++k)
                    j["pairs"].push_back({{"firm_a", matrix.ids[i]},
                                          {"firm_b", matrix.ids[k]},
                                          {"delta", matrix.deltas[i][k]},
                                          {"flagged", matrix.is_flagged(i, k)}});
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            std::string out = "merger screen: threshold " +
                              format_fixed(matrix.threshold) + ", flagged pairs " +
                              std::to_string(matrix.flagged.size()) + "\n";
            std::vector<std::pair<size_t, size_t>> pairs = matrix.flagged;
            std::stable_sort(pairs.begin(), pairs.end(),
                             [&](const auto& a, const auto& b) {
                                 const double da = matrix.deltas[a.first][a.second];
                                 const double db = matrix.deltas[b.first][b.second];
                                 if (da != db) return da > db;
                                 return a < b;
                             });
            std::vector<std::vector<std::string>> rows{{"firm_a", "firm_b", "delta"}};
            for (const auto& [i, k] : pairs)
                rows.push_back({matrix.ids[i], matrix.ids[k],
                                format_fixed(matrix.deltas[i][k])});
            out += detail::render_table(rows, {false, false, true});
            return out;
        }
    }
    throw Error("emit_merger_screen: unknown format");
}

/// NAHHI evaluated along an overlap grid, each value classified against
/// the concentration bands.
struct SensitivityReport {
    struct Row {
        double overlap = 0.0;
        double nahhi_value = 0.0;
        Classification cls = Classification::Unconcentrated;
    };
    std::vector<Row> rows;
};

inline SensitivityReport make_sensitivity_report(
    const std::vector<std::pair<double, double>>& grid_values) {
    SensitivityReport report;
    report.rows.reserve(grid_values.size());
    for (const auto& [overlap, value] : grid_values)
        report.rows.push_back({overlap, value, classify_concentration(value)});
    return report;
}

inline std::string emit_sensitivity(const SensitivityReport& report,
                                    OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: {
            std::string out = "overlap,nahhi,classification\n";
            for (const auto& row : report.rows)
                out += format_double(row.overlap) + "," + format_double(row.nahhi_value) +
                       "," + classification_name(row.cls) + "\n";
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& row : report.rows)
                j.push_back({{"overlap", row.overlap},
                             {"nahhi", row.nahhi_value},
                             {"classification", classification_name(row.cls)}});
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            std::string out = "nahhi overlap sensitivity\n";
            std::vector<std::vector<std::string>> rows{
                {"overlap", "nahhi", "classification"}};
            for (const auto& row : report.rows)
                rows.push_back({format_fixed(row.overlap), format_fixed(row.nahhi_value),
                                classification_name(row.cls)});
            out += detail::render_table(rows, {true, true, false});
            return out;
        }
    }
    throw Error("emit_sensitivity: unknown format");
}

/// Per-snapshot metric summaries plus a trend verdict for each metric.
struct TrendReport {
    SeriesReport series;
    struct Verdict {
        SeriesMetric metric = SeriesMetric::MeanIndegree;
        TrendVerdict verdict = TrendVerdict::Flat;
    };
    std::vector<Verdict> verdicts;   ///< one per SeriesMetric, fixed order
};

inline TrendReport make_trend_report(const SnapshotSeries& series) {
    TrendReport report;
    report.series = summarize_series(series);
    if (series.size() >= 2) {
        for (SeriesMetric m :
             {SeriesMetric::MeanIndegree, SeriesMetric::MeanOutdegree,
              SeriesMetric::MeanBetweenness, SeriesMetric::MeanInformation,
              SeriesMetric::Density})
            report.verdicts.push_back({m, structuration_trend(report.series, m)});
    }
    return report;
}

inline std::string emit_trend(const TrendReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: {
            std::string out;
            if (!report.verdicts.empty()) {
                out += "# trends:";
                for (size_t i = 0; i < report.verdicts.size(); ++i)
                    out += std::string(i ? "," : "") + " " +
                           series_metric_name(report.verdicts[i].metric) + "=" +
                           trend_verdict_name(report.verdicts[i].verdict);
                out += '\n';
            }
            out += "date,mean_indegree,sd_indegree,mean_outdegree,sd_outdegree,"
                   "mean_betweenness,sd_betweenness,mean_information,sd_information,"
                   "density,density_sd\n";
            for (const SeriesRow& r : report.series.rows)
                out += r.date + "," + format_double(r.mean_indegree) + "," +
                       format_double(r.sd_indegree) + "," +
                       format_double(r.mean_outdegree) + "," +
                       format_double(r.sd_outdegree) + "," +
                       format_double(r.mean_betweenness) + "," +
                       format_double(r.sd_betweenness) + "," +
                       format_double(r.mean_information) + "," +
                       format_double(r.sd_information) + "," +
                       format_double(r.density) + "," +
                       format_double(r.density_sd) + "\n";
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["rows"] = nlohmann::ordered_json::array();
            for (const SeriesRow& r : report.series.rows)
                j["rows"].push_back({{"date", r.date},
                                     {"mean_indegree", r.mean_indegree},
                                     {"sd_indegree", r.sd_indegree},
                                     {"mean_outdegree", r.mean_outdegree},
                                     {"sd_outdegree", r.sd_outdegree},
                                     {"mean_betweenness", r.mean_betweenness},
                                     {"sd_betweenness", r.sd_betweenness},
                                     {"mean_information", r.mean_information},
                                     {"sd_information", r.sd_information},
                                     {"density", r.density},
                                     {"density_sd", r.density_sd}});
            j["trends"] = nlohmann::ordered_json::object();
            for (const auto& v : report.verdicts)
                j["trends"][series_metric_name(v.metric)] = trend_verdict_name(v.verdict);
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            std::string out = "network series: " +
                              std::to_string(report.series.rows.size()) +
                              (report.series.rows.size() == 1 ? " snapshot\n"
                                                              : " snapshots\n");
            const auto cell = [](double mean, double sd) {
                return format_fixed(mean) + " (" + format_fixed(sd) + ")";
            };
            std::vector<std::vector<std::string>> rows{
                {"date", "indegree", "outdegree", "betweenness", "information",
                 "density"}};
            for (const SeriesRow& r : report.series.rows)
                rows.push_back({r.date, cell(r.mean_indegree, r.sd_indegree),
                                cell(r.mean_outdegree, r.sd_outdegree),
                                cell(r.mean_betweenness, r.sd_betweenness),
                                cell(r.mean_information, r.sd_information),
                                cell(r.density, r.density_sd)});
            out += detail::render_table(rows,
                                        {false, false, false, false, false, false});
            for (const auto& v : report.verdicts)
                out += "trend " + series_metric_name(v.metric) + ": " +
                       trend_verdict_name(v.verdict) + "\n";
            return out;
        }
    }
    throw Error("emit_trend: unknown format");
}

/// Logistic fits of each binary feature on launch year, plus (when every
/// row carries reach) the least-squares fit of reach on launch year.
struct RegressionReport {
    size_t observations = 0;
    struct LogisticRow {
        std::string feature;
        LogisticFit fit;
    };
    std::vector<LogisticRow> logistic;   ///< feature-column order
    std::optional<OlsFit> reach_on_year;
};

inline RegressionReport make_regression_report(const FeatureTable& table) {
    RegressionReport report;
    report.observations = table.size();
    const std::vector<double> years = table.setup_years();
    for (const std::string& feature : table.feature_names())
        report.logistic.push_back(
            {feature, logistic_fit(years, table.feature_column(feature))});
    bool all_reach = true;
    for (const FeatureRow& r : table.rows())
        if (!r.reach_pct) { all_reach = false; break; }
    if (all_reach) report.reach_on_year = ols_fit(years, table.reach_values());
    return report;
}

inline std::string emit_regression(const RegressionReport& report,
                                   OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: {
            std::string out = "# logistic fits: feature flag on setup_year, observations=" +
                              std::to_string(report.observations) + "\n";
            out += "feature,slope,intercept,odds_ratio,lr_statistic,p_value,"
                   "r2_nagelkerke,converged,iterations\n";
            for (const auto& row : report.logistic)
                out += detail::csv_field(row.feature) + "," +
                       format_double(row.fit.slope) + "," +
                       format_double(row.fit.intercept) + "," +
                       format_double(row.fit.odds_ratio) + "," +
                       format_double(row.fit.lr_statistic) + "," +
                       format_double(row.fit.p_value) + "," +
                       format_double(row.fit.r2_nagelkerke) + "," +
                       (row.fit.converged ? "1" : "0") + "," +
                       std::to_string(row.fit.iterations) + "\n";
            if (report.reach_on_year) {
                const OlsFit& f = *report.reach_on_year;
                out += "# ols fit: reach_pct on setup_year\n";
                out += "slope,intercept,slope_se,t_stat,p_value,r2,n\n";
                out += format_double(f.slope) + "," + format_double(f.intercept) + "," +
                       format_double(f.slope_se) + "," + format_double(f.t_stat) + "," +
                       format_double(f.slope_p_value) + "," + format_double(f.r2) + "," +
                       std::to_string(f.n) + "\n";
            }
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["observations"] = report.observations;
            j["logistic"] = nlohmann::ordered_json::array();
            for (const auto& row : report.logistic)
                j["logistic"].push_back({{"feature", row.feature},
                                         {"slope", row.fit.slope},
                                         {"intercept", row.fit.intercept},
                                         {"odds_ratio", row.fit.odds_ratio},
                                         {"lr_statistic", row.fit.lr_statistic},
                                         {"p_value", row.fit.p_value},
                                         {"r2_nagelkerke", row.fit.r2_nagelkerke},
                                         {"converged", row.fit.converged},
                                         {"iterations", row.fit.iterations}});
            if (report.reach_on_year) {
                const OlsFit& f = *report.reach_on_year;
                j["ols"] = {{"outcome", "reach_pct"},
                            {"predictor", "setup_year"},
                            {"slope", f.slope},
                            {"intercept", f.intercept},
                            {"slope_se", f.slope_se},
                            {"t_stat", f.t_stat},
                            {"p_value", f.slope_p_value},
                            {"r2", f.r2},
                            {"n", f.n}};
            }
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            std::string out = "logistic fits: feature flag on setup_year (" +
                              std::to_string(report.observations) + " observations)\n";
            std::vector<std::vector<std::string>> rows{
                {"feature", "slope", "odds_ratio", "p_value", "r2_nagelkerke",
                 "iterations"}};
            for (const auto& row : report.logistic)
                rows.push_back({row.feature, format_fixed(row.fit.slope),
                                format_fixed(row.fit.odds_ratio),
                                format_fixed(row.fit.p_value),
                                format_fixed(row.fit.r2_nagelkerke),
                                std::to_string(row.fit.iterations)});
            out += detail::render_table(rows, {false, true, true, true, true, true});
            if (report.reach_on_year) {
                const OlsFit& f = *report.reach_on_year;
                out += "ols fit: reach_pct on setup_year (n=" + std::to_string(f.n) +
                       ")\n";
                out += "slope: " + format_fixed(f.slope) + "\n";
                out += "intercept: " + format_fixed(f.intercept) + "\n";
                out += "t_stat: " + format_fixed(f.t_stat) + "\n";
                out += "p_value: " + format_fixed(f.slope_p_value) + "\n";
                out += "r2: " + format_fixed(f.r2) + "\n";
            }
            return out;
        }
    }
    throw Error("emit_regression: unknown format");
}

/// Results of checking input files without running any analysis.
struct ValidationReport {
    struct File {
        std::string path;
        std::string kind;   ///< "roster", "snapshot", or "features"
        std::vector<FileIssue> issues;
    };
    std::vector<File> files;

    size_t issue_count() const {
        size_t total = 0;
        for (const File& f : files) total += f.issues.size();
        return total;
    }
    bool ok() const { return issue_count() == 0; }
};

inline std::string emit_validation(const ValidationReport& report,
                                   OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: {
            std::string out = "# validate, files=" + std::to_string(report.files.size()) +
                              ", issues=" + std::to_string(report.issue_count()) + "\n";
            out += "file,kind,line,col,message\n";
            for (const auto& f : report.files)
                for (const FileIssue& issue : f.issues)
                    out += detail::csv_field(f.path) + "," + f.kind + "," +
                           (issue.line > 0 ? std::to_string(issue.line) : "") + "," +
                           (issue.col > 0 ? std::to_string(issue.col) : "") + "," +
                           detail::csv_field(issue.message) + "\n";
            return out;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["ok"] = report.ok();
            j["issue_count"] = report.issue_count();
            j["files"] = nlohmann::ordered_json::array();
            for (const auto& f : report.files) {
                nlohmann::ordered_json issues = nlohmann::ordered_json::array();
                for (const FileIssue& issue : f.issues)
                    issues.push_back({{"line", issue.line},
                                      {"col", issue.col},
                                      {"message", issue.message}});
                j["files"].push_back(
                    {{"path", f.path}, {"kind", f.kind}, {"issues", issues}});
            }
            return j.dump(2) + "\n";
        }
        case OutputFormat::Table: {
            std::string out = "validate: " + std::to_string(report.files.size()) +
                              (report.files.size() == 1 ? " file, " : " files, ") +
                              std::to_string(report.issue_count()) +
                              (report.issue_count() == 1 ? " issue\n" : " issues\n");
            for (const auto& f : report.files) {
                if (f.issues.empty()) {
                    out += "ok " + f.path + " (" + f.kind + ")\n";
                } else {
                    out += std::to_string(f.issues.size()) +
                           (f.issues.size() == 1 ? " issue " : " issues ") + f.path +
                           " (" + f.kind + ")\n";
                    for (const FileIssue& issue : f.issues)
                        out += "  " + issue.format() + "\n";
                }
            }
            return out;
        }
    }
    throw Error("emit_validation: unknown format");
}

} // namespace netmark
