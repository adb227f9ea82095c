#include "rankdyn/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rankdyn {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

bool parse_full_int(std::string_view text, long long& value) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_full_double(std::string_view text, double& value) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

struct Row {
    long long rank;
    std::string element;
    double score;
    std::size_t line;
};

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

RankingSeries parse_ranking_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line))
        throw Error(ErrorKind::MissingColumn, "empty input, expected header 'time,rank,element[,score]'");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_fields(line);
    static const char* required[] = {"time", "rank", "element"};
    for (std::size_t i = 0; i < 3; ++i) {
        if (header.size() <= i || header[i] != required[i])
            throw Error(ErrorKind::MissingColumn,
                        std::string("header column '") + required[i] + "' not found (line 1)");
    }
    bool with_scores = false;
    if (header.size() == 4) {
        if (header[3] != "score")
            throw Error(ErrorKind::MissingColumn, "header column 'score' not found (line 1)");
        with_scores = true;
    } else if (header.size() != 3) {
        throw Error(ErrorKind::MalformedRow, "unexpected header field count (line 1)");
    }
    const std::size_t n_fields = with_scores ? 4 : 3;

    // Rows grouped by exact time label, in first-appearance order for now.
    std::vector<std::string> labels;
    std::map<std::string, std::vector<Row>, std::less<>> groups;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (fields.size() != n_fields)
            throw Error(ErrorKind::MalformedRow,
                        "expected " + std::to_string(n_fields) + " fields, got " +
                            std::to_string(fields.size()) + " (line " + std::to_string(line_no) + ")");

        Row row;
        row.line = line_no;
        if (fields[0].empty())
            throw Error(ErrorKind::MalformedRow, "empty time label (line " + std::to_string(line_no) + ")");
        if (!parse_full_int(fields[1], row.rank) || row.rank < 1)
            throw Error(ErrorKind::MalformedRow,
                        "rank '" + std::string(fields[1]) + "' is not a positive integer (line " +
                            std::to_string(line_no) + ")");
        if (fields[2].empty())
            throw Error(ErrorKind::MalformedRow, "empty element id (line " + std::to_string(line_no) + ")");
        row.element = std::string(fields[2]);
        row.score = 0.0;
        if (with_scores) {
            if (!parse_full_double(fields[3], row.score) || !(row.score >= 0.0))
                throw Error(ErrorKind::MalformedRow,
                            "score '" + std::string(fields[3]) + "' is not a non-negative number (line " +
                                std::to_string(line_no) + ")");
        }

        auto [it, inserted] = groups.try_emplace(std::string(fields[0]));
        if (inserted) labels.push_back(std::string(fields[0]));
        it->second.push_back(std::move(row));
    }

    if (labels.empty())
        throw Error(ErrorKind::InvalidArgument, "no data rows");

    // Integer labels order numerically (label text breaks exact-value ties so
    // the order stays total); otherwise lexicographic, which is correct for
    // ISO-8601 dates.
    bool all_int = true;
    std::vector<long long> values(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!parse_full_int(labels[i], values[i])) {
            all_int = false;
            break;
        }
    }
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (all_int) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (values[a] != values[b]) return values[a] < values[b];
            return labels[a] < labels[b];
        });
    } else {
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    }

    RankingSeries series;
    series.snapshots.reserve(labels.size());
    for (std::size_t idx : order) {
        const std::string& label = labels[idx];
        auto& rows = groups.find(label)->second;
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.rank < b.rank; });
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].rank == rows[i - 1].rank)
                throw Error(ErrorKind::DuplicateRank,
                            "rank " + std::to_string(rows[i].rank) + " repeated at time '" + label +
                                "' (line " + std::to_string(rows[i].line) + ")");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].rank != static_cast<long long>(i + 1))
                throw Error(ErrorKind::NonContiguousRanks,
                            "ranks at time '" + label + "' are not contiguous 1.." +
                                std::to_string(rows.size()) + " (missing rank " +
                                std::to_string(i + 1) + ")");
        }

        Snapshot snap;
        snap.time_label = label;
        snap.elements.reserve(rows.size());
        if (with_scores) snap.scores.reserve(rows.size());
        for (auto& row : rows) {
            snap.elements.push_back(std::move(row.element));
            if (with_scores) snap.scores.push_back(row.score);
        }
        validate_snapshot(snap);
        series.snapshots.push_back(std::move(snap));
    }
    return series;
}

void write_ranking_csv(const RankingSeries& series, std::ostream& out) {
    bool with_scores = !series.snapshots.empty() && series.snapshots.front().has_scores();
    out << (with_scores ? "time,rank,element,score\n" : "time,rank,element\n");
    for (const auto& snap : series.snapshots) {
        for (std::size_t i = 0; i < snap.elements.size(); ++i) {
            out << snap.time_label << ',' << (i + 1) << ',' << snap.elements[i];
            if (with_scores) out << ',' << format_double(snap.scores[i]);
            out << '\n';
        }
    }
}

} // namespace rankdyn
