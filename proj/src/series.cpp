#include "rankdyn/series.hpp"

#include <algorithm>
#include <unordered_set>

namespace rankdyn {

std::size_t RankingSeries::depth() const noexcept {
    std::size_t n = 0;
    bool first = true;
    for (const auto& snap : snapshots) {
        if (first || snap.depth() < n) n = snap.depth();
        first = false;
    }
    return n;
}

void validate_snapshot(const Snapshot& snap) {
    if (snap.elements.empty())
        throw Error(ErrorKind::InvalidArgument,
                    "snapshot '" + snap.time_label + "' has no entries");
    std::unordered_set<std::string_view> seen;
    seen.reserve(snap.elements.size());
    for (const auto& e : snap.elements) {
        if (e.empty())
            throw Error(ErrorKind::MalformedRow,
                        "empty element id at time '" + snap.time_label + "'");
        if (!seen.insert(e).second)
            throw Error(ErrorKind::DuplicateElement,
                        "element '" + e + "' appears twice at time '" + snap.time_label + "'");
    }
    if (snap.has_scores()) {
        if (snap.scores.size() != snap.elements.size())
            throw Error(ErrorKind::MalformedRow,
                        "score count does not match entry count at time '" + snap.time_label + "'");
        for (std::size_t i = 0; i < snap.scores.size(); ++i) {
            if (!(snap.scores[i] >= 0.0))
                throw Error(ErrorKind::MalformedRow,
                            "negative score at time '" + snap.time_label + "'");
            if (i > 0 && snap.scores[i] > snap.scores[i - 1])
                throw Error(ErrorKind::ScoreOrder,
                            "scores increase between rank " + std::to_string(i) + " and " +
                                std::to_string(i + 1) + " at time '" + snap.time_label + "'");
        }
    }
}

RankingSeries truncate_top_n(const RankingSeries& series, std::size_t n) {
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "truncation depth must be positive");
    for (const auto& snap : series.snapshots) {
        if (snap.depth() < n)
            throw Error(ErrorKind::InsufficientDepth,
                        "snapshot '" + snap.time_label + "' has " +
                            std::to_string(snap.depth()) + " entries, need " + std::to_string(n));
    }
    RankingSeries out;
    out.snapshots.reserve(series.snapshots.size());
    for (const auto& snap : series.snapshots) {
        Snapshot t;
        t.time_label = snap.time_label;
        t.elements.assign(snap.elements.begin(), snap.elements.begin() + n);
        if (snap.has_scores()) t.scores.assign(snap.scores.begin(), snap.scores.begin() + n);
        out.snapshots.push_back(std::move(t));
    }
    return out;
}

const ElementId& element_at(const RankingSeries& series, std::size_t k, std::size_t t) {
    if (t >= series.snapshots.size())
        throw Error(ErrorKind::OutOfRange,
                    "snapshot index " + std::to_string(t) + " out of range (T=" +
                        std::to_string(series.snapshots.size()) + ")");
    const Snapshot& snap = series.snapshots[t];
    if (k < 1 || k > snap.depth())
        throw Error(ErrorKind::OutOfRange,
                    "rank " + std::to_string(k) + " out of range at time '" + snap.time_label +
                        "' (depth " + std::to_string(snap.depth()) + ")");
    return snap.elements[k - 1];
}

} // namespace rankdyn
