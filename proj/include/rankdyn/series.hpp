#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rankdyn/error.hpp"

namespace rankdyn {

// Player/team identifier. Opaque: comparison is exact byte equality.
using ElementId = std::string;

// One ranking table at one point in time. Rank k is elements[k-1]; ranks are
// contiguous 1..N with no duplicate ranks or elements. Scores, when present,
// cover every rank and are non-increasing with rank.
struct Snapshot {
    std::string time_label;
    std::vector<ElementId> elements;
    std::vector<double> scores; // empty when the source has no score column

    std::size_t depth() const noexcept { return elements.size(); }
    bool has_scores() const noexcept { return !scores.empty(); }

    bool operator==(const Snapshot&) const = default;
};

// Time-ordered sequence of snapshots; the X(k,t) accessor everything else is
// built on. Immutable once constructed, safe to share across threads.
struct RankingSeries {
    std::vector<Snapshot> snapshots;

    std::size_t size() const noexcept { return snapshots.size(); }

    // Minimum table depth across snapshots; uniform depth after truncation.
    std::size_t depth() const noexcept;

    bool operator==(const RankingSeries&) const = default;
};

// Throws when a Snapshot invariant does not hold. `line_of(rank)` maps a rank
// back to a source line number for error messages (return 0 when unknown).
void validate_snapshot(const Snapshot& snap);

// Keep the first `n` ranks of every snapshot. Error: InsufficientDepth,
// naming the offending time label.
RankingSeries truncate_top_n(const RankingSeries& series, std::size_t n);

// The element with rank `k` (1-based) at snapshot index `t` (0-based).
// Error: OutOfRange.
const ElementId& element_at(const RankingSeries& series, std::size_t k, std::size_t t);

} // namespace rankdyn
