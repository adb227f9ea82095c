#pragma once

#include <iosfwd>

#include "rankdyn/series.hpp"

namespace rankdyn {

// Reads the `time,rank,element,score` table (score column optional). Rows may
// arrive in any order; the result is grouped by time and sorted by time then
// rank. Integer time labels sort numerically, anything else (e.g. ISO-8601
// dates) lexicographically. Errors: MissingColumn, DuplicateRank,
// NonContiguousRanks, MalformedRow (with line number).
RankingSeries parse_ranking_csv(std::istream& in);

// Inverse of parse_ranking_csv: `\n` line endings, scores in shortest
// round-trip decimal form. parse(write(s)) == s.
void write_ranking_csv(const RankingSeries& series, std::ostream& out);

} // namespace rankdyn
