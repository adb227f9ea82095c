#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "rankdyn/dynamics.hpp"

using namespace rankdyn;

namespace {

RankingSeries series_from(const std::vector<std::vector<ElementId>>& tables) {
    RankingSeries s;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        Snapshot snap;
        snap.time_label = std::to_string(t);
        snap.elements = tables[t];
        s.snapshots.push_back(std::move(snap));
    }
    return s;
}

// Six weekly top-8 tables in the style of the football-club excerpt: nine
// clubs in total, three distinct leaders, one club pinned at rank 6.
RankingSeries football_top8_example() {
    return series_from({
        {"A", "B", "C", "D", "E", "F", "G", "H"},
        {"B", "A", "C", "D", "E", "F", "H", "I"},
        {"A", "C", "B", "D", "E", "F", "I", "G"},
        {"C", "B", "A", "E", "D", "F", "G", "H"},
        {"B", "A", "C", "D", "E", "F", "H", "I"},
        {"A", "B", "C", "E", "D", "F", "I", "G"},
    });
}

RankingSeries random_small_series(std::mt19937_64& rng) {
    const std::size_t depth = 1 + rng() % 10; // N <= 10
    const std::size_t t_count = 2 + rng() % 11; // T in 2..12
    const std::size_t pool = depth + rng() % 6;
    std::vector<std::vector<ElementId>> tables(t_count);
    for (auto& table : tables) {
        std::vector<std::size_t> ids(pool);
        for (std::size_t i = 0; i < pool; ++i) ids[i] = i;
        for (std::size_t i = pool - 1; i > 0; --i) std::swap(ids[i], ids[rng() % (i + 1)]);
        for (std::size_t i = 0; i < depth; ++i) table.push_back("p" + std::to_string(ids[i]));
    }
    return series_from(tables);
}

// Brute-force re-evaluation used as the oracle: sets and direct formula
// transcription, no shared code with the implementation path.
struct BruteForce {
    double d, p, e, c;
};

BruteForce brute_force_at(const RankingSeries& series, std::size_t k) {
    const std::size_t t_count = series.size();
    std::set<ElementId> occupants;
    std::map<ElementId, int> freq;
    for (const auto& snap : series.snapshots) {
        occupants.insert(snap.elements[k - 1]);
        freq[snap.elements[k - 1]] += 1;
    }
    BruteForce out{};
    out.d = double(occupants.size()) / double(t_count);
    std::size_t changes = 0;
    for (std::size_t t = 0; t + 1 < t_count; ++t)
        if (series.snapshots[t].elements[k - 1] != series.snapshots[t + 1].elements[k - 1])
            ++changes;
    out.p = double(changes) / double(t_count - 1);
    if (occupants.size() == 1) {
        out.e = 0.0;
    } else {
        double h = 0.0;
        for (const auto& [id, count] : freq) {
            double prob = double(count) / double(t_count);
            h -= prob * std::log(prob);
        }
        out.e = h / std::log(double(occupants.size()));
    }
    out.c = 4.0 * out.e * (1.0 - out.e);
    return out;
}

double brute_force_closure(const RankingSeries& series, std::size_t n) {
    std::set<ElementId> all;
    for (const auto& snap : series.snapshots)
        for (std::size_t i = 0; i < n; ++i) all.insert(snap.elements[i]);
    return double(n) / double(all.size());
}

} // namespace

TEST_CASE("diversity: football top-8 worked example") {
    RankingSeries s = football_top8_example();
    CHECK(s.size() == 6);
    CHECK(rank_diversity(s, 1) == 0.5);        // three leaders over six weeks
    CHECK(rank_diversity(s, 6) == 1.0 / 6.0);  // one constant occupant
    CHECK(closure_index(s, 8) == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("diversity: extremes") {
    RankingSeries frozen = series_from({{"A", "B"}, {"A", "B"}, {"A", "B"}, {"A", "B"}});
    CHECK(rank_diversity(frozen, 1) == 0.25); // 1/T
    RankingSeries churn = series_from({{"A"}, {"B"}, {"C"}, {"D"}});
    CHECK(rank_diversity(churn, 1) == 1.0);
}

TEST_CASE("alternation: p(1)=p(2)=1 and d=2/T") {
    std::vector<std::vector<ElementId>> tables;
    for (int t = 0; t < 10; ++t) {
        if (t % 2 == 0)
            tables.push_back({"X", "Y"});
        else
            tables.push_back({"Y", "X"});
    }
    RankingSeries s = series_from(tables);
    CHECK(change_probability(s, 1) == 1.0);
    CHECK(change_probability(s, 2) == 1.0);
    CHECK(rank_diversity(s, 1) == 0.2); // 2/T
    CHECK(rank_diversity(s, 2) == 0.2);
}

TEST_CASE("change probability: direct count and errors") {
    RankingSeries s = series_from({{"A"}, {"A"}, {"B"}});
    CHECK(change_probability(s, 1) == 0.5);
    RankingSeries constant = series_from({{"A"}, {"A"}, {"A"}});
    CHECK(change_probability(constant, 1) == 0.0);

    RankingSeries single = series_from({{"A"}});
    CHECK_THROWS_AS(change_probability(single, 1), Error);
}

TEST_CASE("closure: union counting") {
    CHECK(closure_index(series_from({{"A", "B"}, {"A", "B"}}), 2) == 1.0);
    CHECK(closure_index(series_from({{"A", "B"}, {"C", "D"}}), 2) == 0.5);
    CHECK(closure_index(series_from({{"A", "B"}, {"B", "C"}}), 2) ==
          doctest::Approx(2.0 / 3.0));
}

TEST_CASE("entropy: conventions and hand value") {
    RankingSeries constant = series_from({{"A"}, {"A"}, {"A"}});
    CHECK(rank_entropy(constant, 1) == 0.0);

    RankingSeries uniform = series_from({{"A"}, {"B"}, {"C"}, {"D"}});
    CHECK(rank_entropy(uniform, 1) == doctest::Approx(1.0).epsilon(1e-12));

    // frequencies (3/4, 1/4): (0.75 ln(4/3) + 0.25 ln 4) / ln 2
    RankingSeries skewed = series_from({{"A"}, {"A"}, {"A"}, {"B"}});
    CHECK(rank_entropy(skewed, 1) == doctest::Approx(0.811278).epsilon(2e-4));
}

TEST_CASE("complexity: parabola") {
    CHECK(rank_complexity(0.5) == 1.0);
    CHECK(rank_complexity(0.0) == 0.0);
    CHECK(rank_complexity(1.0) == 0.0);
    CHECK_THROWS_AS(rank_complexity(1.5), Error);
    CHECK_THROWS_AS(rank_complexity(-0.1), Error);
}

TEST_CASE("sigmoid: exact curve recovered within 1e-3") {
    SigmoidFit truth{1.5, 0.8, 1.0};
    std::vector<double> curve(1000);
    for (std::size_t k = 1; k <= curve.size(); ++k) curve[k - 1] = sigmoid_value(truth, k);

    SigmoidFit fitted = fit_sigmoid(curve);
    CHECK(std::abs(fitted.mu - 1.5) < 1e-3);
    CHECK(std::abs(fitted.sigma - 0.8) < 1e-3);
    CHECK(fitted.r_squared > 0.999999);
}

TEST_CASE("sigmoid: degenerate curve") {
    std::vector<double> flat(100, 1.0);
    try {
        fit_sigmoid(flat);
        FAIL("expected DegenerateCurve");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateCurve);
    }
}

TEST_CASE("collapse transform") {
    SigmoidFit fit{1.5, 0.8, 1.0};
    CHECK(collapse_transform(std::size_t(std::lround(std::pow(10.0, 1.5))), fit) ==
          doctest::Approx(0.0).epsilon(1e-2)); // closest integer rank to 10^mu
    SigmoidFit unit{1.0, 2.0, 1.0};
    CHECK(collapse_transform(1000, unit) == doctest::Approx(1.0));
    CHECK(collapse_transform(10, unit) == doctest::Approx(0.0));

    // exact centering/scaling on exact powers
    SigmoidFit exact{2.0, 1.0, 1.0};
    CHECK(collapse_transform(100, exact) == doctest::Approx(0.0));
    CHECK(collapse_transform(1000, exact) == doctest::Approx(1.0));
}

TEST_CASE("oracle: measures match a brute-force recount") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        RankingSeries s = random_small_series(rng);
        DynamicsProfile profile = compute_dynamics(s);
        for (std::size_t k = 1; k <= profile.n; ++k) {
            BruteForce expected = brute_force_at(s, k);
            CHECK(std::abs(profile.diversity[k - 1] - expected.d) < 1e-12);
            CHECK(std::abs(profile.p_change[k - 1] - expected.p) < 1e-12);
            CHECK(std::abs(profile.entropy[k - 1] - expected.e) < 1e-12);
            CHECK(std::abs(profile.complexity[k - 1] - expected.c) < 1e-12);
        }
        CHECK(std::abs(profile.closure - brute_force_closure(s, profile.n)) < 1e-12);
    }
}

TEST_CASE("properties: counting identities and bounds") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        RankingSeries s = random_small_series(rng);
        const double t_count = double(s.size());
        DynamicsProfile profile = compute_dynamics(s);
        for (std::size_t k = 1; k <= profile.n; ++k) {
            double d = profile.diversity[k - 1];
            double p = profile.p_change[k - 1];
            double e = profile.entropy[k - 1];
            double c = profile.complexity[k - 1];

            double dT = d * t_count;
            CHECK(std::abs(dT - std::round(dT)) < 1e-9);
            CHECK(dT >= 1.0 - 1e-9);
            CHECK(dT <= t_count + 1e-9);

            double pT = p * (t_count - 1.0);
            CHECK(std::abs(pT - std::round(pT)) < 1e-9);

            // at least |X|-1 transitions are needed to visit |X| occupants
            CHECK(p >= (dT - 1.0) / (t_count - 1.0) - 1e-9);

            bool single = std::abs(dT - 1.0) < 1e-9;
            CHECK((e == 0.0) == single);

            CHECK(c == 4.0 * e * (1.0 - e)); // bit-level functional identity
        }
    }
}

TEST_CASE("properties: invariant under element renaming") {
    std::mt19937_64 rng(123);
    RankingSeries s = random_small_series(rng);
    RankingSeries renamed = s;
    for (auto& snap : renamed.snapshots)
        for (auto& el : snap.elements) el = "zz_" + el + "_q";

    DynamicsProfile a = compute_dynamics(s);
    DynamicsProfile b = compute_dynamics(renamed);
    CHECK(a.diversity == b.diversity);
    CHECK(a.p_change == b.p_change);
    CHECK(a.entropy == b.entropy);
    CHECK(a.complexity == b.complexity);
    CHECK(a.closure == b.closure);
}

TEST_CASE("compute_dynamics: frozen series has no sigmoid and closure 1") {
    RankingSeries frozen =
        series_from({{"A", "B", "C"}, {"A", "B", "C"}, {"A", "B", "C"}, {"A", "B", "C"}});
    DynamicsProfile profile = compute_dynamics(frozen);
    CHECK_FALSE(profile.sigmoid.has_value());
    CHECK(profile.closure == 1.0);
    for (double d : profile.diversity) CHECK(d == 0.25);
    for (double p : profile.p_change) CHECK(p == 0.0);

    RankingSeries single = series_from({{"A", "B"}});
    CHECK_THROWS_AS(compute_dynamics(single), Error);
}

TEST_CASE("occupancy histogram: counts sum to T") {
    RankingSeries s = football_top8_example();
    OccupancyHistogram hist = occupancy_histogram(s, 1);
    std::size_t total = 0;
    for (const auto& [id, count] : hist.counts) total += count;
    CHECK(total == s.size());
    CHECK(hist.counts.size() == 3);
}
