#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rankdyn/series.hpp"

namespace rankdyn {

// Occupancy of one rank across all snapshots: how often each element held it.
struct OccupancyHistogram {
    std::size_t rank = 0;
    std::unordered_map<ElementId, std::size_t> counts;
    std::size_t total = 0; // = T
};

// Cumulative Gaussian in log10(k) fitted to a per-rank curve.
struct SigmoidFit {
    double mu = 0.0;
    double sigma = 1.0;
    double r_squared = 0.0;
};

// All per-rank measures over a fixed-depth series, plus the closure index
// and the sigmoid fitted to the diversity curve (absent when the curve is
// constant and the fit is undefined).
struct DynamicsProfile {
    std::size_t n = 0;
    std::size_t t = 0;
    std::vector<double> diversity;
    std::vector<double> p_change;
    std::vector<double> entropy;
    std::vector<double> complexity;
    double closure = 1.0;
    std::optional<SigmoidFit> sigmoid;
};

OccupancyHistogram occupancy_histogram(const RankingSeries& series, std::size_t k);

// |X(k)| / T: distinct occupants of rank k over the T snapshots. In [1/T, 1].
double rank_diversity(const RankingSeries& series, std::size_t k);

// Omega = N / Gamma with Gamma the number of distinct elements ever seen in
// the top N. 1 means nobody ever enters or leaves.
double closure_index(const RankingSeries& series, std::size_t n);

// Fraction of consecutive snapshot pairs where the occupant of rank k
// changes. Needs T >= 2 (TooFewSnapshots).
double change_probability(const RankingSeries& series, std::size_t k);

// Normalized Shannon entropy of the rank-k occupancy distribution, in [0, 1].
// A single occupant gives 0 (fully predictable).
double rank_entropy(const RankingSeries& series, std::size_t k);

// 4 E (1 - E): order/disorder balance, maximal at E = 0.5.
double rank_complexity(double entropy);

// Standard normal CDF, used as the sigmoid Phi in log10(k).
double normal_cdf(double z);

// Phi_{mu,sigma}(log10 k).
double sigmoid_value(const SigmoidFit& fit, std::size_t k);

// Least-squares fit of Phi_{mu,sigma}(log10 k) to curve[k-1], k = 1..N.
// Errors: DegenerateCurve (constant curve), FitDiverged.
SigmoidFit fit_sigmoid(std::span<const double> curve);

// z = (log10 k - mu) / sigma; maps a fitted curve onto the unit normal CDF.
double collapse_transform(std::size_t k, const SigmoidFit& fit);

// Everything at once over ranks 1..depth. Needs T >= 2.
DynamicsProfile compute_dynamics(const RankingSeries& series);

// Tidy per-rank table: header `k,d,p,E,C`.
void write_dynamics_csv(const DynamicsProfile& profile, std::ostream& out);

} // namespace rankdyn
