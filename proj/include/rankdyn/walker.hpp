#pragma once

#include <cstdint>
#include <span>

#include "rankdyn/rng.hpp"
#include "rankdyn/series.hpp"

namespace rankdyn {

struct WalkConfig {
    std::size_t n = 0;          // number of elements
    std::size_t t = 0;          // snapshots to generate
    double sigma_hat = 0.0;     // noise amplitude; perturbation std is k * sigma_hat
    std::size_t replicates = 10;
    std::uint64_t seed = 0;
};

struct CalibrationResult {
    double sigma_hat_star = 0.0;
    double r2_model_fit = 0.0;     // R^2 of the sigmoid fitted to the model diversity
    double r2_data_vs_model = 0.0; // R^2_s between empirical and model diversity
};

// One step of the rank-proportional random walk: each element's provisional
// position is k + Gaussian(0, k * sigma_hat); re-ranking the provisional
// positions (ties by previous rank, then element index) yields the next
// permutation. Input and output are rank-per-element, 1..N.
std::vector<std::size_t> walk_step(std::span<const std::size_t> rank_of, double sigma_hat,
                                   Rng& rng);

// T snapshots of elements e1..eN, starting from the identity ranking and
// applying walk_step repeatedly. Deterministic given config.seed.
RankingSeries simulate(const WalkConfig& config);

// Replicate-averaged diversity curve of the walk, without materializing
// ElementId strings. Same trajectories as simulate for the same seeds.
std::vector<double> model_diversity(std::size_t n, std::size_t t, double sigma_hat,
                                    std::uint64_t seed, std::size_t replicates,
                                    unsigned threads = 1);

// Finds the sigma_hat whose replicate-averaged diversity curve is closest
// (mean squared error) to the empirical one: deterministic coarse log-spaced
// scan over [1e-4, 10] followed by golden-section refinement. Error: EmptyCurve.
CalibrationResult calibrate_sigma(std::span<const double> empirical_d, std::size_t n,
                                  std::size_t t, std::size_t replicates, std::uint64_t seed,
                                  unsigned threads = 1);

} // namespace rankdyn
