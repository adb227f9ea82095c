#include "rankdyn/walker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rankdyn/dynamics.hpp"
#include "rankdyn/gof.hpp"
#include "rankdyn/parallel.hpp"

namespace rankdyn {

namespace {

void check_permutation(std::span<const std::size_t> rank_of) {
    std::vector<char> seen(rank_of.size(), 0);
    for (std::size_t r : rank_of) {
        if (r < 1 || r > rank_of.size() || seen[r - 1])
            throw Error(ErrorKind::InvalidArgument, "walk_step: input is not a permutation of 1..N");
        seen[r - 1] = 1;
    }
}

// In-place step over rank-per-element, reusing scratch buffers.
void step_inplace(std::vector<std::size_t>& rank_of, double sigma_hat, Rng& rng,
                  std::vector<double>& provisional, std::vector<std::size_t>& order) {
    const std::size_t n = rank_of.size();
    provisional.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double k = static_cast<double>(rank_of[i]);
        provisional[i] = k + gaussian(rng) * (sigma_hat * k);
    }
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (provisional[a] != provisional[b]) return provisional[a] < provisional[b];
        if (rank_of[a] != rank_of[b]) return rank_of[a] < rank_of[b];
        return a < b;
    });
    for (std::size_t pos = 0; pos < n; ++pos) rank_of[order[pos]] = pos + 1;
}

// Distinct occupants per rank for one trajectory; occupants recorded as
// element indices, no strings involved.
std::vector<double> trajectory_diversity(std::size_t n, std::size_t t, double sigma_hat,
                                         std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> rank_of(n);
    std::iota(rank_of.begin(), rank_of.end(), std::size_t{1});

    // occupants[(k-1) * t + step] = element index at rank k
    std::vector<std::uint32_t> occupants(n * t);
    std::vector<double> provisional;
    std::vector<std::size_t> order;
    for (std::size_t step = 0; step < t; ++step) {
        if (step > 0) step_inplace(rank_of, sigma_hat, rng, provisional, order);
        for (std::size_t i = 0; i < n; ++i)
            occupants[(rank_of[i] - 1) * t + step] = static_cast<std::uint32_t>(i);
    }

    std::vector<double> diversity(n);
    std::vector<std::uint32_t> column(t);
    for (std::size_t k = 0; k < n; ++k) {
        column.assign(occupants.begin() + k * t, occupants.begin() + (k + 1) * t);
        std::sort(column.begin(), column.end());
        std::size_t distinct =
            static_cast<std::size_t>(std::unique(column.begin(), column.end()) - column.begin());
        diversity[k] = static_cast<double>(distinct) / static_cast<double>(t);
    }
    return diversity;
}

} // namespace

std::vector<std::size_t> walk_step(std::span<const std::size_t> rank_of, double sigma_hat,
                                   Rng& rng) {
    if (rank_of.empty()) throw Error(ErrorKind::InvalidArgument, "walk_step: empty state");
    if (!(sigma_hat >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "walk_step: sigma_hat must be non-negative");
    check_permutation(rank_of);
    std::vector<std::size_t> next(rank_of.begin(), rank_of.end());
    std::vector<double> provisional;
    std::vector<std::size_t> order;
    step_inplace(next, sigma_hat, rng, provisional, order);
    return next;
}

RankingSeries simulate(const WalkConfig& config) {
    if (config.n < 1 || config.t < 1)
        throw Error(ErrorKind::InvalidArgument, "simulate: n and t must be positive");
    if (!(config.sigma_hat >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "simulate: sigma_hat must be non-negative");

    std::vector<ElementId> ids(config.n);
    for (std::size_t i = 0; i < config.n; ++i) ids[i] = "e" + std::to_string(i + 1);

    Rng rng(config.seed);
    std::vector<std::size_t> rank_of(config.n);
    std::iota(rank_of.begin(), rank_of.end(), std::size_t{1});
    std::vector<double> provisional;
    std::vector<std::size_t> order;

    RankingSeries series;
    series.snapshots.reserve(config.t);
    for (std::size_t step = 0; step < config.t; ++step) {
        if (step > 0) step_inplace(rank_of, config.sigma_hat, rng, provisional, order);
        Snapshot snap;
        snap.time_label = std::to_string(step);
        snap.elements.resize(config.n);
        for (std::size_t i = 0; i < config.n; ++i) snap.elements[rank_of[i] - 1] = ids[i];
        series.snapshots.push_back(std::move(snap));
    }
    return series;
}

std::vector<double> model_diversity(std::size_t n, std::size_t t, double sigma_hat,
                                    std::uint64_t seed, std::size_t replicates, unsigned threads) {
    if (n < 1 || t < 1 || replicates < 1)
        throw Error(ErrorKind::InvalidArgument, "model_diversity: n, t, replicates must be positive");
    std::vector<std::vector<double>> per_replicate(replicates);
    parallel_for(replicates, threads, [&](std::size_t r) {
        Rng seeder = replicate_rng(seed, r);
        per_replicate[r] = trajectory_diversity(n, t, sigma_hat, seeder());
    });
    std::vector<double> mean(n, 0.0);
    for (std::size_t r = 0; r < replicates; ++r)
        for (std::size_t k = 0; k < n; ++k) mean[k] += per_replicate[r][k];
    for (double& v : mean) v /= static_cast<double>(replicates);
    return mean;
}

CalibrationResult calibrate_sigma(std::span<const double> empirical_d, std::size_t n,
                                  std::size_t t, std::size_t replicates, std::uint64_t seed,
                                  unsigned threads) {
    if (empirical_d.empty()) throw Error(ErrorKind::EmptyCurve, "calibrate_sigma: empty curve");
    if (empirical_d.size() != n)
        throw Error(ErrorKind::LengthMismatch, "calibrate_sigma: curve length must equal n");
    if (t < 2) throw Error(ErrorKind::TooFewSnapshots, "calibrate_sigma: t must be at least 2");

    // Mean squared distance between the empirical curve and the
    // replicate-averaged model curve; replicate seeds are shared across
    // sigma values so the objective is a deterministic function of sigma.
    auto objective = [&](double log10_sigma) {
        std::vector<double> model =
            model_diversity(n, t, std::pow(10.0, log10_sigma), seed, replicates, threads);
        double sse = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double r = empirical_d[k] - model[k];
            sse += r * r;
        }
        return sse / static_cast<double>(n);
    };

    constexpr double kLogLo = -4.0; // sigma 1e-4
    constexpr double kLogHi = 1.0;  // sigma 10
    constexpr int kGridPoints = 17;

    double best_log = kLogLo;
    double best_val = std::numeric_limits<double>::infinity();
    auto consider = [&](double lg, double val) {
        if (val < best_val || (val == best_val && lg < best_log)) {
            best_val = val;
            best_log = lg;
        }
    };

    std::vector<double> grid_vals(kGridPoints);
    int best_idx = 0;
    for (int i = 0; i < kGridPoints; ++i) {
        double lg = kLogLo + (kLogHi - kLogLo) * static_cast<double>(i) / (kGridPoints - 1);
        grid_vals[i] = objective(lg);
        consider(lg, grid_vals[i]);
        if (grid_vals[i] < grid_vals[best_idx]) best_idx = i;
    }

    // Golden-section refinement inside the bracket around the grid minimum.
    const double grid_step = (kLogHi - kLogLo) / (kGridPoints - 1);
    double lo = kLogLo + grid_step * std::max(0, best_idx - 1);
    double hi = kLogLo + grid_step * std::min(kGridPoints - 1, best_idx + 1);
    constexpr double kInvPhi = 0.61803398874989484820;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    consider(x1, f1);
    consider(x2, f2);
    while (hi - lo > 0.01) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = objective(x1);
            consider(x1, f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = objective(x2);
            consider(x2, f2);
        }
    }

    CalibrationResult result;
    result.sigma_hat_star = std::pow(10.0, best_log);

    std::vector<double> model =
        model_diversity(n, t, result.sigma_hat_star, seed, replicates, threads);
    try {
        result.r2_model_fit = fit_sigmoid(model).r_squared;
    } catch (const Error&) {
        result.r2_model_fit = std::numeric_limits<double>::quiet_NaN();
    }
    try {
        result.r2_data_vs_model = r_squared(empirical_d, model);
    } catch (const Error&) {
        result.r2_data_vs_model = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

} // namespace rankdyn
