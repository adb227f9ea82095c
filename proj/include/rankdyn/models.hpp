#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankdyn/error.hpp"

namespace rankdyn {

// The five rank-distribution models. m1 is the plain power law; m2 adds an
// exponential cutoff (gamma), m3 a finite-list factor (beta), m4 combines
// both, and m5 is the double power law with a crossover rank.
enum class ModelId { M1, M2, M3, M4, M5 };

std::string model_name(ModelId model);
std::optional<ModelId> model_from_name(std::string_view name);

// Parameter set; only the fields meaningful for the model are engaged:
//   m1: log_norm, a
//   m2: log_norm, a, b
//   m3: log_norm, a, q, n
//   m4: log_norm, a, b, q, n
//   m5: log_norm, a, a_prime, log_kc, n    (crossover k_c = 10^log_kc in (1, n))
struct ModelParams {
    double log_norm = 0.0; // log10 of the prefactor
    double a = 0.0;
    std::optional<double> b;
    std::optional<double> q;
    std::optional<double> a_prime;
    std::optional<double> log_kc;
    int n = 0; // list depth (m3/m4/m5)
};

struct RankScore {
    int rank;
    double score;
};

// Model value at rank k. Errors: InvalidParams when a required field is
// missing, k_c lies outside (1, n), or k exceeds n for the finite-list models.
double eval_model(ModelId model, const ModelParams& params, int k);

// Least-squares fit of log10(score) against log10(model): Nelder-Mead over
// the shape parameters from a fixed multi-start grid (prefactor solved in
// closed form per evaluation), lowest objective wins, ties broken by start
// index. Deterministic. Errors: InsufficientData, NonPositiveScore,
// FitDiverged.
ModelParams fit_model(ModelId model, std::span<const RankScore> data);

// Same, but pins the list depth n (m3/m4/m5) instead of inferring it from the
// largest rank present; used when fitting sampled profiles whose deepest
// ranks may carry zero counts.
ModelParams fit_model(ModelId model, std::span<const RankScore> data, int list_depth);

// Sum of squared log10 residuals for given params; the quantity fit_model
// minimizes. Exposed for oracle comparisons.
double fit_objective(ModelId model, const ModelParams& params, std::span<const RankScore> data);

// Normalize non-negative values into a probability mass function.
// Errors: AllZero; InvalidArgument on negative input.
std::vector<double> to_pmf(std::span<const double> values);

// Fit result bundled with its goodness-of-fit scores (filled by the gof module).
struct DistributionFit {
    ModelId model = ModelId::M1;
    ModelParams params;
    double r_squared = 0.0;
    double ks_statistic = 0.0;
    double ks_p = 0.0;
    int n_bootstrap = 0;
    std::uint64_t seed = 0;
};

} // namespace rankdyn
