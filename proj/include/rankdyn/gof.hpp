#pragma once

#include <cstdint>
#include <span>

#include "rankdyn/models.hpp"

namespace rankdyn {

struct GofReport {
    double r_squared = 0.0;    // log-space R^2 of the tested parameters on the data
    double ks_statistic = 0.0; // observed CDF distance, in [0, 1]
    double ks_p = 0.0;         // Monte Carlo bootstrap p, resolution 1/n_bootstrap
    int n_bootstrap = 0;
    std::uint64_t seed = 0;
};

// Coefficient of determination 1 - SS_res/SS_tot (SS_tot about the mean of
// observed). Negative when the fit is worse than the mean. Errors:
// LengthMismatch, ZeroVariance.
double r_squared(std::span<const double> observed, std::span<const double> predicted);

// max_k |CDF_emp(k) - CDF_model(k)| for two pmfs over the same support.
// Errors: SupportMismatch (unequal lengths or mass not summing to 1 within 1e-9).
double ks_statistic(std::span<const double> p_emp, std::span<const double> p_model);

// Bootstrap Kolmogorov-Smirnov index: draws `n_bootstrap` multinomial samples
// of `sample_size` from the fitted-model pmf, refits the model to each sample
// profile, and reports the fraction of replicates whose KS statistic meets or
// exceeds the observed one. A replicate whose refit fails counts as an
// exceedance. Deterministic given `seed`; replicate streams are seed XOR
// replicate index, so `threads` does not change the result.
GofReport ks_p_value(std::span<const RankScore> data, ModelId model, const ModelParams& params,
                     int n_bootstrap, int sample_size, std::uint64_t seed, unsigned threads = 1);

} // namespace rankdyn
