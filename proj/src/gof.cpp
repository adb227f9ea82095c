#include "rankdyn/gof.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rankdyn/parallel.hpp"
#include "rankdyn/rng.hpp"

namespace rankdyn {

double r_squared(std::span<const double> observed, std::span<const double> predicted) {
    if (observed.empty() || observed.size() != predicted.size())
        throw Error(ErrorKind::LengthMismatch,
                    "r_squared: observed and predicted lengths differ (" +
                        std::to_string(observed.size()) + " vs " + std::to_string(predicted.size()) +
                        ")");
    double mean = 0.0;
    for (double v : observed) mean += v;
    mean /= static_cast<double>(observed.size());

    double ss_tot = 0.0;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
        ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    }
    if (ss_tot == 0.0)
        throw Error(ErrorKind::ZeroVariance, "r_squared: all observed values are equal");
    return 1.0 - ss_res / ss_tot;
}

double ks_statistic(std::span<const double> p_emp, std::span<const double> p_model) {
    if (p_emp.empty() || p_emp.size() != p_model.size())
        throw Error(ErrorKind::SupportMismatch, "ks_statistic: pmfs are not over the same support");
    double sum_emp = 0.0;
    double sum_model = 0.0;
    for (double v : p_emp) sum_emp += v;
    for (double v : p_model) sum_model += v;
    if (std::abs(sum_emp - 1.0) > 1e-9 || std::abs(sum_model - 1.0) > 1e-9)
        throw Error(ErrorKind::SupportMismatch, "ks_statistic: pmf mass does not sum to 1");

    double cdf_emp = 0.0;
    double cdf_model = 0.0;
    double d = 0.0;
    for (std::size_t i = 0; i < p_emp.size(); ++i) {
        cdf_emp += p_emp[i];
        cdf_model += p_model[i];
        d = std::max(d, std::abs(cdf_emp - cdf_model));
    }
    return d;
}

GofReport ks_p_value(std::span<const RankScore> data, ModelId model, const ModelParams& params,
                     int n_bootstrap, int sample_size, std::uint64_t seed, unsigned threads) {
    if (data.empty()) throw Error(ErrorKind::InvalidArgument, "ks_p_value: empty data");
    if (n_bootstrap < 1) throw Error(ErrorKind::InvalidArgument, "ks_p_value: n_bootstrap must be positive");
    if (sample_size < 100)
        throw Error(ErrorKind::InvalidArgument, "ks_p_value: sample_size must be at least 100");

    std::vector<RankScore> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const RankScore& a, const RankScore& b) { return a.rank < b.rank; });
    const int depth = sorted.back().rank;

    std::vector<double> scores;
    std::vector<double> model_values;
    std::vector<double> log_obs;
    std::vector<double> log_pred;
    scores.reserve(sorted.size());
    model_values.reserve(sorted.size());
    for (const auto& point : sorted) {
        scores.push_back(point.score);
        double mv = eval_model(model, params, point.rank);
        model_values.push_back(mv);
        log_obs.push_back(std::log10(point.score));
        log_pred.push_back(std::log10(mv));
    }
    const std::vector<double> emp_pmf = to_pmf(scores);
    const std::vector<double> model_pmf = to_pmf(model_values);
    const double observed_ks = ks_statistic(emp_pmf, model_pmf);

    GofReport report;
    report.r_squared = r_squared(log_obs, log_pred);
    report.ks_statistic = observed_ks;
    report.n_bootstrap = n_bootstrap;
    report.seed = seed;

    std::vector<char> exceeds(static_cast<std::size_t>(n_bootstrap), 0);
    parallel_for(static_cast<std::size_t>(n_bootstrap), threads, [&](std::size_t r) {
        Rng rng = replicate_rng(seed, r);
        std::vector<std::uint32_t> counts = multinomial(rng, model_pmf, static_cast<std::size_t>(sample_size));

        std::vector<double> synth_pmf(counts.size());
        std::vector<RankScore> synth_data;
        synth_data.reserve(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            synth_pmf[i] = static_cast<double>(counts[i]) / static_cast<double>(sample_size);
            if (counts[i] > 0)
                synth_data.push_back({sorted[i].rank, static_cast<double>(counts[i])});
        }

        bool exceed;
        try {
            ModelParams refit = fit_model(model, synth_data, depth);
            std::vector<double> refit_values(sorted.size());
            for (std::size_t i = 0; i < sorted.size(); ++i)
                refit_values[i] = eval_model(model, refit, sorted[i].rank);
            double replicate_ks = ks_statistic(synth_pmf, to_pmf(refit_values));
            exceed = replicate_ks >= observed_ks;
        } catch (const Error&) {
            exceed = true; // failed refit counts as an exceedance
        }
        exceeds[r] = exceed ? 1 : 0;
    });

    int count = 0;
    for (char e : exceeds) count += e;
    report.ks_p = static_cast<double>(count) / static_cast<double>(n_bootstrap);
    return report;
}

} // namespace rankdyn
