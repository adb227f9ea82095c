#include "rankdyn/json_io.hpp"

#include <cmath>

namespace rankdyn {

namespace {

nlohmann::json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::json optional_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return number_or_null(*v);
}

} // namespace

nlohmann::json to_json(const DistributionFit& fit) {
    nlohmann::json j;
    j["model"] = model_name(fit.model);
    j["log_norm"] = number_or_null(fit.params.log_norm);
    j["a"] = number_or_null(fit.params.a);
    j["b"] = optional_number(fit.params.b);
    j["q"] = optional_number(fit.params.q);
    j["a_prime"] = optional_number(fit.params.a_prime);
    j["log_kc"] = optional_number(fit.params.log_kc);
    j["n"] = fit.params.n > 0 ? nlohmann::json(fit.params.n) : nlohmann::json(nullptr);
    j["r_squared"] = number_or_null(fit.r_squared);
    j["ks_statistic"] = number_or_null(fit.ks_statistic);
    j["ks_p"] = number_or_null(fit.ks_p);
    j["n_bootstrap"] = fit.n_bootstrap;
    j["seed"] = fit.seed;
    return j;
}

nlohmann::json to_json(const SigmoidFit& fit) {
    nlohmann::json j;
    j["mu"] = number_or_null(fit.mu);
    j["sigma"] = number_or_null(fit.sigma);
    j["r_squared"] = number_or_null(fit.r_squared);
    return j;
}

nlohmann::json to_json(const DynamicsProfile& profile) {
    nlohmann::json j;
    j["n"] = profile.n;
    j["t"] = profile.t;
    j["d"] = profile.diversity;
    j["p_change"] = profile.p_change;
    j["entropy"] = profile.entropy;
    j["complexity"] = profile.complexity;
    j["closure"] = number_or_null(profile.closure);
    j["sigmoid"] = profile.sigmoid ? to_json(*profile.sigmoid) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const CalibrationResult& result) {
    nlohmann::json j;
    j["sigma_hat_star"] = number_or_null(result.sigma_hat_star);
    j["r2_model_fit"] = number_or_null(result.r2_model_fit);
    j["r2_data_vs_model"] = number_or_null(result.r2_data_vs_model);
    return j;
}

} // namespace rankdyn
