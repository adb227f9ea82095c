#include "rankdyn/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rankdyn/optimize.hpp"

namespace rankdyn {

namespace {

constexpr double kLog10E = 0.43429448190325182765; // log10(e)

double pow10(double x) { return std::pow(10.0, x); }

void require(bool cond, ErrorKind kind, const char* message) {
    if (!cond) throw Error(kind, message);
}

} // namespace

std::string model_name(ModelId model) {
    switch (model) {
        case ModelId::M1: return "m1";
        case ModelId::M2: return "m2";
        case ModelId::M3: return "m3";
        case ModelId::M4: return "m4";
        case ModelId::M5: return "m5";
    }
    return "?";
}

std::optional<ModelId> model_from_name(std::string_view name) {
    if (name == "m1" || name == "M1") return ModelId::M1;
    if (name == "m2" || name == "M2") return ModelId::M2;
    if (name == "m3" || name == "M3") return ModelId::M3;
    if (name == "m4" || name == "M4") return ModelId::M4;
    if (name == "m5" || name == "M5") return ModelId::M5;
    return std::nullopt;
}

double eval_model(ModelId model, const ModelParams& params, int k) {
    require(k >= 1, ErrorKind::InvalidParams, "rank k must be positive");
    require(params.a >= 0.0, ErrorKind::InvalidParams, "a must be non-negative");

    const double prefactor = pow10(params.log_norm);
    const double kd = static_cast<double>(k);
    double value = prefactor;

    switch (model) {
        case ModelId::M1:
            break;
        case ModelId::M2:
            require(params.b.has_value() && *params.b >= 0.0, ErrorKind::InvalidParams,
                    "m2 requires non-negative b");
            value *= std::exp(-*params.b * kd);
            break;
        case ModelId::M3:
            require(params.q.has_value() && *params.q >= 0.0, ErrorKind::InvalidParams,
                    "m3 requires non-negative q");
            require(params.n >= 1 && k <= params.n, ErrorKind::InvalidParams,
                    "m3 requires 1 <= k <= n");
            value *= std::pow(static_cast<double>(params.n + 1 - k), *params.q);
            break;
        case ModelId::M4:
            require(params.b.has_value() && *params.b >= 0.0, ErrorKind::InvalidParams,
                    "m4 requires non-negative b");
            require(params.q.has_value() && *params.q >= 0.0, ErrorKind::InvalidParams,
                    "m4 requires non-negative q");
            require(params.n >= 1 && k <= params.n, ErrorKind::InvalidParams,
                    "m4 requires 1 <= k <= n");
            value *= std::pow(static_cast<double>(params.n + 1 - k), *params.q);
            value *= std::exp(-*params.b * kd);
            break;
        case ModelId::M5: {
            require(params.a_prime.has_value() && *params.a_prime >= 0.0, ErrorKind::InvalidParams,
                    "m5 requires non-negative a_prime");
            require(params.log_kc.has_value(), ErrorKind::InvalidParams, "m5 requires log_kc");
            const double kc = pow10(*params.log_kc);
            require(params.n >= 2 && kc > 1.0 && kc < static_cast<double>(params.n),
                    ErrorKind::InvalidParams, "m5 requires k_c in (1, n)");
            if (kd <= kc) return value / std::pow(kd, params.a);
            return value * std::pow(kc, *params.a_prime - params.a) / std::pow(kd, *params.a_prime);
        }
    }
    return value / std::pow(kd, params.a);
}

std::vector<double> to_pmf(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::InvalidArgument, "to_pmf: empty input");
    double sum = 0.0;
    for (double v : values) {
        if (!(v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "to_pmf: negative value");
        sum += v;
    }
    if (sum <= 0.0) throw Error(ErrorKind::AllZero, "to_pmf: all values are zero");
    std::vector<double> pmf(values.begin(), values.end());
    for (double& v : pmf) v /= sum;
    return pmf;
}

// ---------------------------------------------------------------------------
// Fitting. Everything happens in log10 space, where each model separates into
// a free intercept (log_norm) plus a shape term; the intercept has a closed
// form per shape evaluation, so the simplex only walks the shape parameters.
// ---------------------------------------------------------------------------

namespace {

struct FitColumns {
    std::vector<double> y;      // log10(score)
    std::vector<double> log_k;  // log10(k)
    std::vector<double> k;      // k as double
    std::vector<double> log_nk; // log10(n + 1 - k)
    int n = 0;                  // max rank = list depth
};

FitColumns make_columns(std::span<const RankScore> data, int list_depth = 0) {
    FitColumns cols;
    cols.n = list_depth;
    cols.y.reserve(data.size());
    cols.log_k.reserve(data.size());
    cols.k.reserve(data.size());
    std::unordered_set<int> ranks;
    ranks.reserve(data.size());
    for (const auto& point : data) {
        if (point.rank < 1)
            throw Error(ErrorKind::InvalidArgument, "fit_model: rank must be positive");
        if (!ranks.insert(point.rank).second)
            throw Error(ErrorKind::InvalidArgument, "fit_model: duplicate rank in data");
        if (!(point.score > 0.0))
            throw Error(ErrorKind::NonPositiveScore,
                        "fit_model: score at rank " + std::to_string(point.rank) +
                            " is not positive (log-space fit undefined)");
        cols.y.push_back(std::log10(point.score));
        cols.k.push_back(static_cast<double>(point.rank));
        cols.log_k.push_back(std::log10(static_cast<double>(point.rank)));
        cols.n = std::max(cols.n, point.rank);
    }
    cols.log_nk.reserve(data.size());
    for (double kd : cols.k)
        cols.log_nk.push_back(std::log10(static_cast<double>(cols.n) + 1.0 - kd));
    return cols;
}

int free_parameter_count(ModelId model) {
    switch (model) {
        case ModelId::M1: return 2; // log_norm, a
        case ModelId::M2: return 3; // + b
        case ModelId::M3: return 3; // + q
        case ModelId::M4: return 4; // + b, q
        case ModelId::M5: return 4; // log_norm, a, a_prime, log_kc
    }
    return 0;
}

double clamp_kc_log(double log_kc, int n) {
    const double lo = std::log10(1.0 + 1e-9);
    const double hi = std::log10(static_cast<double>(n)) - 1e-12;
    return std::clamp(log_kc, lo, hi);
}

// Shape term s_i(theta) with log_norm profiled out: the optimal intercept is
// mean(y - s), leaving SSE = sum((r - mean(r))^2) with r = y - s.
double shape_sse(ModelId model, const FitColumns& cols, const std::vector<double>& theta,
                 double* intercept_out = nullptr) {
    const std::size_t m = cols.y.size();
    double sum_r = 0.0;
    double sum_r2 = 0.0;
    auto accumulate = [&](double r) {
        sum_r += r;
        sum_r2 += r * r;
    };

    switch (model) {
        case ModelId::M1: {
            const double a = std::max(0.0, theta[0]);
            for (std::size_t i = 0; i < m; ++i) accumulate(cols.y[i] + a * cols.log_k[i]);
            break;
        }
        case ModelId::M2: {
            const double a = std::max(0.0, theta[0]);
            const double b = std::max(0.0, theta[1]);
            for (std::size_t i = 0; i < m; ++i)
                accumulate(cols.y[i] + a * cols.log_k[i] + b * cols.k[i] * kLog10E);
            break;
        }
        case ModelId::M3: {
            const double a = std::max(0.0, theta[0]);
            const double q = std::max(0.0, theta[1]);
            for (std::size_t i = 0; i < m; ++i)
                accumulate(cols.y[i] + a * cols.log_k[i] - q * cols.log_nk[i]);
            break;
        }
        case ModelId::M4: {
            const double a = std::max(0.0, theta[0]);
            const double b = std::max(0.0, theta[1]);
            const double q = std::max(0.0, theta[2]);
            for (std::size_t i = 0; i < m; ++i)
                accumulate(cols.y[i] + a * cols.log_k[i] + b * cols.k[i] * kLog10E -
                           q * cols.log_nk[i]);
            break;
        }
        case ModelId::M5: {
            const double a = std::max(0.0, theta[0]);
            const double a_prime = std::max(0.0, theta[1]);
            const double log_kc = clamp_kc_log(theta[2], cols.n);
            for (std::size_t i = 0; i < m; ++i) {
                double s = (cols.log_k[i] <= log_kc)
                               ? -a * cols.log_k[i]
                               : (a_prime - a) * log_kc - a_prime * cols.log_k[i];
                accumulate(cols.y[i] - s);
            }
            break;
        }
    }

    const double md = static_cast<double>(m);
    if (intercept_out) *intercept_out = sum_r / md;
    return sum_r2 - sum_r * sum_r / md;
}

std::vector<std::vector<double>> start_grid(ModelId model, const FitColumns& cols) {
    static const double a_grid[] = {0.01, 0.1, 0.5, 1.0, 2.0};
    static const double b_grid[] = {0.0, 1e-4, 1e-2};
    static const double q_grid[] = {0.0, 0.5, 1.0, 2.0};

    // k_c starts at the quartiles of the k-range.
    double k_min = cols.k.front();
    double k_max = cols.k.front();
    for (double kd : cols.k) {
        k_min = std::min(k_min, kd);
        k_max = std::max(k_max, kd);
    }
    std::vector<double> kc_grid;
    for (double frac : {0.25, 0.5, 0.75}) {
        double kc = k_min + frac * (k_max - k_min);
        kc_grid.push_back(clamp_kc_log(std::log10(std::max(kc, 1.0 + 1e-6)), cols.n));
    }

    std::vector<std::vector<double>> starts;
    switch (model) {
        case ModelId::M1:
            for (double a : a_grid) starts.push_back({a});
            break;
        case ModelId::M2:
            for (double a : a_grid)
                for (double b : b_grid) starts.push_back({a, b});
            break;
        case ModelId::M3:
            for (double a : a_grid)
                for (double q : q_grid) starts.push_back({a, q});
            break;
        case ModelId::M4:
            for (double a : a_grid)
                for (double b : b_grid)
                    for (double q : q_grid) starts.push_back({a, b, q});
            break;
        case ModelId::M5:
            for (double a : a_grid)
                for (double ap : a_grid)
                    for (double lkc : kc_grid) starts.push_back({a, ap, lkc});
            break;
    }
    return starts;
}

ModelParams params_from_theta(ModelId model, const FitColumns& cols,
                              const std::vector<double>& theta) {
    ModelParams params;
    double intercept = 0.0;
    shape_sse(model, cols, theta, &intercept);
    params.log_norm = intercept;
    params.a = std::max(0.0, theta[0]);
    switch (model) {
        case ModelId::M1:
            break;
        case ModelId::M2:
            params.b = std::max(0.0, theta[1]);
            break;
        case ModelId::M3:
            params.q = std::max(0.0, theta[1]);
            params.n = cols.n;
            break;
        case ModelId::M4:
            params.b = std::max(0.0, theta[1]);
            params.q = std::max(0.0, theta[2]);
            params.n = cols.n;
            break;
        case ModelId::M5:
            params.a_prime = std::max(0.0, theta[1]);
            params.log_kc = clamp_kc_log(theta[2], cols.n);
            params.n = cols.n;
            break;
    }
    return params;
}

} // namespace

double fit_objective(ModelId model, const ModelParams& params, std::span<const RankScore> data) {
    double sse = 0.0;
    for (const auto& point : data) {
        if (!(point.score > 0.0))
            throw Error(ErrorKind::NonPositiveScore, "fit_objective: score must be positive");
        double r = std::log10(point.score) - std::log10(eval_model(model, params, point.rank));
        sse += r * r;
    }
    return sse;
}

ModelParams fit_model(ModelId model, std::span<const RankScore> data) {
    return fit_model(model, data, 0);
}

ModelParams fit_model(ModelId model, std::span<const RankScore> data, int list_depth) {
    FitColumns cols = make_columns(data, list_depth);
    const int min_points = free_parameter_count(model) + 1;
    if (static_cast<int>(data.size()) < min_points)
        throw Error(ErrorKind::InsufficientData,
                    "fit_model: need at least " + std::to_string(min_points) + " points, got " +
                        std::to_string(data.size()));
    if (model == ModelId::M5 && cols.n < 3)
        throw Error(ErrorKind::InsufficientData, "fit_model: m5 needs ranks spanning beyond k=2");

    auto objective = [&](const std::vector<double>& theta) {
        return shape_sse(model, cols, theta);
    };

    SimplexOptions options;
    const auto starts = start_grid(model, cols);
    SimplexResult best;
    best.fval = std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        SimplexResult res = nelder_mead(objective, start, options);
        if (res.fval < best.fval) best = std::move(res);
    }

    // Polish pass from the winning start with a tighter initial simplex.
    SimplexOptions polish = options;
    polish.initial_step = 0.01;
    polish.zero_coord_step = 1e-4;
    SimplexResult polished = nelder_mead(objective, best.x, polish);
    if (polished.fval < best.fval) best = std::move(polished);

    if (!std::isfinite(best.fval))
        throw Error(ErrorKind::FitDiverged, "fit_model: optimizer failed from all starts");

    return params_from_theta(model, cols, best.x);
}

} // namespace rankdyn
