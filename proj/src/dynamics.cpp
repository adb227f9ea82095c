#include "rankdyn/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "rankdyn/optimize.hpp"

namespace rankdyn {

namespace {

void check_rank(const RankingSeries& series, std::size_t k) {
    if (series.snapshots.empty())
        throw Error(ErrorKind::TooFewSnapshots, "series has no snapshots");
    if (k < 1 || k > series.depth())
        throw Error(ErrorKind::OutOfRange,
                    "rank " + std::to_string(k) + " outside 1.." + std::to_string(series.depth()));
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

OccupancyHistogram occupancy_histogram(const RankingSeries& series, std::size_t k) {
    check_rank(series, k);
    OccupancyHistogram hist;
    hist.rank = k;
    hist.total = series.size();
    for (const auto& snap : series.snapshots) ++hist.counts[snap.elements[k - 1]];
    return hist;
}

double rank_diversity(const RankingSeries& series, std::size_t k) {
    OccupancyHistogram hist = occupancy_histogram(series, k);
    return static_cast<double>(hist.counts.size()) / static_cast<double>(hist.total);
}

double closure_index(const RankingSeries& series, std::size_t n) {
    if (series.snapshots.empty())
        throw Error(ErrorKind::TooFewSnapshots, "series has no snapshots");
    if (n < 1 || n > series.depth())
        throw Error(ErrorKind::OutOfRange,
                    "depth " + std::to_string(n) + " outside 1.." + std::to_string(series.depth()));
    std::unordered_set<std::string_view> seen;
    for (const auto& snap : series.snapshots)
        for (std::size_t i = 0; i < n; ++i) seen.insert(snap.elements[i]);
    return static_cast<double>(n) / static_cast<double>(seen.size());
}

double change_probability(const RankingSeries& series, std::size_t k) {
    check_rank(series, k);
    const std::size_t t_count = series.size();
    if (t_count < 2)
        throw Error(ErrorKind::TooFewSnapshots, "change probability needs at least two snapshots");
    std::size_t changes = 0;
    for (std::size_t t = 0; t + 1 < t_count; ++t) {
        if (series.snapshots[t].elements[k - 1] != series.snapshots[t + 1].elements[k - 1])
            ++changes;
    }
    return static_cast<double>(changes) / static_cast<double>(t_count - 1);
}

double rank_entropy(const RankingSeries& series, std::size_t k) {
    OccupancyHistogram hist = occupancy_histogram(series, k);
    if (hist.counts.size() <= 1) return 0.0; // single occupant: fully predictable
    const double t_count = static_cast<double>(hist.total);
    double sum = 0.0;
    for (const auto& [element, count] : hist.counts) {
        double p = static_cast<double>(count) / t_count;
        sum -= p * std::log(p);
    }
    // rounding can push the ratio a few ulp past 1 when occupancy is uniform
    return std::clamp(sum / std::log(static_cast<double>(hist.counts.size())), 0.0, 1.0);
}

double rank_complexity(double entropy) {
    if (!(entropy >= 0.0 && entropy <= 1.0))
        throw Error(ErrorKind::OutOfRange, "entropy must lie in [0, 1]");
    return 4.0 * entropy * (1.0 - entropy);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.70710678118654752440); // 1/sqrt(2)
}

double sigmoid_value(const SigmoidFit& fit, std::size_t k) {
    return normal_cdf((std::log10(static_cast<double>(k)) - fit.mu) / fit.sigma);
}

double collapse_transform(std::size_t k, const SigmoidFit& fit) {
    if (!(fit.sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
    return (std::log10(static_cast<double>(k)) - fit.mu) / fit.sigma;
}

SigmoidFit fit_sigmoid(std::span<const double> curve) {
    if (curve.size() < 3)
        throw Error(ErrorKind::InsufficientData, "fit_sigmoid: need at least 3 points");
    auto [lo_it, hi_it] = std::minmax_element(curve.begin(), curve.end());
    if (*lo_it == *hi_it)
        throw Error(ErrorKind::DegenerateCurve, "fit_sigmoid: curve is constant");

    std::vector<double> log_k(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        log_k[i] = std::log10(static_cast<double>(i + 1));

    // mu starts where the curve first crosses its midrange; sigma starts at 1.
    const double midrange = 0.5 * (*lo_it + *hi_it);
    double mu0 = log_k.back();
    const bool rising = curve.front() < midrange;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if ((rising && curve[i] >= midrange) || (!rising && curve[i] <= midrange)) {
            mu0 = log_k[i];
            break;
        }
    }

    // theta = (mu, log sigma); the log keeps sigma positive.
    auto objective = [&](const std::vector<double>& theta) {
        const double mu = theta[0];
        const double sigma = std::exp(theta[1]);
        double sse = 0.0;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            double r = curve[i] - normal_cdf((log_k[i] - mu) / sigma);
            sse += r * r;
        }
        return sse;
    };

    SimplexOptions options;
    SimplexResult best = nelder_mead(objective, {mu0, 0.0}, options);
    SimplexOptions polish = options;
    polish.initial_step = 0.01;
    polish.zero_coord_step = 1e-4;
    SimplexResult polished = nelder_mead(objective, best.x, polish);
    if (polished.fval < best.fval) best = std::move(polished);

    if (!std::isfinite(best.fval))
        throw Error(ErrorKind::FitDiverged, "fit_sigmoid: optimizer failed");

    SigmoidFit fit;
    fit.mu = best.x[0];
    fit.sigma = std::exp(best.x[1]);
    std::vector<double> predicted(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        predicted[i] = normal_cdf((log_k[i] - fit.mu) / fit.sigma);
    double mean = 0.0;
    for (double v : curve) mean += v;
    mean /= static_cast<double>(curve.size());
    double ss_tot = 0.0;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        ss_tot += (curve[i] - mean) * (curve[i] - mean);
        ss_res += (curve[i] - predicted[i]) * (curve[i] - predicted[i]);
    }
    fit.r_squared = 1.0 - ss_res / ss_tot;
    return fit;
}

DynamicsProfile compute_dynamics(const RankingSeries& series) {
    if (series.size() < 2)
        throw Error(ErrorKind::TooFewSnapshots, "dynamics needs at least two snapshots");
    DynamicsProfile profile;
    profile.n = series.depth();
    profile.t = series.size();
    if (profile.n == 0) throw Error(ErrorKind::InvalidArgument, "series has empty snapshots");

    profile.diversity.resize(profile.n);
    profile.p_change.resize(profile.n);
    profile.entropy.resize(profile.n);
    profile.complexity.resize(profile.n);
    for (std::size_t k = 1; k <= profile.n; ++k) {
        profile.diversity[k - 1] = rank_diversity(series, k);
        profile.p_change[k - 1] = change_probability(series, k);
        profile.entropy[k - 1] = rank_entropy(series, k);
        profile.complexity[k - 1] = rank_complexity(profile.entropy[k - 1]);
    }
    profile.closure = closure_index(series, profile.n);
    try {
        profile.sigmoid = fit_sigmoid(profile.diversity);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateCurve && e.kind() != ErrorKind::InsufficientData)
            throw;
        profile.sigmoid.reset(); // constant or tiny curve: no sigmoid to report
    }
    return profile;
}

void write_dynamics_csv(const DynamicsProfile& profile, std::ostream& out) {
    out << "k,d,p,E,C\n";
    for (std::size_t k = 1; k <= profile.n; ++k) {
        out << k << ',' << format_double(profile.diversity[k - 1]) << ','
            << format_double(profile.p_change[k - 1]) << ','
            << format_double(profile.entropy[k - 1]) << ','
            << format_double(profile.complexity[k - 1]) << '\n';
    }
}

} // namespace rankdyn
