#include "rankdyn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankdyn/error.hpp"

namespace rankdyn {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          const std::vector<double>& start,
                          const SimplexOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "nelder_mead: empty start point");

    constexpr double alpha = 1.0; // reflection
    constexpr double gamma = 2.0; // expansion
    constexpr double rho = 0.5;   // contraction
    constexpr double shrink = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        double& c = simplex[i + 1][i];
        c += (c != 0.0) ? options.initial_step * std::abs(c) : options.zero_coord_step;
    }
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = objective(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    };

    SimplexResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        double spread = fvals[worst] - fvals[best];
        if (std::isfinite(fvals[best]) &&
            spread <= options.relative_tolerance * (std::abs(fvals[best]) + 1e-300)) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coeff * (simplex[worst][j] - centroid[j]);
            return p;
        };

        std::vector<double> reflected = blend(-alpha);
        double f_reflected = objective(reflected);

        if (f_reflected < fvals[best]) {
            std::vector<double> expanded = blend(-alpha * gamma);
            double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                fvals[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                fvals[worst] = f_reflected;
            }
        } else if (f_reflected < fvals[second_worst]) {
            simplex[worst] = std::move(reflected);
            fvals[worst] = f_reflected;
        } else {
            bool outside = f_reflected < fvals[worst];
            std::vector<double> contracted = blend(outside ? -alpha * rho : rho);
            double f_contracted = objective(contracted);
            if (f_contracted < std::min(f_reflected, fvals[worst])) {
                simplex[worst] = std::move(contracted);
                fvals[worst] = f_contracted;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == order[0]) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[order[0]][j] +
                                        shrink * (simplex[i][j] - simplex[order[0]][j]);
                    fvals[i] = objective(simplex[i]);
                }
            }
        }
    }

    sort_order();
    result.x = simplex[order[0]];
    result.fval = fvals[order[0]];
    result.iterations = iter;
    return result;
}

} // namespace rankdyn
