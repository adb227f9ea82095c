#pragma once

#include <functional>
#include <vector>

namespace rankdyn {

struct SimplexOptions {
    double relative_tolerance = 1e-10; // stop when spread(f) / |f_best| drops below this
    int max_iterations = 500;
    double initial_step = 0.05;      // per-coordinate step as a fraction of |x0_i|
    double zero_coord_step = 0.0025; // absolute step where x0_i == 0
};

struct SimplexResult {
    std::vector<double> x;
    double fval = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex. Fully deterministic: same objective, start
// and options give the same result.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          const std::vector<double>& start,
                          const SimplexOptions& options = {});

} // namespace rankdyn
