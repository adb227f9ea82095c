#include "rankdyn/rng.hpp"

#include <algorithm>

#include "rankdyn/error.hpp"

namespace rankdyn {

std::vector<std::uint32_t> multinomial(Rng& rng, std::span<const double> pmf, std::size_t draws) {
    if (pmf.empty()) throw Error(ErrorKind::InvalidArgument, "multinomial: empty pmf");
    std::vector<double> cdf(pmf.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        acc += pmf[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0; // guard against rounding at the top end

    std::vector<std::uint32_t> counts(pmf.size(), 0);
    for (std::size_t d = 0; d < draws; ++d) {
        double u = uniform01(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    return counts;
}

} // namespace rankdyn
