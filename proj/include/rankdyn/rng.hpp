#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rankdyn {

// All randomness in the library goes through these helpers. std::mt19937_64
// output is pinned by the standard; the standard *distributions* are not, so
// uniform/gaussian/multinomial are hand-rolled here to keep seeded results
// identical across toolchains and across serial vs parallel execution.

using Rng = std::mt19937_64;

// Stream for one replicate: seed XOR replicate index, so replicates can run
// in any order (or in parallel) and still reproduce bit-for-bit.
inline Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate_index) {
    return Rng(seed ^ replicate_index);
}

// Uniform on [0, 1), 53-bit resolution.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; no state carried between calls.
inline double gaussian(Rng& rng) {
    double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53; // (0, 1]
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// `draws` samples from the pmf by inverse-CDF lookup; returns per-category counts.
std::vector<std::uint32_t> multinomial(Rng& rng, std::span<const double> pmf, std::size_t draws);

} // namespace rankdyn
