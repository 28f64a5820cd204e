#pragma once

#include <cstdint>
#include <random>

#include "multinorm/vec.hpp"

namespace multinorm::detail {

// All stochastic pieces (sample polish starts, convexity probes, modulus
// search) derive their generators from (seed, stream) so that runs are
// reproducible regardless of evaluation order or thread count.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(stream ^ 0x9e3779b97f4a7c15ULL)};
    return std::mt19937_64(seq);
}

inline Vector gaussian_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    for (auto& x : v) x = g(rng);
    return v;
}

// Uniform in [lo, hi]^dim componentwise.
inline Vector uniform_box(std::mt19937_64& rng, const Vector& lo, const Vector& hi) {
    Vector v(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        std::uniform_real_distribution<double> u(lo[i], hi[i]);
        v[i] = u(rng);
    }
    return v;
}

}  // namespace multinorm::detail
