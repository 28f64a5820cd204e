#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "multinorm/detail/parallel.hpp"
#include "multinorm/detail/rng.hpp"
#include "multinorm/errors.hpp"
#include "multinorm/norms.hpp"
#include "multinorm/vec.hpp"

namespace multinorm {

// Sampled lower-envelope estimate of the modulus of convexity delta(eps).
// delta_hat is 1 minus a max over finitely many pairs, and widening the
// search can only raise that max, so delta_hat OVER-estimates the true
// delta: treat "small" as meaningful, "large" as evidence only. Witness
// pairs, by contrast, prove upper bounds on delta exactly.
struct ModulusEstimate {
    NormSpec norm;
    std::size_t dim = 0;
    std::vector<double> eps_grid;  // ascending
    std::vector<double> delta_hat;
    std::vector<std::pair<Vector, Vector>> witness_pairs;
    std::vector<char> sampled;  // per-eps: pair generation stayed within budget
    std::vector<std::size_t> monotonicity_flags;  // grid indices where delta_hat dips
    std::size_t samples = 0;
};

enum class UcVerdict { uc_evidence, not_uc_evidence, inconclusive };

inline const char* to_string(UcVerdict v) {
    switch (v) {
        case UcVerdict::uc_evidence: return "uc_evidence";
        case UcVerdict::not_uc_evidence: return "not_uc_evidence";
        case UcVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline std::vector<double> default_modulus_grid() { return {0.25, 0.5, 1.0, 1.5, 1.9, 2.0}; }

// A drop of delta_hat between consecutive grid points beyond this is flagged:
// the true modulus is nondecreasing in eps.
inline constexpr double kModulusNoiseTol = 1e-3;

namespace detail {

inline constexpr std::size_t kModulusBatch = 1000;

inline Vector unit_sample(const NormSpec& norm, std::size_t dim, std::mt19937_64& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        Vector g = gaussian_vector(rng, dim);
        double n = eval_norm(norm, g);
        if (n > 1e-12) {
            for (auto& c : g) c /= n;
            return g;
        }
    }
    throw SolverAccuracyError("unit sphere sampling kept drawing norm-zero vectors");
}

// Move y toward -x along the sphere until the separation constraint holds.
// ||x - y(1)|| = 2||x|| = 2 >= eps, so a feasible endpoint always exists; we
// bisect to the smallest deformation and return the feasible side, which
// keeps the stored pair a genuine certificate.
inline Vector repair_pair(const NormSpec& norm, const Vector& x, Vector y, double eps) {
    auto at = [&](double t) {
        Vector z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = (1.0 - t) * y[i] - t * x[i];
        double n = eval_norm(norm, z);
        for (auto& c : z) c /= n;
        return z;
    };
    if (eval_norm(norm, sub(x, y)) >= eps) return y;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (eval_norm(norm, sub(x, at(mid))) >= eps)
            hi = mid;
        else
            lo = mid;
    }
    return at(hi);
}

struct ModulusSlot {
    double mid = -1.0;  // midpoint norm; -1 marks an empty slot
    Vector x, y;
};

}  // namespace detail

// Estimate delta(eps) = 1 - sup{ ||(x+y)/2|| : ||x||=||y||=1, ||x-y|| >= eps }
// per grid point by seeded pair sampling plus per-batch hill-climb polish.
// Batches have a fixed seed schedule, so results are independent of thread
// count, and prefixes of the batch sequence are shared between runs with
// fewer samples: enlarging `samples` by whole batches can only raise the max.
inline ModulusEstimate modulus_of_convexity(const NormSpec& norm, std::size_t dim,
                                            std::vector<double> eps_grid, std::size_t samples,
                                            std::uint64_t seed) {
    if (!is_norm(norm))
        throw InvalidArgument("modulus of convexity requires a true norm, not a seminorm");
    if (dim == 0) throw InvalidArgument("modulus of convexity: dim must be at least 1");
    if (eps_grid.empty()) throw InvalidArgument("modulus of convexity: empty eps grid");
    for (double e : eps_grid)
        if (!(e > 0.0) || e > 2.0)
            throw InvalidArgument("modulus of convexity: every eps must lie in (0, 2]");
    if (samples < 1) throw InvalidArgument("modulus of convexity: samples must be at least 1");
    std::sort(eps_grid.begin(), eps_grid.end());

    ModulusEstimate est;
    est.norm = norm;
    est.dim = dim;
    est.eps_grid = eps_grid;
    est.samples = samples;

    const std::size_t batches = (samples + detail::kModulusBatch - 1) / detail::kModulusBatch;

    for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
        const double eps = eps_grid[ei];
        std::vector<detail::ModulusSlot> slots(batches);

        detail::parallel_chunks(batches, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t b = lo; b < hi; ++b) {
                auto rng = detail::make_rng(seed, (static_cast<std::uint64_t>(ei) << 32) | b);
                const std::size_t count =
                    std::min(detail::kModulusBatch, samples - b * detail::kModulusBatch);
                detail::ModulusSlot& slot = slots[b];
                for (std::size_t s = 0; s < count; ++s) {
                    Vector x = detail::unit_sample(norm, dim, rng);
                    Vector y = detail::repair_pair(norm, x,
                                                   detail::unit_sample(norm, dim, rng), eps);
                    double m = eval_norm(norm, scale(add(x, y), 0.5));
                    if (m > slot.mid) {
                        slot.mid = m;
                        slot.x = std::move(x);
                        slot.y = std::move(y);
                    }
                }
                if (slot.mid < 0.0) continue;
                // local polish: shrinking random perturbations, keep improvements
                auto prng = detail::make_rng(seed, (static_cast<std::uint64_t>(ei) << 32) | b |
                                               (1ULL << 63));
                double step = 0.1;
                for (int it = 0; it < 100; ++it, step *= 0.95) {
                    Vector px = add(slot.x, scale(detail::gaussian_vector(prng, dim), step));
                    Vector py = add(slot.y, scale(detail::gaussian_vector(prng, dim), step));
                    double nx = eval_norm(norm, px), ny = eval_norm(norm, py);
                    if (nx <= 1e-12 || ny <= 1e-12) continue;
                    for (auto& c : px) c /= nx;
                    for (auto& c : py) c /= ny;
                    py = detail::repair_pair(norm, px, std::move(py), eps);
                    double m = eval_norm(norm, scale(add(px, py), 0.5));
                    if (m > slot.mid) {
                        slot.mid = m;
                        slot.x = std::move(px);
                        slot.y = std::move(py);
                    }
                }
            }
        });

        detail::ModulusSlot best;
        for (auto& s : slots) {
            if (s.mid < 0.0) continue;
            if (s.mid > best.mid ||
                (s.mid == best.mid && (best.x.empty() || lex_less(s.x, best.x))))
                best = std::move(s);
        }
        if (best.mid < 0.0) {
            est.sampled.push_back(0);
            est.delta_hat.push_back(0.0);
            est.witness_pairs.emplace_back();
            continue;
        }
        est.sampled.push_back(1);
        est.delta_hat.push_back(std::max(0.0, 1.0 - best.mid));
        est.witness_pairs.emplace_back(std::move(best.x), std::move(best.y));
    }

    for (std::size_t i = 1; i < est.delta_hat.size(); ++i)
        if (est.sampled[i] && est.sampled[i - 1] &&
            est.delta_hat[i] < est.delta_hat[i - 1] - kModulusNoiseTol)
            est.monotonicity_flags.push_back(i);

    return est;
}

inline ModulusEstimate modulus_of_convexity(const NormSpec& norm, std::size_t dim,
                                            std::size_t samples = 100000,
                                            std::uint64_t seed = 42) {
    return modulus_of_convexity(norm, dim, default_modulus_grid(), samples, seed);
}

namespace detail {

// a stored pair proves delta(eps) <= 1 - ||midpoint|| only if it genuinely
// satisfies the definition's constraints; re-check before certifying
inline bool witness_is_genuine(const ModulusEstimate& est, std::size_t i) {
    const auto& [x, y] = est.witness_pairs[i];
    if (x.size() != est.dim || y.size() != est.dim) return false;
    if (std::abs(eval_norm(est.norm, x) - 1.0) > 1e-9) return false;
    if (std::abs(eval_norm(est.norm, y) - 1.0) > 1e-9) return false;
    return eval_norm(est.norm, sub(x, y)) >= est.eps_grid[i] - 1e-9;
}

}  // namespace detail

// Positive verdicts are evidence (sampling cannot prove a universally
// quantified statement); negative verdicts rest on a concrete witness pair
// and are re-verified here rather than trusted from the sampler.
inline UcVerdict uc_verdict(const ModulusEstimate& est, double threshold) {
    if (!(threshold > 0.0)) throw InvalidArgument("uc_verdict: threshold must be positive");
    if (est.delta_hat.size() != est.eps_grid.size() ||
        est.witness_pairs.size() != est.eps_grid.size() ||
        est.sampled.size() != est.eps_grid.size())
        throw InvalidArgument("uc_verdict: estimate fields disagree about the grid size");

    for (std::size_t i = 0; i < est.eps_grid.size(); ++i)
        if (est.eps_grid[i] >= 0.1 && est.sampled[i] &&
            est.delta_hat[i] <= threshold / 10.0 && detail::witness_is_genuine(est, i))
            return UcVerdict::not_uc_evidence;

    bool all_pass = false;
    for (std::size_t i = 0; i < est.eps_grid.size(); ++i) {
        if (est.eps_grid[i] < 0.1) continue;
        if (!est.sampled[i] || est.delta_hat[i] < threshold) return UcVerdict::inconclusive;
        all_pass = true;
    }
    return all_pass ? UcVerdict::uc_evidence : UcVerdict::inconclusive;
}

}  // namespace multinorm
