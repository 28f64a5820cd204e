#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "multinorm/detail/linprog.hpp"
#include "multinorm/detail/parallel.hpp"
#include "multinorm/detail/rng.hpp"
#include "multinorm/errors.hpp"
#include "multinorm/norms.hpp"
#include "multinorm/vec.hpp"

namespace multinorm {

// Cap on discretization size; the CLI can override it from the environment.
inline std::size_t& point_budget() {
    static std::size_t budget = 10'000'000;
    return budget;
}

// Compact subsets of R^d: a norm ball, the convex hull of finitely many
// vertices, or a finite point cloud. Closed + bounded by construction.
struct CompactSet {
    enum class Kind { Ball, Polytope, Cloud };

    Kind kind = Kind::Cloud;
    NormSpec norm;  // Ball only
    Vector center;  // Ball only
    double radius = 0.0;
    std::vector<Vector> points;  // Polytope vertices / Cloud members

    // 2-d polytopes carry their hull half-spaces so membership avoids an LP
    // per query; degenerate hulls (collinear vertices) fall back to the LP.
    std::vector<Vector> hull_normals;
    std::vector<double> hull_offsets;
    bool planar_hull = false;
};

inline std::size_t set_dim(const CompactSet& K) {
    return K.kind == CompactSet::Kind::Ball ? K.center.size() : K.points[0].size();
}

namespace detail {

// Andrew's monotone chain; returns CCW hull or empty when all input is
// collinear (caller then keeps the LP path).
inline std::vector<Vector> convex_hull_2d(std::vector<Vector> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return {};
    auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vector> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() < 3) return {};
    return h;
}

}  // namespace detail

inline CompactSet make_ball(NormSpec norm, Vector center, double radius) {
    if (!is_norm(norm)) throw InvalidArgument("make_ball: ball norm must be a true norm");
    require_finite(center, "make_ball center");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidArgument("make_ball: radius must be positive");
    eval_norm(norm, center);  // surfaces weight/dimension mismatches now
    CompactSet K;
    K.kind = CompactSet::Kind::Ball;
    K.norm = std::move(norm);
    K.center = std::move(center);
    K.radius = radius;
    return K;
}

inline CompactSet make_polytope(std::vector<Vector> vertices) {
    if (vertices.empty()) throw InvalidArgument("make_polytope: no vertices");
    for (const auto& v : vertices) {
        require_finite(v, "make_polytope vertex");
        require_same_dim(v, vertices[0], "make_polytope");
    }
    std::sort(vertices.begin(), vertices.end(), lex_less);
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    CompactSet K;
    K.kind = CompactSet::Kind::Polytope;
    K.points = std::move(vertices);
    if (K.points[0].size() == 2) {
        auto hull = detail::convex_hull_2d(K.points);
        if (!hull.empty()) {
            K.planar_hull = true;
            for (std::size_t i = 0; i < hull.size(); ++i) {
                const Vector& a = hull[i];
                const Vector& b = hull[(i + 1) % hull.size()];
                Vector n{b[1] - a[1], -(b[0] - a[0])};  // outward for CCW
                double len = l2_norm(n);
                n[0] /= len;
                n[1] /= len;
                K.hull_normals.push_back(n);
                K.hull_offsets.push_back(n[0] * a[0] + n[1] * a[1]);
            }
        }
    }
    return K;
}

inline CompactSet make_cloud(std::vector<Vector> points) {
    if (points.empty()) throw InvalidArgument("make_cloud: no points");
    for (const auto& v : points) {
        require_finite(v, "make_cloud point");
        require_same_dim(v, points[0], "make_cloud");
    }
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    CompactSet K;
    K.kind = CompactSet::Kind::Cloud;
    K.points = std::move(points);
    return K;
}

// Is v in K, up to linf slack tol?
inline bool contains(const CompactSet& K, const Vector& v, double tol) {
    if (v.size() != set_dim(K)) throw DimensionError("contains: dimension mismatch");
    if (tol < 0.0) throw InvalidArgument("contains: negative tolerance");
    switch (K.kind) {
        case CompactSet::Kind::Ball: {
            // moving v by linf tol changes the norm by at most tol * ||.||(1,..,1)
            // componentwise bound; the plain radius+tol form matches the contract
            return eval_norm(K.norm, sub(v, K.center)) <= K.radius + tol;
        }
        case CompactSet::Kind::Polytope: {
            if (K.planar_hull) {
                for (std::size_t i = 0; i < K.hull_normals.size(); ++i) {
                    const Vector& n = K.hull_normals[i];
                    double slack = tol * (std::abs(n[0]) + std::abs(n[1])) + 1e-12;
                    if (n[0] * v[0] + n[1] * v[1] > K.hull_offsets[i] + slack) return false;
                }
                return true;
            }
            return detail::in_convex_hull(v, K.points, tol);
        }
        case CompactSet::Kind::Cloud: {
            return linf_dist_to_set(v, K.points) <= tol;
        }
    }
    return false;
}

// Axis-aligned bounding box. Exact for the supported norms: they all depend
// only on coordinate magnitudes and are componentwise monotone, so the ball's
// extent along axis i is radius / ||e_i||.
inline std::pair<Vector, Vector> bounding_box(const CompactSet& K) {
    std::size_t d = set_dim(K);
    Vector lo(d), hi(d);
    if (K.kind == CompactSet::Kind::Ball) {
        for (std::size_t i = 0; i < d; ++i) {
            Vector e(d, 0.0);
            e[i] = 1.0;
            double ext = K.radius / eval_norm(K.norm, e);
            lo[i] = K.center[i] - ext;
            hi[i] = K.center[i] + ext;
        }
    } else {
        lo = hi = K.points[0];
        for (const auto& p : K.points) {
            for (std::size_t i = 0; i < d; ++i) {
                lo[i] = std::min(lo[i], p[i]);
                hi[i] = std::max(hi[i], p[i]);
            }
        }
    }
    return {lo, hi};
}

inline double set_diameter(const CompactSet& K) {
    auto [lo, hi] = bounding_box(K);
    double m = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) m = std::max(m, hi[i] - lo[i]);
    return m;
}

// A point guaranteed to lie in K, used as the bisection target when pulling
// infeasible iterates back inside.
inline Vector interior_anchor(const CompactSet& K) {
    if (K.kind == CompactSet::Kind::Ball) return K.center;
    Vector c(set_dim(K), 0.0);
    for (const auto& p : K.points) c = add(c, p);
    return scale(c, 1.0 / static_cast<double>(K.points.size()));
}

// Pulls y into K: exact radial scaling for balls, bisection toward the
// anchor otherwise. Clouds snap to the nearest member.
inline Vector clip_to_set(const CompactSet& K, const Vector& y) {
    switch (K.kind) {
        case CompactSet::Kind::Ball: {
            Vector u = sub(y, K.center);
            double n = eval_norm(K.norm, u);
            if (n <= K.radius) return y;
            return add(K.center, scale(u, K.radius / n));
        }
        case CompactSet::Kind::Polytope: {
            if (contains(K, y, 1e-12)) return y;
            Vector a = interior_anchor(K);
            double lo = 0.0, hi = 1.0;  // lerp(a, y, lo) feasible
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if (contains(K, lerp(a, y, mid), 1e-12))
                    lo = mid;
                else
                    hi = mid;
            }
            return lerp(a, y, lo);
        }
        case CompactSet::Kind::Cloud: {
            const Vector* best = &K.points[0];
            double bd = std::numeric_limits<double>::infinity();
            for (const auto& p : K.points) {
                double dd = linf_dist(y, p);
                if (dd < bd) {
                    bd = dd;
                    best = &p;
                }
            }
            return *best;
        }
    }
    return y;
}

namespace detail {

inline void check_budget(double estimate, const char* who) {
    if (estimate > static_cast<double>(point_budget()))
        throw BudgetError(std::string(who) + ": discretization needs about " +
                          std::to_string(static_cast<long long>(estimate)) +
                          " points, budget is " + std::to_string(point_budget()));
}

}  // namespace detail

// Finite h-net of K: every point of K is within linf `resolution` of some
// net point and every net point lies in K (tol 1e-9). Lattice spacing is
// resolution/2 with a boundary layer on top, because nearest points from
// outside live on the boundary and a bare interior grid misses it.
inline std::vector<Vector> discretize(const CompactSet& K, double resolution) {
    if (!(resolution > 0.0)) throw InvalidArgument("discretize: resolution must be positive");
    if (K.kind == CompactSet::Kind::Cloud) return K.points;

    const std::size_t d = set_dim(K);
    const double s = resolution / 2.0;
    auto [lo, hi] = bounding_box(K);

    std::vector<std::size_t> counts(d);
    double total = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        counts[i] = static_cast<std::size_t>(std::floor((hi[i] - lo[i]) / s + 1e-9)) + 1;
        total *= static_cast<double>(counts[i]);
    }
    detail::check_budget(total, "discretize");
    const auto n_lattice = static_cast<std::size_t>(total);

    const bool ball = K.kind == CompactSet::Kind::Ball;
    const std::size_t chunk = 8192;
    const std::size_t nchunks = (n_lattice + chunk - 1) / chunk;
    std::vector<std::vector<Vector>> slabs(nchunks);

    detail::parallel_chunks(n_lattice, chunk, [&](std::size_t c, std::size_t a, std::size_t b) {
        auto& out = slabs[c];
        Vector g(d);
        for (std::size_t flat = a; flat < b; ++flat) {
            std::size_t rem = flat;
            for (std::size_t i = d; i-- > 0;) {
                g[i] = lo[i] + static_cast<double>(rem % counts[i]) * s;
                rem /= counts[i];
            }
            if (ball) {
                Vector u = sub(g, K.center);
                double n = eval_norm(K.norm, u);
                if (n <= K.radius + 1e-9) out.push_back(g);
                if (n > 1e-12) {
                    // radial boundary sample in the direction of g
                    Vector bpt = add(K.center, scale(u, K.radius / n));
                    if (contains(K, bpt, 1e-9)) out.push_back(std::move(bpt));
                }
            } else if (contains(K, g, 1e-9)) {
                out.push_back(g);
            }
        }
    });

    std::vector<Vector> net;
    for (auto& slab : slabs)
        for (auto& p : slab) net.push_back(std::move(p));

    if (K.kind == CompactSet::Kind::Polytope) {
        const auto& V = K.points;
        for (const auto& v : V) net.push_back(v);
        double seg_est = 0.0;
        for (std::size_t i = 0; i < V.size(); ++i)
            for (std::size_t j = i + 1; j < V.size(); ++j)
                seg_est += std::floor(linf_dist(V[i], V[j]) / s) + 1.0;
        detail::check_budget(static_cast<double>(net.size()) + seg_est, "discretize");
        for (std::size_t i = 0; i < V.size(); ++i) {
            for (std::size_t j = i + 1; j < V.size(); ++j) {
                auto steps = static_cast<std::size_t>(std::floor(linf_dist(V[i], V[j]) / s)) + 1;
                for (std::size_t k = 1; k < steps; ++k)
                    net.push_back(lerp(V[i], V[j], static_cast<double>(k) / static_cast<double>(steps)));
            }
        }
        if (d >= 3) {
            // 2-faces need area samples; barycentric grids over vertex triples
            // cover every triangulated face
            double tri_est = 0.0;
            std::vector<std::array<std::size_t, 3>> triples;
            for (std::size_t i = 0; i < V.size(); ++i)
                for (std::size_t j = i + 1; j < V.size(); ++j)
                    for (std::size_t k = j + 1; k < V.size(); ++k) {
                        double m = std::max({linf_dist(V[i], V[j]), linf_dist(V[i], V[k]),
                                             linf_dist(V[j], V[k])});
                        auto steps = static_cast<std::size_t>(std::floor(m / s)) + 1;
                        tri_est += 0.5 * static_cast<double>(steps) * static_cast<double>(steps);
                        triples.push_back({i, j, k});
                    }
            detail::check_budget(static_cast<double>(net.size()) + tri_est, "discretize");
            for (auto [i, j, k] : triples) {
                double m = std::max({linf_dist(V[i], V[j]), linf_dist(V[i], V[k]),
                                     linf_dist(V[j], V[k])});
                auto steps = static_cast<std::size_t>(std::floor(m / s)) + 1;
                for (std::size_t a = 0; a <= steps; ++a) {
                    for (std::size_t b = 0; a + b <= steps; ++b) {
                        double t1 = static_cast<double>(a) / static_cast<double>(steps);
                        double t2 = static_cast<double>(b) / static_cast<double>(steps);
                        Vector p(d);
                        for (std::size_t q = 0; q < d; ++q)
                            p[q] = V[i][q] + t1 * (V[j][q] - V[i][q]) + t2 * (V[k][q] - V[i][q]);
                        if (contains(K, p, 1e-9)) net.push_back(std::move(p));
                    }
                }
            }
        }
    }

    detail::check_budget(static_cast<double>(net.size()), "discretize");
    std::sort(net.begin(), net.end(), lex_less);
    net.erase(std::unique(net.begin(), net.end()), net.end());
    return net;
}

// Evidence that K is convex: balls and hulls are convex by definition;
// clouds get midpoint sampling with an exact counterexample on failure.
struct ConvexityReport {
    bool convex_evidence = true;
    bool analytic = false;  // true when no sampling was needed
    Vector a, b, midpoint;  // counterexample when convex_evidence is false
};

inline ConvexityReport convexity_probe(const CompactSet& K, int trials, std::uint64_t seed = 42) {
    if (trials < 1) throw InvalidArgument("convexity_probe: trials must be >= 1");
    ConvexityReport rep;
    if (K.kind != CompactSet::Kind::Cloud) {
        rep.analytic = true;
        return rep;
    }
    if (K.points.size() == 1) {
        rep.analytic = true;
        return rep;
    }
    auto rng = detail::make_rng(seed, 77);
    std::uniform_int_distribution<std::size_t> pick(0, K.points.size() - 1);
    for (int t = 0; t < trials; ++t) {
        const Vector& a = K.points[pick(rng)];
        const Vector& b = K.points[pick(rng)];
        Vector mid = midpoint(a, b);
        if (!contains(K, mid, 1e-7)) {
            rep.convex_evidence = false;
            rep.a = a;
            rep.b = b;
            rep.midpoint = std::move(mid);
            return rep;
        }
    }
    return rep;
}

}  // namespace multinorm
