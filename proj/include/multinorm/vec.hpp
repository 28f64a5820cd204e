#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "multinorm/errors.hpp"

namespace multinorm {

// Points of R^d. Dimension is fixed per problem instance and checked at the
// operation boundaries, not encoded in the type.
using Vector = std::vector<double>;

inline bool all_finite(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

inline void require_finite(const Vector& v, const char* what) {
    if (v.empty()) throw InvalidArgument(std::string(what) + ": empty vector");
    if (!all_finite(v)) throw InvalidArgument(std::string(what) + ": non-finite coordinate");
}

inline void require_same_dim(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size())
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

inline Vector sub(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "sub");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector add(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "add");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector scale(const Vector& a, double t) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline Vector midpoint(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "midpoint");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = 0.5 * (a[i] + b[i]);
    return r;
}

// a + t*(b - a)
inline Vector lerp(const Vector& a, const Vector& b, double t) {
    require_same_dim(a, b, "lerp");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

inline double linf_dist(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "linf_dist");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double l2_norm(const Vector& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

inline bool lex_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// min over `pts` of the linf distance to `q`; pts must be nonempty.
inline double linf_dist_to_set(const Vector& q, const std::vector<Vector>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, linf_dist(q, p));
    return best;
}

// Symmetric Hausdorff distance between finite point sets under linf.
inline double hausdorff_linf(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, linf_dist_to_set(p, b));
    for (const auto& q : b) h = std::max(h, linf_dist_to_set(q, a));
    return h;
}

}  // namespace multinorm
