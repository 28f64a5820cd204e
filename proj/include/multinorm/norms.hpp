#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "multinorm/detail/rng.hpp"
#include "multinorm/errors.hpp"
#include "multinorm/vec.hpp"

namespace multinorm {

// A closed description of one norm (or seminorm) on R^d. Composite kinds own
// their parts; the whole tree is immutable after construction.
struct NormSpec {
    enum class Kind { Lp, WeightedLp, Trunc, Sum, MaxPrefix };

    Kind kind = Kind::Lp;
    bool p_inf = false;
    double p = 2.0;                 // ignored when p_inf
    long long p_num = 0, p_den = 0; // set when p was given as an exact ratio
    std::vector<double> weights;    // WeightedLp only
    int trunc_n = 0;                // Trunc only
    std::vector<NormSpec> parts;    // Sum / MaxPrefix

    bool operator==(const NormSpec& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::Lp:
                return p_inf == o.p_inf && (p_inf || p == o.p);
            case Kind::WeightedLp:
                return p_inf == o.p_inf && (p_inf || p == o.p) && weights == o.weights;
            case Kind::Trunc:
                return trunc_n == o.trunc_n;
            case Kind::Sum:
            case Kind::MaxPrefix:
                return parts == o.parts;
        }
        return false;
    }
};

// True norms vanish only at 0; Trunc alone does not.
inline bool is_norm(const NormSpec& s) {
    switch (s.kind) {
        case NormSpec::Kind::Lp:
        case NormSpec::Kind::WeightedLp:
            return true;
        case NormSpec::Kind::Trunc:
            return false;
        case NormSpec::Kind::Sum:
        case NormSpec::Kind::MaxPrefix:
            return std::any_of(s.parts.begin(), s.parts.end(),
                               [](const NormSpec& q) { return is_norm(q); });
    }
    return false;
}

inline NormSpec lp(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("lp: p must be in [1, inf)");
    NormSpec s;
    s.kind = NormSpec::Kind::Lp;
    s.p = p;
    return s;
}

inline NormSpec lp_inf() {
    NormSpec s;
    s.kind = NormSpec::Kind::Lp;
    s.p_inf = true;
    return s;
}

// p given as an exact ratio (the 2+1/n exponents); value evaluated once.
inline NormSpec lp_ratio(long long num, long long den) {
    if (den <= 0 || num < den) throw InvalidArgument("lp_ratio: need p = num/den >= 1");
    NormSpec s;
    s.kind = NormSpec::Kind::Lp;
    s.p_num = num;
    s.p_den = den;
    s.p = static_cast<double>(num) / static_cast<double>(den);
    return s;
}

inline NormSpec weighted_lp(double p, std::vector<double> weights) {
    if (!(p >= 1.0) && !std::isfinite(p)) throw InvalidArgument("weighted_lp: bad p");
    if (weights.empty()) throw InvalidArgument("weighted_lp: empty weights");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("weighted_lp: weights must be positive");
    NormSpec s;
    s.kind = NormSpec::Kind::WeightedLp;
    if (std::isinf(p))
        s.p_inf = true;
    else
        s.p = p;
    s.weights = std::move(weights);
    return s;
}

inline NormSpec trunc_seminorm(int n) {
    if (n < 1) throw InvalidArgument("trunc_seminorm: n must be >= 1");
    NormSpec s;
    s.kind = NormSpec::Kind::Trunc;
    s.trunc_n = n;
    return s;
}

// A bare Trunc part is allowed only inside Sum and only next to a real norm.
inline void validate_parts(const std::vector<NormSpec>& parts, bool allow_trunc, const char* who) {
    if (parts.empty()) throw InvalidArgument(std::string(who) + ": empty part list");
    bool any_norm = false;
    for (const auto& q : parts) {
        if (q.kind == NormSpec::Kind::Trunc && !allow_trunc)
            throw InvalidArgument(std::string(who) + ": bare seminorm part not allowed here");
        if (is_norm(q)) any_norm = true;
    }
    if (!any_norm) throw InvalidArgument(std::string(who) + ": needs at least one true norm part");
}

inline NormSpec sum_norm(std::vector<NormSpec> parts) {
    validate_parts(parts, /*allow_trunc=*/true, "sum_norm");
    NormSpec s;
    s.kind = NormSpec::Kind::Sum;
    s.parts = std::move(parts);
    return s;
}

inline NormSpec max_prefix(std::vector<NormSpec> parts) {
    validate_parts(parts, /*allow_trunc=*/false, "max_prefix");
    NormSpec s;
    s.kind = NormSpec::Kind::MaxPrefix;
    s.parts = std::move(parts);
    return s;
}

inline double eval_norm(const NormSpec& s, const Vector& v) {
    switch (s.kind) {
        case NormSpec::Kind::Lp: {
            if (s.p_inf) {
                double m = 0.0;
                for (double x : v) m = std::max(m, std::abs(x));
                return m;
            }
            if (s.p == 1.0) {
                double acc = 0.0;
                for (double x : v) acc += std::abs(x);
                return acc;
            }
            if (s.p == 2.0) {
                double acc = 0.0;
                for (double x : v) acc += x * x;
                return std::sqrt(acc);
            }
            double acc = 0.0;
            for (double x : v) acc += std::pow(std::abs(x), s.p);
            return std::pow(acc, 1.0 / s.p);
        }
        case NormSpec::Kind::WeightedLp: {
            if (v.size() != s.weights.size())
                throw DimensionError("eval_norm: weights/vector dimension mismatch");
            if (s.p_inf) {
                double m = 0.0;
                for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, s.weights[i] * std::abs(v[i]));
                return m;
            }
            double acc = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) acc += s.weights[i] * std::pow(std::abs(v[i]), s.p);
            return std::pow(acc, 1.0 / s.p);
        }
        case NormSpec::Kind::Trunc: {
            double acc = 0.0;
            std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(s.trunc_n), v.size());
            for (std::size_t i = 0; i < n; ++i) acc += std::abs(v[i]);
            return acc;
        }
        case NormSpec::Kind::Sum: {
            double acc = 0.0;
            for (const auto& q : s.parts) acc += eval_norm(q, v);
            return acc;
        }
        case NormSpec::Kind::MaxPrefix: {
            double m = 0.0;
            for (const auto& q : s.parts) m = std::max(m, eval_norm(q, v));
            return m;
        }
    }
    throw Error("eval_norm: unreachable");
}

inline std::string describe(const NormSpec& s) {
    std::ostringstream os;
    switch (s.kind) {
        case NormSpec::Kind::Lp:
            if (s.p_inf)
                os << "linf";
            else if (s.p_den > 0 && s.p_num % s.p_den != 0)
                os << "l" << s.p_num << "/" << s.p_den;
            else
                os << "l" << s.p;
            break;
        case NormSpec::Kind::WeightedLp:
            os << "wl" << (s.p_inf ? std::string("inf") : std::to_string(s.p)) << "[d=" << s.weights.size() << "]";
            break;
        case NormSpec::Kind::Trunc:
            os << "trunc(" << s.trunc_n << ")";
            break;
        case NormSpec::Kind::Sum:
        case NormSpec::Kind::MaxPrefix:
            os << (s.kind == NormSpec::Kind::Sum ? "sum(" : "maxprefix(");
            for (std::size_t i = 0; i < s.parts.size(); ++i) {
                if (i) os << ", ";
                os << describe(s.parts[i]);
            }
            os << ")";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct NormFamily {
    std::vector<NormSpec> specs;
    bool increasing_certified = false;

    std::size_t size() const { return specs.size(); }
};

inline NormFamily family_of(std::vector<NormSpec> specs) {
    if (specs.empty()) throw InvalidArgument("family_of: empty family");
    for (const auto& s : specs)
        if (!is_norm(s)) throw InvalidArgument("family_of: every member must be a true norm");
    NormFamily f;
    f.specs = std::move(specs);
    return f;
}

struct IncreasingCheck {
    bool ok = true;
    std::size_t level = 0;  // first failing adjacent pair (level, level+1)
    Vector witness;         // point with eval(k) > eval(k+1) + tol
};

// Exact structural case: each deeper spec is a MaxPrefix extending the
// previous one (or containing it whole), which is >= pointwise by definition.
inline bool maxprefix_chain_step(const NormSpec& a, const NormSpec& b) {
    if (b.kind != NormSpec::Kind::MaxPrefix) return false;
    if (a.kind == NormSpec::Kind::MaxPrefix) {
        if (a.parts.size() > b.parts.size()) return false;
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            if (!(a.parts[i] == b.parts[i])) return false;
        return true;
    }
    return std::any_of(b.parts.begin(), b.parts.end(), [&](const NormSpec& q) { return q == a; });
}

// Randomized + structural verification that specs[k] <= specs[k+1] pointwise.
// Sampling cannot prove the property; it can only fail to refute it, and the
// returned witness makes refutations exact.
inline IncreasingCheck check_increasing(const NormFamily& fam, std::size_t dim,
                                        std::uint64_t seed = 42, std::size_t samples = 10000,
                                        double tol = 1e-9) {
    IncreasingCheck out;
    for (std::size_t k = 0; k + 1 < fam.specs.size(); ++k) {
        if (maxprefix_chain_step(fam.specs[k], fam.specs[k + 1])) continue;
        auto rng = detail::make_rng(seed, 1000 + k);
        for (std::size_t t = 0; t < samples; ++t) {
            Vector v = detail::gaussian_vector(rng, dim);
            double n2 = l2_norm(v);
            if (n2 < 1e-12) continue;
            for (auto& c : v) c /= n2;
            if (eval_norm(fam.specs[k], v) > eval_norm(fam.specs[k + 1], v) + tol) {
                out.ok = false;
                out.level = k;
                out.witness = std::move(v);
                return out;
            }
        }
    }
    return out;
}

inline NormFamily certify_increasing(NormFamily fam, std::size_t dim, std::uint64_t seed = 42,
                                     std::size_t samples = 10000, double tol = 1e-9) {
    fam.increasing_certified = check_increasing(fam, dim, seed, samples, tol).ok;
    return fam;
}

// |x|_k = max_{i<=k} ||x||_i. Pointwise increasing by construction; level 0
// is kept verbatim (a singleton max adds nothing).
inline NormFamily make_increasing(const NormFamily& fam) {
    if (fam.specs.empty()) throw InvalidArgument("make_increasing: empty family");
    NormFamily out;
    out.specs.reserve(fam.specs.size());
    out.specs.push_back(fam.specs.front());
    for (std::size_t k = 1; k < fam.specs.size(); ++k) {
        std::vector<NormSpec> prefix(fam.specs.begin(), fam.specs.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        out.specs.push_back(max_prefix(std::move(prefix)));
    }
    out.increasing_certified = true;
    return out;
}

// d(x,y) = sum_i 2^{-i} ||x-y||_i / (1 + ||x-y||_i), i = 1..N.
inline double frechet_metric(const NormFamily& fam, const Vector& x, const Vector& y) {
    if (!fam.increasing_certified)
        throw PreconditionError("frechet_metric: family not certified increasing");
    Vector d = sub(x, y);
    double acc = 0.0;
    double w = 0.5;
    for (const auto& s : fam.specs) {
        double n = eval_norm(s, d);
        acc += w * n / (1.0 + n);
        w *= 0.5;
    }
    return acc;
}

enum class L2PlusVariant { plain, plus_sup, plus_trunc, single_uc };

// Families built on exponents p_n = 2 + 1/n, n = 1..N (so the exponents fall
// and the norms rise on R^d). plain/plus_sup/plus_trunc are routed through
// make_increasing; single_uc keeps its stated shape — augmenting every level
// except n0 breaks the exact max-prefix form, so that variant is certified by
// sampling instead (which succeeds for n0 = 1, the shape used in practice).
inline NormFamily build_l2plus_family(int N, int d, L2PlusVariant variant, int n0 = 1) {
    if (N < 1 || d < 1) throw InvalidArgument("build_l2plus_family: need N >= 1 and d >= 1");
    if (variant == L2PlusVariant::single_uc && (n0 < 1 || n0 > N))
        throw InvalidArgument("build_l2plus_family: single_uc needs 1 <= n0 <= N");

    std::vector<NormSpec> base;
    base.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        NormSpec core = lp_ratio(2LL * n + 1, n);
        switch (variant) {
            case L2PlusVariant::plain:
                base.push_back(core);
                break;
            case L2PlusVariant::plus_sup:
                base.push_back(sum_norm({core, lp_inf()}));
                break;
            case L2PlusVariant::plus_trunc:
                base.push_back(sum_norm({core, trunc_seminorm(n)}));
                break;
            case L2PlusVariant::single_uc:
                if (n == n0)
                    base.push_back(core);
                else
                    base.push_back(sum_norm({core, trunc_seminorm(n)}));
                break;
        }
    }
    NormFamily fam;
    fam.specs = std::move(base);
    if (variant == L2PlusVariant::single_uc)
        return certify_increasing(std::move(fam), static_cast<std::size_t>(d));
    return make_increasing(fam);
}

}  // namespace multinorm
