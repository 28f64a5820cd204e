#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "multinorm/detail/parallel.hpp"
#include "multinorm/errors.hpp"
#include "multinorm/geometry.hpp"
#include "multinorm/norms.hpp"
#include "multinorm/vec.hpp"

namespace multinorm {

// Ground-truth result of exhaustive minimization over a discretization.
// Shares only eval_norm and discretize with the main solver, so the two
// sides fail independently.
struct OracleReport {
    std::string objective_desc;
    Vector x;
    double resolution = 0.0;
    double eps = 0.0;
    std::vector<Vector> argmin_points;
    double min_value = 0.0;
    double lipschitz = 0.0;  // eval(obj, u) <= lipschitz * linf(u)

    enum class Agreement { unchecked, match, distance_mismatch, witness_mismatch };
    Agreement agreement = Agreement::unchecked;
    std::string details;
};

// C with eval(obj, u) <= C * linf(u): the supported norms are convex and
// coordinate-wise absolute, so their max over the unit cube sits at a corner.
inline double linf_lipschitz(const NormSpec& objective, std::size_t dim) {
    if (dim > 24) throw InvalidArgument("linf_lipschitz: dimension too large for corner scan");
    double best = 0.0;
    Vector corner(dim);
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
        for (std::size_t i = 0; i < dim; ++i) corner[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        best = std::max(best, eval_norm(objective, corner));
    }
    return best;
}

inline OracleReport grid_argmin(const CompactSet& K, const NormSpec& objective, const Vector& x,
                                double resolution, double eps) {
    require_finite(x, "grid_argmin x");
    if (x.size() != set_dim(K)) throw DimensionError("grid_argmin: dimension mismatch");
    if (!(eps > 0.0)) throw InvalidArgument("grid_argmin: eps must be positive");
    if (contains(K, x, 0.0))
        throw PreconditionError("grid_argmin: query point lies in the set");

    OracleReport rep;
    rep.objective_desc = describe(objective);
    rep.x = x;
    rep.resolution = resolution;
    rep.eps = eps;
    rep.lipschitz = linf_lipschitz(objective, x.size());

    auto net = discretize(K, resolution);
    std::vector<double> vals(net.size());
    detail::parallel_chunks(net.size(), 8192, [&](std::size_t, std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) vals[i] = eval_norm(objective, sub(x, net[i]));
    });

    double best = std::numeric_limits<double>::infinity();
    for (double v : vals) best = std::min(best, v);
    rep.min_value = best;
    for (std::size_t i = 0; i < net.size(); ++i)
        if (vals[i] <= best + eps) rep.argmin_points.push_back(net[i]);
    return rep;
}

// Fills in the agreement verdict: distances must line up within
// eps + lipschitz * resolution, witness sets within Hausdorff 2 * resolution.
inline OracleReport compare(double solver_distance, const std::vector<Vector>& solver_witnesses,
                            OracleReport report) {
    std::ostringstream details;
    double dist_tol = report.eps + report.lipschitz * report.resolution;
    if (std::abs(solver_distance - report.min_value) > dist_tol) {
        report.agreement = OracleReport::Agreement::distance_mismatch;
        details << "solver distance " << solver_distance << " vs oracle " << report.min_value
                << " exceeds tolerance " << dist_tol;
        report.details = details.str();
        return report;
    }
    if (solver_witnesses.empty()) {
        report.agreement = OracleReport::Agreement::witness_mismatch;
        report.details = "solver produced no witnesses";
        return report;
    }
    double h = hausdorff_linf(solver_witnesses, report.argmin_points);
    if (h > 2.0 * report.resolution) {
        report.agreement = OracleReport::Agreement::witness_mismatch;
        details << "witness sets differ: Hausdorff " << h << " > " << 2.0 * report.resolution;
        for (const auto& w : solver_witnesses) {
            if (linf_dist_to_set(w, report.argmin_points) > 2.0 * report.resolution) {
                details << "; solver witness (";
                for (std::size_t i = 0; i < w.size(); ++i) details << (i ? "," : "") << w[i];
                details << ") has no oracle point within " << 2.0 * report.resolution;
            }
        }
        for (const auto& g : report.argmin_points) {
            if (linf_dist_to_set(g, solver_witnesses) > 2.0 * report.resolution) {
                details << "; oracle point (";
                for (std::size_t i = 0; i < g.size(); ++i) details << (i ? "," : "") << g[i];
                details << ") not covered by solver witnesses";
                break;  // one representative is enough
            }
        }
        report.details = details.str();
        return report;
    }
    report.agreement = OracleReport::Agreement::match;
    details << "distance gap " << std::abs(solver_distance - report.min_value) << ", Hausdorff " << h;
    report.details = details.str();
    return report;
}

}  // namespace multinorm
