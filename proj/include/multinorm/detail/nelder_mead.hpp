#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "multinorm/vec.hpp"

namespace multinorm::detail {

struct NelderMeadResult {
    Vector x;
    double value = 0.0;
    std::size_t evals = 0;
};

// Bounded derivative-free minimizer used to polish grid incumbents. The
// objective is expected to return +inf outside its feasible region, so the
// simplex stays inside by rejection. Standard coefficients, shrink on stall.
inline NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f,
                                    const Vector& start, double step,
                                    std::size_t max_iter = 400, double diam_tol = 1e-11) {
    const std::size_t d = start.size();
    NelderMeadResult out;

    struct Pt {
        Vector x;
        double v;
    };
    std::vector<Pt> s;
    s.reserve(d + 1);
    s.push_back({start, f(start)});
    out.evals++;
    for (std::size_t i = 0; i < d; ++i) {
        Vector x = start;
        x[i] += step;
        double v = f(x);
        out.evals++;
        if (!std::isfinite(v)) {  // try the other direction before giving up
            x[i] = start[i] - step;
            v = f(x);
            out.evals++;
        }
        s.push_back({std::move(x), v});
    }

    auto by_value = [](const Pt& a, const Pt& b) { return a.v < b.v; };

    for (std::size_t it = 0; it < max_iter; ++it) {
        std::sort(s.begin(), s.end(), by_value);

        double diam = 0.0;
        for (std::size_t i = 1; i <= d; ++i) diam = std::max(diam, linf_dist(s[0].x, s[i].x));
        if (diam < diam_tol) break;
        if (!std::isfinite(s[d].v) && !std::isfinite(s[1].v)) break;  // degenerate start

        Vector centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) centroid[j] += s[i].x[j];
        }
        for (auto& c : centroid) c /= static_cast<double>(d);

        auto move = [&](double coef) {
            Vector x(d);
            for (std::size_t j = 0; j < d; ++j)
                x[j] = centroid[j] + coef * (s[d].x[j] - centroid[j]);
            return x;
        };

        Vector xr = move(-1.0);
        double vr = f(xr);
        out.evals++;
        if (vr < s[0].v) {
            Vector xe = move(-2.0);
            double ve = f(xe);
            out.evals++;
            if (ve < vr)
                s[d] = {std::move(xe), ve};
            else
                s[d] = {std::move(xr), vr};
            continue;
        }
        if (vr < s[d - 1].v) {
            s[d] = {std::move(xr), vr};
            continue;
        }
        Vector xc = move(vr < s[d].v ? -0.5 : 0.5);
        double vc = f(xc);
        out.evals++;
        if (vc < std::min(vr, s[d].v)) {
            s[d] = {std::move(xc), vc};
            continue;
        }
        for (std::size_t i = 1; i <= d; ++i) {  // shrink toward best
            for (std::size_t j = 0; j < d; ++j)
                s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
            s[i].v = f(s[i].x);
            out.evals++;
        }
    }

    std::sort(s.begin(), s.end(), by_value);
    out.x = s[0].x;
    out.value = s[0].v;
    return out;
}

}  // namespace multinorm::detail
