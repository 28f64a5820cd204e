#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "multinorm/vec.hpp"

namespace multinorm::detail {

// Deterministic compass/diagonal pattern search: tries every nonzero sign
// pattern scaled by the current step, halving on failure. Cheap in d <= 4 and
// robust on the kinked objectives (l1/linf sums) where a simplex can stall.
inline std::pair<Vector, double> compass_search(const std::function<double(const Vector&)>& f,
                                                Vector x, double value, double step,
                                                double min_step = 1e-10) {
    const std::size_t d = x.size();
    std::vector<Vector> dirs;
    std::vector<int> signs(d, -1);
    for (;;) {
        Vector dir(d);
        bool nonzero = false;
        for (std::size_t i = 0; i < d; ++i) {
            dir[i] = static_cast<double>(signs[i]);
            if (signs[i] != 0) nonzero = true;
        }
        if (nonzero) dirs.push_back(dir);
        std::size_t i = 0;
        while (i < d && signs[i] == 1) signs[i++] = -1;
        if (i == d) break;
        ++signs[i];
    }

    while (step > min_step) {
        bool improved = false;
        for (const auto& dir : dirs) {
            Vector y(d);
            for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + step * dir[i];
            double v = f(y);
            if (v < value) {
                value = v;
                x = std::move(y);
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return {std::move(x), value};
}

}  // namespace multinorm::detail
