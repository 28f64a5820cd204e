#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "multinorm/vec.hpp"

namespace multinorm::detail {

// Phase-1 simplex feasibility check for  A y = b, y >= 0  with dense A
// (rows x cols). Uses Bland's rule, so it terminates without cycling. The
// systems here are tiny (dim+1 rows, #vertices columns), so a dense tableau
// is plenty.
inline bool lp_feasible(std::vector<std::vector<double>> A, std::vector<double> b,
                        double tol = 1e-9) {
    const std::size_t m = A.size();
    if (m == 0) return true;
    const std::size_t n = A[0].size();

    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            b[i] = -b[i];
            for (auto& a : A[i]) a = -a;
        }
    }

    // Tableau: n structural + m artificial columns, then rhs.
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1.0;
        T[i][cols - 1] = b[i];
    }
    // Objective row: minimize sum of artificials; expressed in terms of the
    // nonbasic structural columns. The rhs cell carries MINUS the objective so
    // the ordinary pivot row-operation keeps it consistent.
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += T[i][j];
        T[m][j] = -s;
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) obj += b[i];
    T[m][cols - 1] = -obj;

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering column = lowest index with negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (T[m][j] < -tol) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        // Leaving row: min ratio, ties by lowest basis index (Bland).
        std::size_t leave = m;
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] > tol) {
                double ratio = T[i][cols - 1] / T[i][enter];
                if (leave == m || ratio < best - tol ||
                    (ratio < best + tol && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave == m) break;  // unbounded below can't happen in phase 1; bail safely

        double piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = T[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    return std::abs(T[m][cols - 1]) <= 1e-7;
}

// Is x within linf distance `slack` of conv{verts}? With slack = 0 this is
// plain membership: find lambda >= 0, sum lambda = 1, V lambda = x. With
// slack > 0 we add per-coordinate deviations u, v >= 0 bounded by slack:
//   V lambda + u - v = x,   u_i + v_i + s_i = slack.
inline bool in_convex_hull(const Vector& x, const std::vector<Vector>& verts,
                           double slack = 0.0) {
    if (verts.empty()) return false;
    const std::size_t d = x.size();
    const std::size_t m = verts.size();

    if (slack <= 0.0) {
        std::vector<std::vector<double>> A(d + 1, std::vector<double>(m, 0.0));
        std::vector<double> b(d + 1);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < m; ++j) A[i][j] = verts[j][i];
            b[i] = x[i];
        }
        for (std::size_t j = 0; j < m; ++j) A[d][j] = 1.0;
        b[d] = 1.0;
        return lp_feasible(A, b);
    }

    // Columns: lambda (m), u (d), v (d), s (d).
    const std::size_t n = m + 3 * d;
    std::vector<std::vector<double>> A(2 * d + 1, std::vector<double>(n, 0.0));
    std::vector<double> b(2 * d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < m; ++j) A[i][j] = verts[j][i];
        A[i][m + i] = 1.0;
        A[i][m + d + i] = -1.0;
        b[i] = x[i];
    }
    for (std::size_t j = 0; j < m; ++j) A[d][j] = 1.0;
    b[d] = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        A[d + 1 + i][m + i] = 1.0;
        A[d + 1 + i][m + d + i] = 1.0;
        A[d + 1 + i][m + 2 * d + i] = 1.0;
        b[d + 1 + i] = slack;
    }
    return lp_feasible(A, b);
}

}  // namespace multinorm::detail
