#pragma once

#include <cmath>
#include <limits>

#include "drsubmax/geometry.hpp"
#include "drsubmax/linalg.hpp"
#include "drsubmax/linprog.hpp"

namespace drsubmax {

// Brute-force reference implementations, deliberately independent of the
// simplex code path: vertices come from enumerating active-constraint
// subsets and solving small linear systems directly. Intended for
// verification of low-dimensional instances only (cost grows as C(m+2d, d)).

// All vertices of {A x <= b, lower <= x <= upper}, feasibility tol 1e-9.
std::vector<Vec> enumerate_vertices(const Mat& A, const Vec& b, const Vec& lower,
                                    const Vec& upper);

std::vector<Vec> enumerate_vertices(const Region& region);

struct BruteLpResult {
    bool feasible = false;
    Vec point;
    double objective = 0.0;
};

// maximize c . x by scanning enumerated vertices
BruteLpResult brute_force_lp(const LinearProgram& lp);

// argmax of f over the feasible grid with the given step (membership tol 1e-9)
struct GridArgmax {
    Vec point;
    double value = 0.0;
};

template <typename F>
GridArgmax grid_argmax(const Region& region, double step, F&& f) {
    const int d = region.dim();
    GridArgmax best;
    best.value = -std::numeric_limits<double>::infinity();
    Vec x(d, 0.0);
    std::vector<long> idx(d, 0);
    std::vector<long> steps(d);
    for (int j = 0; j < d; ++j)
        steps[j] = static_cast<long>(std::floor((region.upper[j] - region.lower[j]) / step + 1e-12)) + 1;
    for (;;) {
        for (int j = 0; j < d; ++j) x[j] = region.lower[j] + step * static_cast<double>(idx[j]);
        if (membership(region, x, 1e-9)) {
            const double v = f(x);
            if (v > best.value) {
                best.value = v;
                best.point = x;
            }
        }
        int j = 0;
        while (j < d && ++idx[j] >= steps[j]) {
            idx[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return best;
}

// min ||x||_inf over the feasible grid
double grid_min_inf_norm(const Region& region, double step);

}  // namespace drsubmax
