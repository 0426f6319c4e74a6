#include "drsubmax/brute.hpp"

#include <cmath>
#include <limits>

namespace drsubmax {

namespace {

// Solve the d x d system G y = r by Gaussian elimination with partial
// pivoting; returns false when near-singular.
bool solve_square(Mat g, Vec r, Vec& out) {
    const int d = g.rows;
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    for (int col = 0; col < d; ++col) {
        int best = col;
        for (int i = col + 1; i < d; ++i)
            if (std::fabs(g(i, col)) > std::fabs(g(best, col))) best = i;
        if (std::fabs(g(best, col)) < 1e-10) return false;
        if (best != col) {
            for (int j = 0; j < d; ++j) std::swap(g(col, j), g(best, j));
            std::swap(r[col], r[best]);
        }
        for (int i = col + 1; i < d; ++i) {
            const double f = g(i, col) / g(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < d; ++j) g(i, j) -= f * g(col, j);
            r[i] -= f * r[col];
        }
    }
    out.assign(d, 0.0);
    for (int i = d - 1; i >= 0; --i) {
        double s = r[i];
        for (int j = i + 1; j < d; ++j) s -= g(i, j) * out[j];
        out[i] = s / g(i, i);
    }
    return true;
}

}  // namespace

std::vector<Vec> enumerate_vertices(const Mat& A, const Vec& b, const Vec& lower,
                                    const Vec& upper) {
    const int d = static_cast<int>(lower.size());
    const int m = A.rows;
    const int total = m + 2 * d;  // rows, then x_j <= upper_j, then -x_j <= -lower_j

    auto constraint_row = [&](int k, Vec& normal, double& rhs) {
        normal.assign(d, 0.0);
        if (k < m) {
            for (int j = 0; j < d; ++j) normal[j] = A(k, j);
            rhs = b[k];
        } else if (k < m + d) {
            normal[k - m] = 1.0;
            rhs = upper[k - m];
        } else {
            normal[k - m - d] = -1.0;
            rhs = -lower[k - m - d];
        }
    };

    std::vector<Vec> vertices;
    std::vector<int> pick(d);
    Vec normal;
    double rhs = 0.0;

    const auto feasible = [&](const Vec& x) {
        for (int j = 0; j < d; ++j)
            if (x[j] < lower[j] - 1e-9 || x[j] > upper[j] + 1e-9) return false;
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += A(i, j) * x[j];
            if (s > b[i] + 1e-9) return false;
        }
        return true;
    };

    const auto already_have = [&](const Vec& x) {
        for (const Vec& v : vertices) {
            double diff = 0.0;
            for (int j = 0; j < d; ++j) diff = std::max(diff, std::fabs(v[j] - x[j]));
            if (diff < 1e-8) return true;
        }
        return false;
    };

    // iterate over all d-subsets of the constraint set
    const auto recurse = [&](auto&& self, int start, int depth) -> void {
        if (depth == d) {
            Mat g(d, d);
            Vec r(d);
            for (int i = 0; i < d; ++i) {
                constraint_row(pick[i], normal, rhs);
                for (int j = 0; j < d; ++j) g(i, j) = normal[j];
                r[i] = rhs;
            }
            Vec x;
            if (!solve_square(std::move(g), std::move(r), x)) return;
            if (feasible(x) && !already_have(x)) vertices.push_back(std::move(x));
            return;
        }
        for (int k = start; k <= total - (d - depth); ++k) {
            pick[depth] = k;
            self(self, k + 1, depth + 1);
        }
    };
    recurse(recurse, 0, 0);
    return vertices;
}

std::vector<Vec> enumerate_vertices(const Region& region) {
    return enumerate_vertices(region.A, region.b, region.lower, region.upper);
}

BruteLpResult brute_force_lp(const LinearProgram& lp) {
    BruteLpResult out;
    out.objective = -std::numeric_limits<double>::infinity();
    for (const Vec& v : enumerate_vertices(lp.A, lp.b, lp.lower, lp.upper)) {
        const double obj = dot(lp.objective, v);
        if (!out.feasible || obj > out.objective) {
            out.feasible = true;
            out.objective = obj;
            out.point = v;
        }
    }
    return out;
}

double grid_min_inf_norm(const Region& region, double step) {
    GridArgmax res = grid_argmax(region, step, [](const Vec& x) { return -norm_inf(x); });
    return -res.value;
}

}  // namespace drsubmax
