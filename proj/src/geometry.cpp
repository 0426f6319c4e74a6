#include "drsubmax/geometry.hpp"

#include <cmath>

#include "drsubmax/errors.hpp"

namespace drsubmax {

bool Region::contains_origin() const {
    for (double bi : b)
        if (bi < 0.0) return false;
    for (double lo : lower)
        if (lo != 0.0) return false;
    return true;
}

void chebyshev_center(const Mat& A, const Vec& b, const Vec& lower, const Vec& upper,
                      Vec& center_out, double& radius_out) {
    const int d = static_cast<int>(lower.size());
    const int m = A.rows;
    // variables (c_1..c_d, r); rows: a_i . c + ||a_i|| r <= b_i,
    // c_j + r <= upper_j, -c_j + r <= -lower_j
    LinearProgram lp;
    lp.objective.assign(d + 1, 0.0);
    lp.objective[d] = 1.0;
    lp.A = Mat(m + 2 * d, d + 1);
    lp.b.assign(m + 2 * d, 0.0);
    for (int i = 0; i < m; ++i) {
        double nrm = 0.0;
        for (int j = 0; j < d; ++j) {
            lp.A(i, j) = A(i, j);
            nrm += A(i, j) * A(i, j);
        }
        lp.A(i, d) = std::sqrt(nrm);
        lp.b[i] = b[i];
    }
    for (int j = 0; j < d; ++j) {
        lp.A(m + j, j) = 1.0;
        lp.A(m + j, d) = 1.0;
        lp.b[m + j] = upper[j];
        lp.A(m + d + j, j) = -1.0;
        lp.A(m + d + j, d) = 1.0;
        lp.b[m + d + j] = -lower[j];
    }
    lp.lower.assign(d + 1, 0.0);
    lp.upper.assign(d + 1, 1.0);
    for (int j = 0; j < d; ++j) {
        lp.lower[j] = lower[j];
        lp.upper[j] = upper[j];
    }

    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal || sol.objective <= 0.0)
        throw InvalidRegion("region has empty interior");
    center_out.assign(sol.point.begin(), sol.point.begin() + d);
    radius_out = sol.point[d];
}

Region make_region(Mat A, Vec b) {
    Region r;
    const int d = A.cols;
    r.lower.assign(d, 0.0);
    r.upper.assign(d, 1.0);
    bool nonneg = true;
    for (double v : A.a)
        if (v < 0.0) nonneg = false;
    for (double v : b)
        if (v < 0.0) nonneg = false;
    r.downward_closed = nonneg;
    r.A = std::move(A);
    r.b = std::move(b);
    chebyshev_center(r.A, r.b, r.lower, r.upper, r.center, r.radius);
    return r;
}

Region unit_box_region(int d) {
    return make_region(Mat(0, d), Vec{});
}

Region shrink(const Region& region, double delta) {
    if (region.delta != 0.0) throw InvalidDelta("shrink: region is already shrunk");
    if (delta < 0.0 || delta >= region.radius)
        throw InvalidDelta("shrink: need 0 <= delta < interior radius");
    if (delta == 0.0) return region;

    const double theta = delta / region.radius;
    const int d = region.dim();
    Region out = region;
    out.delta = delta;
    out.base_contains_origin = region.contains_origin();
    Vec ac = matvec(region.A, region.center);
    for (int i = 0; i < region.A.rows; ++i)
        out.b[i] = (1.0 - theta) * region.b[i] + theta * ac[i];
    for (int j = 0; j < d; ++j) {
        out.lower[j] = (1.0 - theta) * region.lower[j] + theta * region.center[j];
        out.upper[j] = (1.0 - theta) * region.upper[j] + theta * region.center[j];
    }
    out.radius = (1.0 - theta) * region.radius;
    return out;
}

bool membership(const Region& region, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != region.dim())
        throw LengthMismatch("membership: dimension mismatch");
    for (int j = 0; j < region.dim(); ++j) {
        if (x[j] < region.lower[j] - tol || x[j] > region.upper[j] + tol) return false;
    }
    for (int i = 0; i < region.A.rows; ++i) {
        double s = 0.0;
        const double* row = region.A.row(i);
        for (int j = 0; j < region.dim(); ++j) s += row[j] * x[j];
        if (s > region.b[i] + tol) return false;
    }
    return true;
}

Vec lmo(const Region& region, const Vec& direction) {
    if (static_cast<int>(direction.size()) != region.dim())
        throw LengthMismatch("lmo: dimension mismatch");
    LinearProgram lp;
    lp.objective = direction;
    lp.A = region.A;
    lp.b = region.b;
    lp.lower = region.lower;
    lp.upper = region.upper;
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) throw NumericalFailure("lmo: region is not feasible");
    return sol.point;
}

MinInfNormPoint min_inf_norm_point(const Region& region) {
    MinInfNormPoint out;
    if (region.delta > 0.0 && region.base_contains_origin) {
        out.point = region.lower;  // the image of the origin, (delta/r) c, exactly
        out.h = norm_inf(out.point);
        return out;
    }
    if (region.delta == 0.0 && region.contains_origin()) {
        out.point.assign(region.dim(), 0.0);
        out.h = 0.0;
        return out;
    }

    const int d = region.dim();
    const int m = region.A.rows;
    // variables (x, t), maximize -t subject to x in K and x_j - t <= 0
    LinearProgram lp;
    lp.objective.assign(d + 1, 0.0);
    lp.objective[d] = -1.0;
    lp.A = Mat(m + d, d + 1);
    lp.b.assign(m + d, 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < d; ++j) lp.A(i, j) = region.A(i, j);
        lp.b[i] = region.b[i];
    }
    for (int j = 0; j < d; ++j) {
        lp.A(m + j, j) = 1.0;
        lp.A(m + j, d) = -1.0;
        lp.b[m + j] = 0.0;
    }
    lp.lower = region.lower;
    lp.lower.push_back(0.0);
    lp.upper = region.upper;
    lp.upper.push_back(1.0);

    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal)
        throw NumericalFailure("min_inf_norm_point: LP not solvable");
    out.point.assign(sol.point.begin(), sol.point.begin() + d);
    out.h = norm_inf(out.point);
    return out;
}

double diameter_bound(const Region& region) {
    return std::sqrt(static_cast<double>(region.dim()));
}

RegionConstants region_constants(const Region& region) {
    RegionConstants rc;
    MinInfNormPoint mi = min_inf_norm_point(region);
    rc.u_bar = std::move(mi.point);
    rc.h = mi.h;
    rc.diameter = diameter_bound(region);
    rc.d_prime = region.dim();
    return rc;
}

}  // namespace drsubmax
