#pragma once

#include "drsubmax/linalg.hpp"
#include "drsubmax/linprog.hpp"

namespace drsubmax {

// Polytope K = {x : A x <= b, lower <= x <= upper} inside the unit box,
// carrying an interior Euclidean ball (center, radius) and, when produced by
// shrink(), the shrink amount delta and a flag describing its base region.
struct Region {
    Mat A;
    Vec b;
    Vec lower;
    Vec upper;
    Vec center;
    double radius = 0.0;
    bool downward_closed = false;
    double delta = 0.0;                // 0 for an unshrunk region
    bool base_contains_origin = false; // only meaningful when delta > 0

    int dim() const { return static_cast<int>(lower.size()); }

    // true when 0 is feasible: every b_i >= 0 and the box floor is 0
    bool contains_origin() const;
};

// Chebyshev center of {A x <= b, lower <= x <= upper} w.r.t. the Euclidean
// ball, solved as an LP in (c, r). Throws InvalidRegion if no interior.
void chebyshev_center(const Mat& A, const Vec& b, const Vec& lower, const Vec& upper,
                      Vec& center_out, double& radius_out);

// Region from constraint data; computes the interior ball. The
// downward-closed flag is set when A and b are entrywise nonnegative.
Region make_region(Mat A, Vec b);

Region unit_box_region(int d);

// (1 - delta/r) K + (delta/r) c. Preserves downward-closedness; the center
// is a fixed point and the interior radius scales by (1 - delta/r).
// Requires 0 <= delta < radius on an unshrunk region (delta = 0 is identity).
Region shrink(const Region& region, double delta);

bool membership(const Region& region, const Vec& x, double tol = 1e-9);

// argmax_{x in K} <direction, x>; always a vertex, deterministic.
Vec lmo(const Region& region, const Vec& direction);

struct MinInfNormPoint {
    Vec point;
    double h = 0.0;  // infinity norm of point
};

// argmin_{x in K} ||x||_inf. Exact closed forms: 0 for a region containing
// the origin, (delta/r) c for a shrunk region whose base contains the origin;
// otherwise an LP over (x, t) with rows x_i <= t.
MinInfNormPoint min_inf_norm_point(const Region& region);

// sqrt(d): diameter of the unit box, conservative for any region inside it.
double diameter_bound(const Region& region);

struct RegionConstants {
    Vec u_bar;
    double h = 0.0;
    double diameter = 0.0;
    int d_prime = 0;
};

RegionConstants region_constants(const Region& region);

}  // namespace drsubmax
