#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drsubmax/brute.hpp"
#include "drsubmax/errors.hpp"
#include "drsubmax/geometry.hpp"
#include "drsubmax/rng.hpp"

using namespace drsubmax;

namespace {

Region random_downward_closed_region(Rng& rng, int d, int m) {
    Mat A(m, d);
    for (double& v : A.a) v = rng.uniform01();
    return make_region(std::move(A), Vec(m, 1.0));
}

// {x in [0,1]^d : sum x_i >= s}; does not contain the origin
Region shifted_region(int d, double s) {
    Mat A(1, d);
    for (int j = 0; j < d; ++j) A(0, j) = -1.0;
    return make_region(std::move(A), Vec{-s});
}

Vec random_point_in(const Region& region, Rng& rng) {
    // random convex combination of a few vertices picked by random directions
    Vec x(region.dim(), 0.0);
    double total = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
        Vec dir(region.dim());
        for (double& v : dir) v = rng.uniform(-1.0, 1.0);
        Vec vert = lmo(region, dir);
        const double w = rng.uniform01() + 1e-3;
        for (int j = 0; j < region.dim(); ++j) x[j] += w * vert[j];
        total += w;
    }
    for (double& v : x) v /= total;
    return x;
}

Vec unit_direction(Rng& rng, int d) {
    Vec u = rng.gaussian_vec(d);
    const double n = norm2(u);
    for (double& v : u) v /= n;
    return u;
}

}  // namespace

TEST_CASE("unit box chebyshev data") {
    Region box = unit_box_region(2);
    CHECK(box.center[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(box.center[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(box.radius == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(box.downward_closed);
    CHECK(box.contains_origin());
}

TEST_CASE("chebyshev center of the corner simplex") {
    // {x1 + x2 <= 1} in the box: center at (1/(2+sqrt(2)), same), radius equal
    Mat A(1, 2);
    A(0, 0) = 1.0;
    A(0, 1) = 1.0;
    Region r = make_region(std::move(A), Vec{1.0});
    const double expect = 1.0 / (2.0 + std::sqrt(2.0));
    CHECK(r.center[0] == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.center[1] == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.radius == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("shrink maps the box as an affine contraction toward the center") {
    Region box = unit_box_region(2);
    // center (0.5, 0.5), radius 0.5; delta = 0.05 -> theta = 0.1
    Region sh = shrink(box, 0.05);
    CHECK(sh.lower[0] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(sh.upper[0] == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(sh.radius == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(sh.downward_closed);
    CHECK(sh.delta == 0.05);
}

TEST_CASE("shrink rejects bad delta") {
    Region box = unit_box_region(2);
    CHECK_THROWS_AS(shrink(box, 0.5), InvalidDelta);
    CHECK_THROWS_AS(shrink(box, -0.1), InvalidDelta);
    Region sh = shrink(box, 0.1);
    CHECK_THROWS_AS(shrink(sh, 0.05), InvalidDelta);
}

TEST_CASE("min inf norm point closed forms") {
    Region box = unit_box_region(3);
    MinInfNormPoint a = min_inf_norm_point(box);
    CHECK(a.h == 0.0);
    CHECK(norm_inf(a.point) == 0.0);

    // shrunk region with origin-containing base: exactly (delta/r) * center
    Rng rng(5);
    Region r = random_downward_closed_region(rng, 3, 2);
    const double delta = 0.25 * r.radius;
    Region sh = shrink(r, delta);
    MinInfNormPoint b = min_inf_norm_point(sh);
    const double theta = delta / r.radius;
    for (int j = 0; j < 3; ++j)
        CHECK(b.point[j] == doctest::Approx(theta * r.center[j]).epsilon(1e-12));
}

TEST_CASE("min inf norm point on a shifted region matches grid search") {
    Region r = shifted_region(2, 1.0);
    MinInfNormPoint got = min_inf_norm_point(r);
    CHECK(got.h == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(membership(r, got.point, 1e-9));
    const double grid = grid_min_inf_norm(r, 1e-3);
    CHECK(std::fabs(got.h - grid) < 2e-3);
}

TEST_CASE("lmo agrees with vertex enumeration") {
    Rng rng(77);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = 2 + static_cast<int>(rng.uniform_int(2));
        Region r = random_downward_closed_region(rng, d, 1 + static_cast<int>(rng.uniform_int(3)));
        Vec dir(d);
        for (double& v : dir) v = rng.uniform(-1.0, 1.0);
        Vec got = lmo(r, dir);
        CHECK(membership(r, got, 1e-9));
        double best = -1e300;
        for (const Vec& v : enumerate_vertices(r)) best = std::max(best, dot(dir, v));
        CHECK(dot(dir, got) == doctest::Approx(best).epsilon(1e-8));
    }
}

TEST_CASE("shrunk region keeps a delta ball inside the base region") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 2 + static_cast<int>(rng.uniform_int(2));
        Region base = random_downward_closed_region(rng, d, 2);
        const double delta = 0.3 * base.radius;
        Region sh = shrink(base, delta);
        for (int s = 0; s < 500; ++s) {
            Vec z = random_point_in(sh, rng);
            REQUIRE(membership(sh, z, 1e-9));
            Vec u = unit_direction(rng, d);
            Vec zu(d);
            for (int j = 0; j < d; ++j) zu[j] = z[j] + delta * u[j];
            CHECK(membership(base, zu, 1e-9));
        }
    }
}

TEST_CASE("every base point has a nearby image inside the shrunk region") {
    Rng rng(13);
    Region base = random_downward_closed_region(rng, 3, 2);
    const double delta = 0.25 * base.radius;
    Region sh = shrink(base, delta);
    const double theta = delta / base.radius;
    const double dist_bound = delta * diameter_bound(base) / base.radius;
    for (int s = 0; s < 1000; ++s) {
        Vec y = random_point_in(base, rng);
        Vec img(3);
        for (int j = 0; j < 3; ++j)
            img[j] = (1.0 - theta) * y[j] + theta * base.center[j];
        CHECK(membership(sh, img, 1e-9));
        Vec diff(3);
        for (int j = 0; j < 3; ++j) diff[j] = img[j] - y[j];
        CHECK(norm2(diff) <= dist_bound + 1e-12);
    }
}

TEST_CASE("shrinking preserves downward-closedness") {
    Rng rng(17);
    Region base = random_downward_closed_region(rng, 3, 2);
    Region sh = shrink(base, 0.3 * base.radius);
    REQUIRE(sh.downward_closed);
    for (int s = 0; s < 500; ++s) {
        Vec z = random_point_in(sh, rng);
        Vec x(3);
        for (int j = 0; j < 3; ++j)
            x[j] = sh.lower[j] + rng.uniform01() * (z[j] - sh.lower[j]);
        CHECK(membership(sh, x, 1e-9));
    }
}

TEST_CASE("diameter bound is sqrt(d)") {
    CHECK(diameter_bound(unit_box_region(4)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(diameter_bound(unit_box_region(25)) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("region constants bundle") {
    Region r = shifted_region(2, 1.0);
    RegionConstants rc = region_constants(r);
    CHECK(rc.h == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rc.d_prime == 2);
    CHECK(rc.diameter == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("membership tolerance behaves as a band") {
    Region box = unit_box_region(2);
    CHECK(membership(box, Vec{1.0 + 5e-10, 0.5}, 1e-9));
    CHECK(!membership(box, Vec{1.0 + 2e-9, 0.5}, 1e-9));
}
