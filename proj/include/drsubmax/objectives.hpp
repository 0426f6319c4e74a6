#pragma once

#include <functional>

#include "drsubmax/geometry.hpp"
#include "drsubmax/linalg.hpp"
#include "drsubmax/rng.hpp"

namespace drsubmax {

// F(x) = 0.5 x^T H x + h^T x + c with H symmetric and entrywise <= 0, which
// makes the gradient antitone and F continuous DR-submodular on the box.
struct QuadraticObjective {
    Mat H;
    Vec h;
    double c = 0.0;

    int dim() const { return static_cast<int>(h.size()); }
};

double value(const QuadraticObjective& f, const Vec& x);
Vec gradient(const QuadraticObjective& f, const Vec& x);
void gradient(const QuadraticObjective& f, const Vec& x, Vec& out);

// Conservative closed-form bounds:
//   M0 >= sup_box F, M1 >= Lipschitz constant, M2 >= gradient Lipschitz constant
struct ObjectiveMetadata {
    double M0 = 0.0;
    double M1 = 0.0;
    double M2 = 0.0;
};

ObjectiveMetadata metadata(const QuadraticObjective& f);

enum class OracleKind { gradient, value };

// How an algorithm is allowed to query the adversary's objectives.
struct OracleSpec {
    OracleKind kind = OracleKind::gradient;
    double noise = 0.0;   // epsilon: gradient noise radius / value noise half-width
    double delta = 0.0;   // smoothing radius; 0 for gradient oracles
    double B0 = 0.0;      // bound on |noisy value|
    double B1 = 0.0;      // bound on ||noisy gradient||
};

// Adversarial benchmark generator: H symmetric with entries uniform on
// [-10, 0], h = -0.1 H^T 1, c = -0.5 sum_ij H_ij. Non-monotone, and
// nonnegative on the box.
QuadraticObjective generate_quadratic(int d, Rng& rng);

// Monotone variant: h = -H^T 1, c = 0; the gradient is nonnegative on the box.
QuadraticObjective generate_monotone_quadratic(int d, Rng& rng);

// Benchmark feasible region: A with entries uniform on [0, 1], b = 1;
// downward-closed and containing the origin.
Region generate_region(int d, int m, Rng& rng);

// gradient plus epsilon times a uniformly random unit vector
Vec noisy_gradient(const QuadraticObjective& f, const Vec& x, double eps, Rng& rng);

// value plus uniform noise on [-eps, eps]
double noisy_value(const QuadraticObjective& f, const Vec& x, double eps, Rng& rng);

// uniform draw from the Euclidean unit sphere
Vec sample_unit_sphere(int d, Rng& rng);

// (d_prime / delta) * value_oracle(x + delta u) * u. The query point must be
// inside the unit box (the objective's domain); throws DomainViolation.
Vec one_point_gradient_estimate(const std::function<double(const Vec&)>& value_oracle,
                                const Vec& x, double delta, const Vec& u, int d_prime);

// Monte Carlo average of f over the Euclidean ball of radius delta at x.
// For these quadratics the exact value is f(x) + delta^2 tr(H) / (2 (d + 2)).
double smoothed_value_mc(const QuadraticObjective& f, const Vec& x, double delta, int samples,
                         Rng& rng);

double smoothing_offset(const QuadraticObjective& f, double delta);

}  // namespace drsubmax
