#include "drsubmax/objectives.hpp"

#include <cmath>

#include "drsubmax/errors.hpp"

namespace drsubmax {

double value(const QuadraticObjective& f, const Vec& x) {
    const int d = f.dim();
    if (static_cast<int>(x.size()) != d) throw LengthMismatch("value: dimension mismatch");
    double quad = 0.0;
    for (int i = 0; i < d; ++i) {
        const double* row = f.H.row(i);
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += row[j] * x[j];
        quad += x[i] * s;
    }
    double lin = 0.0;
    for (int i = 0; i < d; ++i) lin += f.h[i] * x[i];
    return 0.5 * quad + lin + f.c;
}

void gradient(const QuadraticObjective& f, const Vec& x, Vec& out) {
    const int d = f.dim();
    if (static_cast<int>(x.size()) != d) throw LengthMismatch("gradient: dimension mismatch");
    out.assign(d, 0.0);
    for (int i = 0; i < d; ++i) {
        const double* row = f.H.row(i);
        double s = f.h[i];
        for (int j = 0; j < d; ++j) s += row[j] * x[j];
        out[i] = s;
    }
}

Vec gradient(const QuadraticObjective& f, const Vec& x) {
    Vec out;
    gradient(f, x, out);
    return out;
}

ObjectiveMetadata metadata(const QuadraticObjective& f) {
    ObjectiveMetadata md;
    const int d = f.dim();
    md.M2 = frobenius_norm(f.H);
    md.M1 = norm2(f.h) + md.M2 * std::sqrt(static_cast<double>(d));
    // On the box, x^T H x <= 0 (H <= 0 entrywise, x >= 0), so the positive
    // part of the linear term plus the constant dominates F.
    double pos = 0.0;
    for (double hi : f.h) pos += std::max(hi, 0.0);
    md.M0 = std::max(0.0, f.c + pos);
    return md;
}

QuadraticObjective generate_quadratic(int d, Rng& rng) {
    QuadraticObjective f;
    f.H = Mat(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double v = rng.uniform(-10.0, 0.0);
            f.H(i, j) = v;
            f.H(j, i) = v;
        }
    f.h.assign(d, 0.0);
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < d; ++j) rowsum += f.H(j, i);
        f.h[i] = -0.1 * rowsum;
        total += rowsum;
    }
    f.c = -0.5 * total;
    return f;
}

QuadraticObjective generate_monotone_quadratic(int d, Rng& rng) {
    QuadraticObjective f = generate_quadratic(d, rng);
    for (int i = 0; i < d; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < d; ++j) rowsum += f.H(j, i);
        f.h[i] = -rowsum;
    }
    f.c = 0.0;
    return f;
}

Region generate_region(int d, int m, Rng& rng) {
    Mat A(m, d);
    for (double& v : A.a) v = rng.uniform01();
    return make_region(std::move(A), Vec(m, 1.0));
}

Vec noisy_gradient(const QuadraticObjective& f, const Vec& x, double eps, Rng& rng) {
    Vec g = gradient(f, x);
    if (eps > 0.0) {
        Vec n = sample_unit_sphere(f.dim(), rng);
        for (int i = 0; i < f.dim(); ++i) g[i] += eps * n[i];
    }
    return g;
}

double noisy_value(const QuadraticObjective& f, const Vec& x, double eps, Rng& rng) {
    double v = value(f, x);
    if (eps > 0.0) v += rng.uniform(-eps, eps);
    return v;
}

Vec sample_unit_sphere(int d, Rng& rng) {
    Vec u(d);
    double n = 0.0;
    do {
        for (int i = 0; i < d; ++i) u[i] = rng.gaussian();
        n = norm2(u);
    } while (n == 0.0);
    for (double& v : u) v /= n;
    return u;
}

Vec one_point_gradient_estimate(const std::function<double(const Vec&)>& value_oracle,
                                const Vec& x, double delta, const Vec& u, int d_prime) {
    if (x.size() != u.size()) throw LengthMismatch("one_point_gradient_estimate: dimension mismatch");
    if (delta <= 0.0) throw InvalidDelta("one_point_gradient_estimate: delta must be positive");
    const int d = static_cast<int>(x.size());
    Vec z(d);
    for (int i = 0; i < d; ++i) {
        z[i] = x[i] + delta * u[i];
        if (z[i] < -1e-12 || z[i] > 1.0 + 1e-12)
            throw DomainViolation("one_point_gradient_estimate: query point left the unit box");
    }
    const double scale = static_cast<double>(d_prime) / delta * value_oracle(z);
    Vec g(d);
    for (int i = 0; i < d; ++i) g[i] = scale * u[i];
    return g;
}

double smoothed_value_mc(const QuadraticObjective& f, const Vec& x, double delta, int samples,
                         Rng& rng) {
    const int d = f.dim();
    double acc = 0.0;
    Vec z(d);
    for (int s = 0; s < samples; ++s) {
        Vec u = sample_unit_sphere(d, rng);
        const double radius = delta * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
        for (int i = 0; i < d; ++i) z[i] = x[i] + radius * u[i];
        acc += value(f, z);
    }
    return acc / static_cast<double>(samples);
}

double smoothing_offset(const QuadraticObjective& f, double delta) {
    const int d = f.dim();
    return delta * delta * trace(f.H) / (2.0 * static_cast<double>(d + 2));
}

}  // namespace drsubmax
