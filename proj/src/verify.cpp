#include "drsubmax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "drsubmax/brute.hpp"
#include "drsubmax/errors.hpp"
#include "drsubmax/fw.hpp"
#include "drsubmax/geometry.hpp"
#include "drsubmax/objectives.hpp"
#include "drsubmax/rng.hpp"

namespace drsubmax {

bool SuiteResult::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

double row_dot(const Mat& m, int i, const Vec& x) {
    const double* r = m.row(i);
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += r[j] * x[j];
    return s;
}

// Mixed-sign constraints with a planted strictly feasible point, so the
// feasible set is never empty and never the whole box.
LinearProgram random_lp(Rng& rng) {
    const int d = 2 + static_cast<int>(rng.uniform_int(3));
    const int m = 1 + static_cast<int>(rng.uniform_int(4));
    LinearProgram lp;
    lp.A = Mat(m, d);
    Vec x0(d);
    for (int j = 0; j < d; ++j) x0[j] = rng.uniform01();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) lp.A(i, j) = rng.uniform(-1.0, 1.0);
    lp.b.resize(m);
    for (int i = 0; i < m; ++i) lp.b[i] = row_dot(lp.A, i, x0) + rng.uniform(0.05, 1.0);
    lp.lower.assign(d, 0.0);
    lp.upper.assign(d, 1.0);
    lp.objective.resize(d);
    for (int j = 0; j < d; ++j) lp.objective[j] = rng.uniform(-1.0, 1.0);
    return lp;
}

// {x in box : sum x_i >= s}: its minimum-infinity-norm point is (s/d) 1.
Region shifted_region(int d, double s) {
    Mat A(1, d, -1.0);
    Vec b{-s};
    return make_region(std::move(A), std::move(b));
}

double vertex_distance(const std::vector<Vec>& vertices, const Vec& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& v : vertices) {
        double s = 0.0;
        for (size_t j = 0; j < p.size(); ++j) s += (v[j] - p[j]) * (v[j] - p[j]);
        best = std::min(best, std::sqrt(s));
    }
    return best;
}

SuiteResult lp_suite(uint64_t seed) {
    SuiteResult out;
    out.suite = "lp";
    Rng rng(derive_seed(seed, 0x6c70));

    {
        double worst = 0.0;
        bool ok = true;
        for (int it = 0; it < 120; ++it) {
            const LinearProgram lp = random_lp(rng);
            const LpSolution sol = solve_lp(lp);
            const BruteLpResult ref = brute_force_lp(lp);
            if (sol.status != LpStatus::optimal || !ref.feasible) {
                ok = false;
                break;
            }
            worst = std::max(worst, std::fabs(sol.objective - ref.objective));
        }
        ok = ok && worst <= 1e-8;
        out.checks.push_back({"optimum matches vertex enumeration", ok,
                              "max objective gap " + fmt(worst) + " over 120 instances"});
    }
    {
        double worst = 0.0;
        bool ok = true;
        for (int it = 0; it < 60; ++it) {
            const LinearProgram lp = random_lp(rng);
            const LpSolution sol = solve_lp(lp);
            const auto vertices = enumerate_vertices(lp.A, lp.b, lp.lower, lp.upper);
            if (sol.status != LpStatus::optimal || vertices.empty()) {
                ok = false;
                break;
            }
            worst = std::max(worst, vertex_distance(vertices, sol.point));
        }
        ok = ok && worst <= 1e-7;
        out.checks.push_back({"solution lands on a vertex", ok,
                              "max distance to nearest vertex " + fmt(worst)});
    }
    {
        bool ok = true;
        for (int it = 0; it < 25 && ok; ++it) {
            LinearProgram lp = random_lp(rng);
            // append x_0 <= -0.25, unsatisfiable against the box floor
            Mat A2(lp.A.rows + 1, lp.A.cols);
            std::copy(lp.A.a.begin(), lp.A.a.end(), A2.a.begin());
            A2(lp.A.rows, 0) = 1.0;
            lp.A = std::move(A2);
            lp.b.push_back(-0.25);
            ok = solve_lp(lp).status == LpStatus::infeasible;
        }
        out.checks.push_back({"infeasible systems detected", ok, "25 instances"});
    }
    {
        const LinearProgram lp = random_lp(rng);
        const LpSolution s1 = solve_lp(lp);
        const LpSolution s2 = solve_lp(lp);
        const bool ok = s1.status == s2.status && s1.objective == s2.objective &&
                        s1.point.size() == s2.point.size() &&
                        std::memcmp(s1.point.data(), s2.point.data(),
                                    s1.point.size() * sizeof(double)) == 0;
        out.checks.push_back({"resolve is bit-identical", ok, "same instance solved twice"});
    }
    return out;
}

SuiteResult geometry_suite(uint64_t seed) {
    SuiteResult out;
    out.suite = "geometry";
    Rng rng(derive_seed(seed, 0x67656f));

    {
        double worst = 1.0;
        bool ok = true;
        for (int it = 0; it < 10; ++it) {
            const int d = 2 + static_cast<int>(rng.uniform_int(3));
            const Region region = generate_region(d, 1 + static_cast<int>(rng.uniform_int(3)), rng);
            for (int s = 0; s < 40; ++s) {
                const Vec u = sample_unit_sphere(d, rng);
                Vec p(d);
                for (int j = 0; j < d; ++j) p[j] = region.center[j] + 0.999 * region.radius * u[j];
                if (!membership(region, p, 1e-9)) ok = false;
            }
            worst = std::min(worst, region.radius);
        }
        out.checks.push_back({"interior ball is feasible", ok,
                              "smallest interior radius " + fmt(worst) + " over 10 regions"});
    }
    {
        double worst = 0.0;
        bool ok = true;
        for (int it = 0; it < 10; ++it) {
            const int d = 2 + static_cast<int>(rng.uniform_int(2));
            const Region region = generate_region(d, 1 + static_cast<int>(rng.uniform_int(3)), rng);
            const auto vertices = enumerate_vertices(region);
            for (int s = 0; s < 25; ++s) {
                Vec dir(d);
                for (int j = 0; j < d; ++j) dir[j] = rng.uniform(-1.0, 1.0);
                const Vec v = lmo(region, dir);
                double best = -std::numeric_limits<double>::infinity();
                for (const Vec& w : vertices) best = std::max(best, dot(dir, w));
                worst = std::max(worst, std::fabs(best - dot(dir, v)));
            }
        }
        ok = worst <= 1e-8;
        out.checks.push_back({"linear oracle matches vertex scan", ok,
                              "max objective gap " + fmt(worst)});
    }
    {
        // every shrunk point plus a delta-ball perturbation stays feasible
        bool ok = true;
        int tried = 0;
        for (int it = 0; it < 8; ++it) {
            const int d = 2 + static_cast<int>(rng.uniform_int(3));
            const Region base = generate_region(d, 1 + static_cast<int>(rng.uniform_int(3)), rng);
            const double delta = 0.5 * base.radius * rng.uniform(0.2, 1.0);
            const Region shrunk = shrink(base, delta);
            for (int s = 0; s < 40; ++s) {
                Vec dir(d);
                for (int j = 0; j < d; ++j) dir[j] = rng.uniform(-1.0, 1.0);
                const Vec z = lmo(shrunk, dir);
                const Vec u = sample_unit_sphere(d, rng);
                Vec p(d);
                for (int j = 0; j < d; ++j) p[j] = z[j] + delta * u[j];
                if (!membership(base, p, 1e-7)) ok = false;
                ++tried;
            }
        }
        out.checks.push_back({"shrunk region tolerates the sampling ball", ok,
                              std::to_string(tried) + " perturbed vertices"});
    }
    {
        double worst = 0.0;
        bool ok = true;
        for (int it = 0; it < 8; ++it) {
            const int d = 2 + static_cast<int>(rng.uniform_int(3));
            const Region region = generate_region(d, 1 + static_cast<int>(rng.uniform_int(3)), rng);
            const MinInfNormPoint mp = min_inf_norm_point(region);
            // downward-closed regions from the generator contain the origin
            worst = std::max(worst, mp.h);
            if (!membership(region, mp.point, 1e-9)) ok = false;
        }
        ok = ok && worst <= 1e-12;
        out.checks.push_back({"origin regions have zero minimum norm", ok,
                              "max reported norm " + fmt(worst)});
    }
    {
        double worst = 0.0;
        bool ok = true;
        for (int d = 2; d <= 4; ++d) {
            const double s = 0.3 * d;  // min-norm point is (0.3, ..., 0.3)
            const Region region = shifted_region(d, s);
            const MinInfNormPoint mp = min_inf_norm_point(region);
            worst = std::max(worst, std::fabs(mp.h - 0.3));
            if (!membership(region, mp.point, 1e-9)) ok = false;
            if (std::fabs(norm_inf(mp.point) - mp.h) > 1e-12) ok = false;
        }
        ok = ok && worst <= 1e-9;
        out.checks.push_back({"minimum norm matches the closed form", ok,
                              "max error " + fmt(worst) + " on shifted boxes"});
    }
    {
        const Region region = generate_region(3, 2, rng);
        const RegionConstants rc = region_constants(region);
        const bool ok = rc.d_prime == 3 && std::fabs(rc.diameter - std::sqrt(3.0)) < 1e-12 &&
                        std::fabs(rc.h - norm_inf(rc.u_bar)) < 1e-12 &&
                        membership(region, rc.u_bar, 1e-9);
        out.checks.push_back({"region constants are consistent", ok,
                              "h " + fmt(rc.h) + ", diameter " + fmt(rc.diameter)});
    }
    return out;
}

SuiteResult estimators_suite(uint64_t seed) {
    SuiteResult out;
    out.suite = "estimators";
    Rng rng(derive_seed(seed, 0x657374));

    {
        double worst = 0.0;
        for (int it = 0; it < 20; ++it) {
            const int d = 2 + static_cast<int>(rng.uniform_int(4));
            const QuadraticObjective f = generate_quadratic(d, rng);
            Vec x(d);
            for (int j = 0; j < d; ++j) x[j] = rng.uniform(0.1, 0.9);
            const Vec g = gradient(f, x);
            const double h = 1e-5;
            for (int j = 0; j < d; ++j) {
                Vec xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                const double fd = (value(f, xp) - value(f, xm)) / (2.0 * h);
                worst = std::max(worst, std::fabs(fd - g[j]));
            }
        }
        const bool ok = worst <= 1e-6;
        out.checks.push_back({"gradient matches central differences", ok,
                              "max coordinate error " + fmt(worst)});
    }
    {
        const int d = 3, n = 20000;
        Vec mean(d, 0.0), sq(d, 0.0);
        double norm_err = 0.0;
        for (int s = 0; s < n; ++s) {
            const Vec u = sample_unit_sphere(d, rng);
            norm_err = std::max(norm_err, std::fabs(norm2(u) - 1.0));
            for (int j = 0; j < d; ++j) {
                mean[j] += u[j] / n;
                sq[j] += u[j] * u[j] / n;
            }
        }
        bool ok = norm_err <= 1e-12;
        double moment_err = 0.0;
        for (int j = 0; j < d; ++j) {
            moment_err = std::max(moment_err, std::fabs(mean[j]));
            moment_err = std::max(moment_err, std::fabs(sq[j] - 1.0 / d));
        }
        ok = ok && moment_err <= 0.02;
        out.checks.push_back({"sphere sampler has the right moments", ok,
                              "max moment error " + fmt(moment_err)});
    }
    {
        // ball average of a quadratic has a closed form; Monte Carlo must agree
        double worst_sigmas = 0.0;
        bool ok = true;
        for (int it = 0; it < 3; ++it) {
            const int d = 3;
            const QuadraticObjective f = generate_quadratic(d, rng);
            const double delta = 0.25;
            Vec x(d, 0.4);
            const int n = 40000;
            const double mc = smoothed_value_mc(f, x, delta, n, rng);
            const double exact = value(f, x) + smoothing_offset(f, delta);
            const double sigma = metadata(f).M1 * delta / std::sqrt(static_cast<double>(n));
            const double sigmas = std::fabs(mc - exact) / (sigma + 1e-12);
            worst_sigmas = std::max(worst_sigmas, sigmas);
            if (sigmas > 6.0) ok = false;
        }
        out.checks.push_back({"smoothed value matches the closed form", ok,
                              "worst deviation " + fmt(worst_sigmas) + " sigma"});
    }
    {
        // the estimator formula itself, against a hand computation
        const int d = 3;
        const QuadraticObjective f = generate_quadratic(d, rng);
        Vec x(d, 0.5);
        const double delta = 0.2;
        const Vec u = sample_unit_sphere(d, rng);
        Vec probe(d);
        for (int j = 0; j < d; ++j) probe[j] = x[j] + delta * u[j];
        const double fv = value(f, probe);
        const Vec est = one_point_gradient_estimate(
            [&](const Vec& p) { return value(f, p); }, x, delta, u, d);
        double err = 0.0;
        for (int j = 0; j < d; ++j)
            err = std::max(err, std::fabs(est[j] - (d / delta) * fv * u[j]));
        out.checks.push_back({"one-point estimate equals its formula", err <= 1e-12,
                              "max coordinate error " + fmt(err)});
    }
    {
        // averaged over fresh directions, the one-point estimate is unbiased
        // for the gradient (quadratic smoothing only shifts the constant term)
        const int d = 3;
        const QuadraticObjective f = generate_quadratic(d, rng);
        Vec x(d, 0.4);
        const double delta = 0.25;
        const Vec g = gradient(f, x);
        const int n = 200000;
        Vec mean(d, 0.0), m2(d, 0.0);
        for (int s = 1; s <= n; ++s) {
            const Vec u = sample_unit_sphere(d, rng);
            const Vec est = one_point_gradient_estimate(
                [&](const Vec& p) { return value(f, p); }, x, delta, u, d);
            for (int j = 0; j < d; ++j) {
                const double delta_j = est[j] - mean[j];
                mean[j] += delta_j / s;
                m2[j] += delta_j * (est[j] - mean[j]);
            }
        }
        bool ok = true;
        double worst_sigmas = 0.0;
        for (int j = 0; j < d; ++j) {
            const double se = std::sqrt(m2[j] / (static_cast<double>(n) - 1.0) / n);
            const double sigmas = std::fabs(mean[j] - g[j]) / (se + 1e-12);
            worst_sigmas = std::max(worst_sigmas, sigmas);
            if (sigmas > 6.0) ok = false;
        }
        out.checks.push_back({"one-point estimate is unbiased", ok,
                              "worst coordinate deviation " + fmt(worst_sigmas) + " sigma"});
    }
    {
        bool ok = false;
        const QuadraticObjective f = generate_quadratic(2, rng);
        Vec x{0.99, 0.5};
        Vec u{1.0, 0.0};
        try {
            one_point_gradient_estimate([&](const Vec& p) { return value(f, p); }, x, 0.1, u, 2);
        } catch (const DomainViolation&) {
            ok = true;
        }
        bool ok2 = false;
        try {
            one_point_gradient_estimate([&](const Vec& p) { return value(f, p); }, x, 0.0, u, 2);
        } catch (const InvalidDelta&) {
            ok2 = true;
        }
        out.checks.push_back({"estimator guards its domain", ok && ok2,
                              "out-of-box probe and zero radius both rejected"});
    }
    return out;
}

SuiteResult offline_suite(uint64_t seed) {
    SuiteResult out;
    out.suite = "offline";
    Rng rng(derive_seed(seed, 0x6f6666));

    {
        // monotone objective over an origin region: (1 - 1/e) guarantee
        double worst_margin = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int it = 0; it < 6; ++it) {
            const int d = 2;
            const QuadraticObjective f = generate_monotone_quadratic(d, rng);
            const Region region = generate_region(d, 1 + static_cast<int>(rng.uniform_int(2)), rng);
            const long K = 100;
            const Vec xk = offline_frank_wolfe(CaseLabel::monotone_origin, region, K,
                                               [&](const Vec& x) { return gradient(f, x); });
            const GridArgmax opt = grid_argmax(region, 0.02, [&](const Vec& x) { return value(f, x); });
            const double gamma = offline_gamma(CaseLabel::monotone_origin, K, metadata(f),
                                               diameter_bound(region), 0.0);
            const double margin = value(f, xk) - ((1.0 - 1.0 / std::exp(1.0)) * opt.value - gamma);
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-7) ok = false;
        }
        out.checks.push_back({"monotone ascent clears its guarantee", ok,
                              "worst slack " + fmt(worst_margin) + " over 6 instances"});
    }
    {
        // non-monotone objective over a downward-closed region: 1/e guarantee
        double worst_margin = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int it = 0; it < 6; ++it) {
            const int d = 2;
            const QuadraticObjective f = generate_quadratic(d, rng);
            const Region region = generate_region(d, 1 + static_cast<int>(rng.uniform_int(2)), rng);
            const long K = 100;
            const Vec xk = offline_frank_wolfe(CaseLabel::nonmono_downward, region, K,
                                               [&](const Vec& x) { return gradient(f, x); });
            const GridArgmax opt = grid_argmax(region, 0.02, [&](const Vec& x) { return value(f, x); });
            const double gamma = offline_gamma(CaseLabel::nonmono_downward, K, metadata(f),
                                               diameter_bound(region), 0.0);
            const double margin = value(f, xk) - (opt.value / std::exp(1.0) - gamma);
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-7) ok = false;
        }
        out.checks.push_back({"non-monotone ascent clears its guarantee", ok,
                              "worst slack " + fmt(worst_margin) + " over 6 instances"});
    }
    {
        bool ok = true;
        double worst_drop = 0.0;
        for (int it = 0; it < 4; ++it) {
            const int d = 3;
            const QuadraticObjective f = generate_monotone_quadratic(d, rng);
            const Region region = generate_region(d, 2, rng);
            const long K = 50;
            std::vector<Vec> iterates;
            offline_frank_wolfe(CaseLabel::monotone_origin, region, K,
                                [&](const Vec& x) { return gradient(f, x); }, &iterates);
            if (static_cast<long>(iterates.size()) != K + 1) ok = false;
            const double step_curvature =
                metadata(f).M2 * region.dim() / (2.0 * static_cast<double>(K) * K);
            for (const Vec& x : iterates)
                if (!membership(region, x, 1e-7)) ok = false;
            for (size_t k = 0; k + 1 < iterates.size(); ++k) {
                const double drop = value(f, iterates[k]) - value(f, iterates[k + 1]);
                worst_drop = std::max(worst_drop, drop);
                if (drop > step_curvature + 1e-9) ok = false;
            }
        }
        out.checks.push_back({"iterates stay feasible and nearly monotone", ok,
                              "largest per-step drop " + fmt(worst_drop)});
    }
    return out;
}

}  // namespace

SuiteResult verify_lp(uint64_t seed) { return lp_suite(seed); }
SuiteResult verify_geometry(uint64_t seed) { return geometry_suite(seed); }
SuiteResult verify_estimators(uint64_t seed) { return estimators_suite(seed); }
SuiteResult verify_offline(uint64_t seed) { return offline_suite(seed); }

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"lp", "geometry", "estimators", "offline"};
    return names;
}

SuiteResult run_suite(const std::string& name, uint64_t seed) {
    if (name == "lp") return verify_lp(seed);
    if (name == "geometry") return verify_geometry(seed);
    if (name == "estimators") return verify_estimators(seed);
    if (name == "offline") return verify_offline(seed);
    throw ConfigError("unknown verify suite: " + name);
}

std::vector<SuiteResult> verify_all(uint64_t seed) {
    std::vector<SuiteResult> out;
    for (const std::string& name : verify_suite_names()) out.push_back(run_suite(name, seed));
    return out;
}

}  // namespace drsubmax
