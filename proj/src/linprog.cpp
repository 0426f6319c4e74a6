#include "drsubmax/linprog.hpp"

#include <cmath>
#include <limits>

#include "drsubmax/errors.hpp"

namespace drsubmax {

namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarStatus : unsigned char { basic, at_lower, at_upper };

// Bounded-variable simplex working state. Columns 0..n-1 are structural
// variables, n..n+m-1 are row slacks, the rest are phase-1 artificials.
struct Tableau {
    int m = 0;
    int total = 0;
    Mat t;              // m x total, kept canonical: basic columns are unit vectors
    Vec lo, hi;         // per-variable bounds
    Vec val;            // current value of every variable
    std::vector<int> basic;          // row -> variable
    std::vector<VarStatus> status;   // variable -> status
    long pivots = 0;
    long pivot_cap = 0;

    // One simplex phase on objective row `obj` (maximization, canonical form:
    // obj[j] must be zero on basic columns). Returns false on unbounded ray.
    bool run(Vec& obj) {
        for (;;) {
            // Bland: entering variable = smallest index with improving reduced cost.
            int enter = -1;
            int dir = 0;
            for (int j = 0; j < total; ++j) {
                if (status[j] == VarStatus::basic) continue;
                if (hi[j] - lo[j] < kTol) continue;  // fixed variable, never moves
                if (status[j] == VarStatus::at_lower && obj[j] > kTol) {
                    enter = j;
                    dir = 1;
                    break;
                }
                if (status[j] == VarStatus::at_upper && obj[j] < -kTol) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) return true;  // optimal for this phase

            // Ratio test: how far can the entering variable move?
            double t_max = hi[enter] - lo[enter];  // own opposite bound
            int leave_row = -1;
            double leave_bound = 0.0;
            for (int i = 0; i < m; ++i) {
                const double w = dir * t(i, enter);
                const int bv = basic[i];
                double limit = kInf;
                double bound = 0.0;
                if (w > kTol) {
                    limit = (val[bv] - lo[bv]) / w;
                    bound = lo[bv];
                } else if (w < -kTol) {
                    if (hi[bv] == kInf) continue;
                    limit = (hi[bv] - val[bv]) / (-w);
                    bound = hi[bv];
                } else {
                    continue;
                }
                if (limit < t_max - kTol ||
                    (limit < t_max + kTol && (leave_row < 0 || bv < basic[leave_row]))) {
                    // Bland tie-break on the leaving variable index
                    if (limit < t_max) t_max = limit;
                    leave_row = i;
                    leave_bound = bound;
                }
            }
            if (t_max == kInf) return false;  // unbounded direction
            if (t_max < 0.0) t_max = 0.0;

            // Move the entering variable and update basic values.
            val[enter] += dir * t_max;
            for (int i = 0; i < m; ++i) val[basic[i]] -= dir * t_max * t(i, enter);

            if (leave_row < 0) {
                // bound flip, no basis change
                status[enter] =
                    (status[enter] == VarStatus::at_lower) ? VarStatus::at_upper : VarStatus::at_lower;
                val[enter] = (status[enter] == VarStatus::at_lower) ? lo[enter] : hi[enter];
                continue;
            }

            const int leave = basic[leave_row];
            status[leave] = (leave_bound == lo[leave]) ? VarStatus::at_lower : VarStatus::at_upper;
            val[leave] = leave_bound;  // cancel accumulated drift exactly
            status[enter] = VarStatus::basic;
            basic[leave_row] = enter;
            pivot(leave_row, enter, obj);
            if (++pivots > pivot_cap)
                throw NumericalFailure("simplex pivot cap exceeded");
        }
    }

    void pivot(int r, int j, Vec& obj) {
        const double piv = t(r, j);
        double* pr = t.row(r);
        const double inv = 1.0 / piv;
        for (int k = 0; k < total; ++k) pr[k] *= inv;
        pr[j] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = t(i, j);
            if (f == 0.0) continue;
            double* ri = t.row(i);
            for (int k = 0; k < total; ++k) ri[k] -= f * pr[k];
            ri[j] = 0.0;
        }
        const double f = obj[j];
        if (f != 0.0) {
            for (int k = 0; k < total; ++k) obj[k] -= f * pr[k];
            obj[j] = 0.0;
        }
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.objective.size());
    const int m = lp.A.rows;
    if (lp.A.cols != n || static_cast<int>(lp.b.size()) != m ||
        static_cast<int>(lp.lower.size()) != n || static_cast<int>(lp.upper.size()) != n)
        throw LengthMismatch("solve_lp: inconsistent dimensions");
    for (int j = 0; j < n; ++j) {
        if (!(lp.lower[j] <= lp.upper[j]) || !std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j]))
            throw InvalidRegion("solve_lp: bounds must be finite with lower <= upper");
    }

    // Start every structural variable at its lower bound; rows whose slack
    // would be negative there get a phase-1 artificial (on the sign-flipped row).
    Vec residual(m);
    int n_art = 0;
    for (int i = 0; i < m; ++i) {
        double s = lp.b[i];
        for (int j = 0; j < n; ++j) s -= lp.A(i, j) * lp.lower[j];
        residual[i] = s;
        if (s < 0.0) ++n_art;
    }

    Tableau tb;
    tb.m = m;
    tb.total = n + m + n_art;
    tb.t = Mat(m, tb.total);
    tb.lo.assign(tb.total, 0.0);
    tb.hi.assign(tb.total, kInf);
    tb.val.assign(tb.total, 0.0);
    tb.basic.assign(m, -1);
    tb.status.assign(tb.total, VarStatus::at_lower);
    tb.pivot_cap = 50L * (n + m);

    for (int j = 0; j < n; ++j) {
        tb.lo[j] = lp.lower[j];
        tb.hi[j] = lp.upper[j];
        tb.val[j] = lp.lower[j];
    }

    int art = n + m;
    for (int i = 0; i < m; ++i) {
        const double sign = residual[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tb.t(i, j) = sign * lp.A(i, j);
        tb.t(i, n + i) = sign;  // slack
        if (residual[i] < 0.0) {
            tb.t(i, art) = 1.0;
            tb.basic[i] = art;
            tb.status[art] = VarStatus::basic;
            tb.val[art] = -residual[i];
            ++art;
        } else {
            tb.basic[i] = n + i;
            tb.status[n + i] = VarStatus::basic;
            tb.val[n + i] = residual[i];
        }
    }

    LpSolution sol;

    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials). In canonical form the
        // reduced cost of column j is the sum of its coefficients over
        // artificial rows.
        Vec obj1(tb.total, 0.0);
        for (int i = 0; i < m; ++i) {
            if (tb.basic[i] < n + m) continue;
            const double* ri = tb.t.row(i);
            for (int k = 0; k < tb.total; ++k) obj1[k] += ri[k];
        }
        for (int k = n + m; k < tb.total; ++k) obj1[k] = 0.0;
        if (!tb.run(obj1)) throw NumericalFailure("phase 1 reported an unbounded ray");

        double infeas = 0.0;
        for (int k = n + m; k < tb.total; ++k) infeas += tb.val[k];
        if (infeas > 1e-7) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Pin artificials at zero so phase 2 can never reuse them; any still
        // basic sit at value zero in redundant rows.
        for (int k = n + m; k < tb.total; ++k) {
            tb.hi[k] = 0.0;
            tb.val[k] = 0.0;
        }
    }

    // Phase 2 objective, reduced over the current basis.
    Vec obj2(tb.total, 0.0);
    for (int j = 0; j < n; ++j) obj2[j] = lp.objective[j];
    for (int i = 0; i < m; ++i) {
        const double f = obj2[tb.basic[i]];
        if (f == 0.0) continue;
        const double* ri = tb.t.row(i);
        for (int k = 0; k < tb.total; ++k) obj2[k] -= f * ri[k];
        obj2[tb.basic[i]] = 0.0;
    }
    if (!tb.run(obj2)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    sol.status = LpStatus::optimal;
    sol.point.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double v = tb.val[j];
        if (v < lp.lower[j]) v = lp.lower[j];
        if (v > lp.upper[j]) v = lp.upper[j];
        sol.point[j] = v;
    }
    sol.objective = dot(lp.objective, sol.point);
    return sol;
}

}  // namespace drsubmax
