#pragma once

#include "drsubmax/linalg.hpp"

namespace drsubmax {

// maximize objective . x  subject to  A x <= b,  lower <= x <= upper
struct LinearProgram {
    Vec objective;
    Mat A;
    Vec b;
    Vec lower;
    Vec upper;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Vec point;
    double objective = 0.0;
};

// Dense bounded-variable two-phase primal simplex with Bland's rule.
// Deterministic: identical inputs produce bit-identical solutions, and the
// returned point is always a vertex of the feasible polytope.
// Throws NumericalFailure if the pivot count exceeds 50 * (n + m).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace drsubmax
