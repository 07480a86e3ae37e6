#pragma once

#include <cstddef>
#include <vector>

namespace edmnet {

enum class LpStatus { optimal, infeasible, unbounded };

// minimize objective . x
//   subject to  eq_coeffs  x  = eq_rhs
//               ge_coeffs  x >= ge_rhs
//               lower <= x <= upper
//
// Lower bounds must be finite; upper bounds may be +infinity.
struct LpProblem {
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_coeffs;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> ge_coeffs;
    std::vector<double> ge_rhs;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t n_vars() const { return objective.size(); }
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;  // structural variable values; empty unless optimal
    double objective = 0.0;
};

// Dense two-phase simplex over box-constrained variables. Entering and
// leaving variables follow Bland's smallest-index rule, so the method
// terminates and the solution is deterministic.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace edmnet
