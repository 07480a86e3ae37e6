#include "edmnet/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace edmnet {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kFeasEps = 1e-7;
constexpr double kTieEps = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Where : char { at_lower, at_upper, basic };

// Tableau kept in terms of the current basis: a = B^{-1} A, and xb holds
// the values of the basic variables. Nonbasic variables sit at one of
// their bounds.
struct Tableau {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::vector<double>> a;
    std::vector<double> xb;
    std::vector<int> basis;
    std::vector<Where> where;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<char> banned;

    double bound_value(int j) const {
        return where[j] == Where::at_upper ? hi[j] : lo[j];
    }

    // Moves column `enter` into the basis at row `leave` with step t in
    // direction dir (+1 from lower bound, -1 from upper bound).
    void pivot(std::size_t leave, int enter, int dir, double t, bool leaving_hits_upper) {
        for (std::size_t i = 0; i < n_rows; ++i)
            if (i != leave) xb[i] -= dir * t * a[i][enter];
        const double entering_value = bound_value(enter) + dir * t;

        where[basis[leave]] = leaving_hits_upper ? Where::at_upper : Where::at_lower;
        const double p = a[leave][enter];
        for (double& v : a[leave]) v /= p;
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (i == leave) continue;
            const double f = a[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_cols; ++j) a[i][j] -= f * a[leave][j];
        }
        basis[leave] = enter;
        where[enter] = Where::basic;
        xb[leave] = entering_value;
    }

    LpStatus iterate(const std::vector<double>& cost) {
        for (;;) {
            std::vector<double> cb(n_rows);
            for (std::size_t i = 0; i < n_rows; ++i) cb[i] = cost[basis[i]];

            // Bland: scan columns ascending, take the first favorable one.
            int enter = -1;
            int dir = 0;
            for (std::size_t j = 0; j < n_cols; ++j) {
                if (where[j] == Where::basic || banned[j]) continue;
                if (hi[j] - lo[j] < kPivotEps) continue;  // fixed variable
                double d = cost[j];
                for (std::size_t i = 0; i < n_rows; ++i) d -= cb[i] * a[i][j];
                if (where[j] == Where::at_lower && d < -kCostEps) {
                    enter = static_cast<int>(j);
                    dir = 1;
                    break;
                }
                if (where[j] == Where::at_upper && d > kCostEps) {
                    enter = static_cast<int>(j);
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) return LpStatus::optimal;

            // Ratio test: largest step keeping every basic variable inside
            // its box. Ties go to the smallest basic variable index.
            double row_t = kInf;
            std::ptrdiff_t leave = -1;
            bool leaving_hits_upper = false;
            for (std::size_t i = 0; i < n_rows; ++i) {
                const double rate = dir * a[i][enter];
                double t;
                bool hits_upper;
                if (rate > kPivotEps) {
                    t = (xb[i] - lo[basis[i]]) / rate;
                    hits_upper = false;
                } else if (rate < -kPivotEps) {
                    if (std::isinf(hi[basis[i]])) continue;
                    t = (hi[basis[i]] - xb[i]) / (-rate);
                    hits_upper = true;
                } else {
                    continue;
                }
                t = std::max(t, 0.0);
                const bool better = t < row_t - kTieEps;
                const bool tie = !better && t <= row_t + kTieEps && leave >= 0 &&
                                 basis[i] < basis[leave];
                if (better || tie) {
                    row_t = std::min(row_t, t);
                    leave = static_cast<std::ptrdiff_t>(i);
                    leaving_hits_upper = hits_upper;
                }
            }

            const double span = hi[enter] - lo[enter];
            if (span < row_t - kTieEps) {
                // The entering variable hits its opposite bound first.
                if (std::isinf(span)) return LpStatus::unbounded;
                for (std::size_t i = 0; i < n_rows; ++i)
                    xb[i] -= dir * span * a[i][enter];
                where[enter] = where[enter] == Where::at_lower ? Where::at_upper
                                                               : Where::at_lower;
                continue;
            }
            if (leave < 0) return LpStatus::unbounded;
            pivot(static_cast<std::size_t>(leave), enter, dir, row_t, leaving_hits_upper);
        }
    }
};

void validate(const LpProblem& p) {
    const std::size_t n = p.n_vars();
    auto check_rows = [&](const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& rhs, const char* what) {
        if (rows.size() != rhs.size())
            throw std::invalid_argument(std::string("solve_lp: ") + what +
                                        " coefficient/rhs count mismatch");
        for (const auto& row : rows)
            if (row.size() != n)
                throw std::invalid_argument(std::string("solve_lp: ") + what +
                                            " row length does not match variable count");
    };
    if (p.lower.size() != n || p.upper.size() != n)
        throw std::invalid_argument("solve_lp: bound length does not match variable count");
    check_rows(p.eq_coeffs, p.eq_rhs, "equality");
    check_rows(p.ge_coeffs, p.ge_rhs, "inequality");
    for (double l : p.lower)
        if (!std::isfinite(l))
            throw std::invalid_argument("solve_lp: lower bounds must be finite");
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
    validate(problem);
    const std::size_t n = problem.n_vars();
    for (std::size_t j = 0; j < n; ++j)
        if (problem.lower[j] > problem.upper[j]) return {LpStatus::infeasible, {}, 0.0};

    const std::size_t n_eq = problem.eq_coeffs.size();
    const std::size_t n_ge = problem.ge_coeffs.size();
    const std::size_t n_rows = n_eq + n_ge;
    const std::size_t n_struct = n + n_ge;       // structural + surplus
    const std::size_t n_cols = n_struct + n_rows;  // + artificials

    Tableau t;
    t.n_rows = n_rows;
    t.n_cols = n_cols;
    t.a.assign(n_rows, std::vector<double>(n_cols, 0.0));
    t.xb.assign(n_rows, 0.0);
    t.basis.resize(n_rows);
    t.where.assign(n_cols, Where::at_lower);
    t.lo.assign(n_cols, 0.0);
    t.hi.assign(n_cols, kInf);
    t.banned.assign(n_cols, 0);

    for (std::size_t j = 0; j < n; ++j) {
        t.lo[j] = problem.lower[j];
        t.hi[j] = problem.upper[j];
    }

    std::vector<double> rhs(n_rows);
    for (std::size_t r = 0; r < n_eq; ++r) {
        for (std::size_t j = 0; j < n; ++j) t.a[r][j] = problem.eq_coeffs[r][j];
        rhs[r] = problem.eq_rhs[r];
    }
    for (std::size_t r = 0; r < n_ge; ++r) {
        const std::size_t row = n_eq + r;
        for (std::size_t j = 0; j < n; ++j) t.a[row][j] = problem.ge_coeffs[r][j];
        t.a[row][n + r] = -1.0;  // surplus turns >= into =
        rhs[row] = problem.ge_rhs[r];
    }

    // Start with every variable at its lower bound; artificials absorb the
    // residuals. Rows with negative residual are negated so that the
    // artificial (with +1 coefficient) starts non-negative.
    for (std::size_t r = 0; r < n_rows; ++r) {
        double residual = rhs[r];
        for (std::size_t j = 0; j < n_struct; ++j) residual -= t.a[r][j] * t.lo[j];
        if (residual < 0.0) {
            for (std::size_t j = 0; j < n_struct; ++j) t.a[r][j] = -t.a[r][j];
            residual = -residual;
        }
        const std::size_t art = n_struct + r;
        t.a[r][art] = 1.0;
        t.basis[r] = static_cast<int>(art);
        t.where[art] = Where::basic;
        t.xb[r] = residual;
    }

    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1_cost(n_cols, 0.0);
    for (std::size_t r = 0; r < n_rows; ++r) phase1_cost[n_struct + r] = 1.0;
    if (t.iterate(phase1_cost) != LpStatus::optimal) return {LpStatus::infeasible, {}, 0.0};

    double artificial_sum = 0.0;
    for (std::size_t r = 0; r < t.n_rows; ++r)
        if (static_cast<std::size_t>(t.basis[r]) >= n_struct) artificial_sum += t.xb[r];
    if (artificial_sum > kFeasEps) return {LpStatus::infeasible, {}, 0.0};

    // Pivot leftover artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.n_rows;) {
        if (static_cast<std::size_t>(t.basis[r]) < n_struct) {
            ++r;
            continue;
        }
        int enter = -1;
        for (std::size_t j = 0; j < n_struct; ++j)
            if (t.where[j] != Where::basic && std::abs(t.a[r][j]) > kPivotEps) {
                enter = static_cast<int>(j);
                break;
            }
        if (enter >= 0) {
            t.pivot(r, enter, 1, 0.0, false);
            ++r;
        } else {
            t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(r));
            t.xb.erase(t.xb.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
            --t.n_rows;
        }
    }
    for (std::size_t r = 0; r < n_rows; ++r) t.banned[n_struct + r] = 1;

    // Phase 2: original objective (zero on surplus and artificials).
    std::vector<double> cost(n_cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
    const LpStatus status = t.iterate(cost);
    if (status != LpStatus::optimal) return {status, {}, 0.0};

    LpSolution solution;
    solution.status = LpStatus::optimal;
    solution.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        solution.x[j] = t.where[j] == Where::basic ? 0.0 : t.bound_value(static_cast<int>(j));
    for (std::size_t r = 0; r < t.n_rows; ++r)
        if (static_cast<std::size_t>(t.basis[r]) < n) solution.x[t.basis[r]] = t.xb[r];
    for (std::size_t j = 0; j < n; ++j)
        solution.objective += problem.objective[j] * solution.x[j];
    return solution;
}

}  // namespace edmnet
