#include "gglab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gg::lp {
namespace {

constexpr double kPivotTol = 1e-11;

// Dense simplex tableau. Column layout: [original | slack/surplus | artificial | rhs].
// The last row holds reduced costs and (negated) objective value in the rhs cell.
struct Tableau {
    std::size_t m = 0;       // constraint rows
    std::size_t ncols = 0;   // total columns incl. rhs
    std::size_t art_begin = 0;
    std::vector<double> t;   // (m+1) x ncols
    std::vector<int> basis;  // basic variable per row

    double& at(std::size_t i, std::size_t j) { return t[i * ncols + j]; }
    double at(std::size_t i, std::size_t j) const { return t[i * ncols + j]; }
    std::size_t rhs() const { return ncols - 1; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double piv = at(pr, pc);
        const double inv = 1.0 / piv;
        for (std::size_t j = 0; j < ncols; ++j) at(pr, j) *= inv;
        at(pr, pc) = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == pr) continue;
            const double f = at(i, pc);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) at(i, j) -= f * at(pr, j);
            at(i, pc) = 0.0;
        }
        basis[pr] = static_cast<int>(pc);
    }

    // Bland's rule: smallest-index entering column with negative reduced cost,
    // smallest basic-variable index among minimum-ratio rows.
    Status iterate(std::size_t col_limit, int& iters, int max_iter) {
        for (;;) {
            std::size_t enter = col_limit;
            for (std::size_t j = 0; j < col_limit; ++j) {
                if (at(m, j) < -kPivotTol) { enter = j; break; }
            }
            if (enter == col_limit) return Status::optimal;

            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                const double a = at(i, enter);
                if (a <= kPivotTol) continue;
                const double ratio = at(i, rhs()) / a;
                if (ratio < best_ratio - 1e-15 ||
                    (ratio < best_ratio + 1e-15 &&
                     (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == m) return Status::unbounded;
            pivot(leave, enter);
            if (++iters >= max_iter) return Status::iteration_limit;
        }
    }
};

}  // namespace

Result solve(const std::vector<double>& c, const std::vector<Constraint>& rows,
             double tol, int max_iter) {
    const std::size_t n = c.size();
    const std::size_t m = rows.size();
    for (const auto& r : rows)
        if (r.a.size() != n) throw input_error("lp: constraint arity mismatch");

    std::size_t num_slack = 0;
    for (const auto& r : rows)
        if (r.rel != Rel::eq) ++num_slack;

    Tableau tb;
    tb.m = m;
    tb.art_begin = n + num_slack;
    tb.ncols = tb.art_begin + m + 1;
    tb.t.assign((m + 1) * tb.ncols, 0.0);
    tb.basis.assign(m, -1);
    if (max_iter <= 0) max_iter = 200 * static_cast<int>(m + n + 20);

    std::size_t slack = n;
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = rows[i].b < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tb.at(i, j) = sign * rows[i].a[j];
        tb.at(i, tb.rhs()) = sign * rows[i].b;
        if (rows[i].rel != Rel::eq) {
            const double s = (rows[i].rel == Rel::le) ? 1.0 : -1.0;
            tb.at(i, slack++) = sign * s;
        }
        tb.at(i, tb.art_begin + i) = 1.0;
        tb.basis[i] = static_cast<int>(tb.art_begin + i);
    }

    // Phase 1: minimize the sum of artificials. Their reduced-cost row is the
    // negated sum of the constraint rows.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < tb.ncols; ++j)
            if (j < tb.art_begin || j == tb.rhs()) tb.at(m, j) -= tb.at(i, j);

    Result res;
    Status st = tb.iterate(tb.art_begin, res.iterations, max_iter);
    res.infeasibility = -tb.at(m, tb.rhs());
    if (st == Status::iteration_limit) { res.status = st; return res; }
    if (res.infeasibility > tol) { res.status = Status::infeasible; return res; }

    // Drive any remaining basic artificials out (or drop redundant rows).
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < static_cast<int>(tb.art_begin)) continue;
        std::size_t piv_col = tb.art_begin;
        for (std::size_t j = 0; j < tb.art_begin; ++j) {
            if (std::abs(tb.at(i, j)) > 1e-9) { piv_col = j; break; }
        }
        if (piv_col < tb.art_begin) {
            tb.pivot(i, piv_col);
        } else {
            // Redundant constraint: clear the row so it can never pivot again.
            for (std::size_t j = 0; j < tb.ncols; ++j) tb.at(i, j) = 0.0;
        }
    }

    // Phase 2 objective: reduced costs of c with basic columns eliminated.
    for (std::size_t j = 0; j < tb.ncols; ++j) tb.at(m, j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) tb.at(m, j) = c[j];
    for (std::size_t i = 0; i < m; ++i) {
        const int b = tb.basis[i];
        if (b < 0 || b >= static_cast<int>(tb.art_begin)) continue;
        const double f = tb.at(m, static_cast<std::size_t>(b));
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < tb.ncols; ++j)
            tb.at(m, j) -= f * tb.at(i, j);
    }

    st = tb.iterate(tb.art_begin, res.iterations, max_iter);
    if (st != Status::optimal) { res.status = st; return res; }

    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const int b = tb.basis[i];
        if (b >= 0 && b < static_cast<int>(n)) res.x[b] = tb.at(i, tb.rhs());
    }
    res.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    res.status = Status::optimal;
    return res;
}

Result feasible(std::size_t num_vars, const std::vector<Constraint>& rows, double tol) {
    return solve(std::vector<double>(num_vars, 0.0), rows, tol);
}

}  // namespace gg::lp
