#include "gglab/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gglab/lp.hpp"

namespace gg {
namespace {

// Exact pure saddle point: max_i min_j M(i,j) meeting min_j max_i M(i,j).
std::optional<MatrixGameSolution> pure_saddle(const Matrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<double> row_min(nr, std::numeric_limits<double>::infinity());
    std::vector<double> col_max(nc, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            row_min[i] = std::min(row_min[i], m(i, j));
            col_max[j] = std::max(col_max[j], m(i, j));
        }
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 1; i < nr; ++i)
        if (row_min[i] > row_min[bi]) bi = i;
    for (std::size_t j = 1; j < nc; ++j)
        if (col_max[j] < col_max[bj]) bj = j;
    if (row_min[bi] < col_max[bj]) return std::nullopt;

    MatrixGameSolution s;
    s.value = row_min[bi];
    s.row_mix.assign(nr, 0.0);
    s.col_mix.assign(nc, 0.0);
    s.row_mix[bi] = 1.0;
    s.col_mix[bj] = 1.0;
    s.pure = true;
    return s;
}

void normalize_mix(std::vector<double>& mix) {
    double sum = 0.0;
    for (double& w : mix) {
        if (w < 0.0) w = 0.0;
        sum += w;
    }
    if (sum <= 0.0) throw numerical_error("matrix game: degenerate mix");
    for (double& w : mix) w /= sum;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const Matrix& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) throw input_error("matrix game: empty matrix");
    if (auto s = pure_saddle(m)) return *s;

    const std::size_t nr = m.rows(), nc = m.cols();
    // Shift entries positive; the value shifts by the same constant and the
    // optimal mixes are unchanged.
    const double shift = 1.0 - m.min();

    // Row player: min sum(xi) s.t. M'^T xi >= 1, xi >= 0; value = 1/sum(xi).
    std::vector<double> c_row(nr, 1.0);
    std::vector<lp::Constraint> rows_row;
    for (std::size_t j = 0; j < nc; ++j) {
        lp::Constraint r{std::vector<double>(nr, 0.0), lp::Rel::ge, 1.0};
        for (std::size_t i = 0; i < nr; ++i) r.a[i] = m(i, j) + shift;
        rows_row.push_back(std::move(r));
    }
    auto res_row = lp::solve(c_row, rows_row, tol);
    if (!res_row.ok()) throw numerical_error("matrix game: row LP failed", res_row.infeasibility);
    const double v_row = 1.0 / res_row.objective - shift;

    // Column player: max sum(eta) s.t. M' eta <= 1, eta >= 0.
    std::vector<double> c_col(nc, -1.0);
    std::vector<lp::Constraint> rows_col;
    for (std::size_t i = 0; i < nr; ++i) {
        lp::Constraint r{std::vector<double>(nc, 0.0), lp::Rel::le, 1.0};
        for (std::size_t j = 0; j < nc; ++j) r.a[j] = m(i, j) + shift;
        rows_col.push_back(std::move(r));
    }
    auto res_col = lp::solve(c_col, rows_col, tol);
    if (!res_col.ok()) throw numerical_error("matrix game: column LP failed", res_col.infeasibility);
    const double v_col = 1.0 / (-res_col.objective) - shift;

    MatrixGameSolution s;
    s.duality_gap = std::abs(v_row - v_col);
    if (s.duality_gap > std::max(tol, 1e-7 * (1.0 + std::abs(v_row))))
        throw numerical_error("matrix game: duality gap above tolerance", s.duality_gap);
    s.value = 0.5 * (v_row + v_col);
    s.row_mix = res_row.x;
    s.col_mix = res_col.x;
    normalize_mix(s.row_mix);
    normalize_mix(s.col_mix);
    return s;
}

Matrix stage_game_matrix(const GamblingGame& game, const ValueFunction& v, double lambda,
                         std::size_t x, std::size_t y) {
    if (lambda <= 0.0 || lambda > 1.0) throw input_error("stage game: lambda must be in (0,1]");
    if (v.nx() != game.nx() || v.ny() != game.ny())
        throw input_error("stage game: value function dimension mismatch");
    const auto& gx = game.house1().transition(x).generators();
    const auto& hy = game.house2().transition(y).generators();
    const double base = lambda * game.payoff(x, y);
    const double cont = 1.0 - lambda;

    // M = lambda*u + (1-lambda) * G V H^T, assembled via W = V H^T first.
    const std::size_t nxs = game.nx(), nys = game.ny();
    Matrix w(nxs, hy.size());
    for (std::size_t xs = 0; xs < nxs; ++xs)
        for (std::size_t j = 0; j < hy.size(); ++j) {
            double s = 0.0;
            for (std::size_t ys = 0; ys < nys; ++ys) s += v(xs, ys) * hy[j].weight(ys);
            w(xs, j) = s;
        }
    Matrix m(gx.size(), hy.size());
    for (std::size_t i = 0; i < gx.size(); ++i)
        for (std::size_t j = 0; j < hy.size(); ++j) {
            double s = 0.0;
            for (std::size_t xs = 0; xs < nxs; ++xs) {
                const double px = gx[i].weight(xs);
                if (px != 0.0) s += px * w(xs, j);
            }
            m(i, j) = base + cont * s;
        }
    return m;
}

Distribution mix_barycenter(const TransitionPolytope& polytope, const std::vector<double>& mix) {
    if (mix.size() != polytope.size()) throw input_error("barycenter: mix size mismatch");
    std::vector<double> w(polytope.space()->size(), 0.0);
    for (std::size_t k = 0; k < mix.size(); ++k) {
        if (mix[k] == 0.0) continue;
        const auto& g = polytope.generator(k);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += mix[k] * g.weight(i);
    }
    // Guard against drift from the LP solution.
    double sum = 0.0;
    for (double v : w) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) throw numerical_error("barycenter: mass drift", sum - 1.0);
    for (double& v : w) v /= sum;
    return Distribution(polytope.space(), std::move(w));
}

}  // namespace gg
