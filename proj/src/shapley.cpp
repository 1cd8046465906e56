#include "gglab/shapley.hpp"

#include <algorithm>
#include <cmath>

namespace gg {
namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw input_error("discounted solve: lambda must be in (0,1]");
}

}  // namespace

ValueFunction shapley_operator(const GamblingGame& game, const ValueFunction& v, double lambda) {
    check_lambda(lambda);
    ValueFunction out(game.nx(), game.ny());
    for (std::size_t x = 0; x < game.nx(); ++x)
        for (std::size_t y = 0; y < game.ny(); ++y)
            out(x, y) = solve_matrix_game(stage_game_matrix(game, v, lambda, x, y)).value;
    return out;
}

DiscountedSolution solve_discounted(const GamblingGame& game, double lambda, double tol,
                                    std::int64_t max_iter, const ValueFunction* start) {
    check_lambda(lambda);
    if (!(tol > 0.0)) throw input_error("discounted solve: tol must be positive");

    const double threshold =
        lambda == 1.0 ? 0.0 : tol * lambda / (1.0 - lambda);

    DiscountedSolution sol;
    sol.lambda = lambda;
    ValueFunction v = start ? *start : ValueFunction(game.nx(), game.ny(), 0.0);
    double step = 0.0;
    for (;;) {
        ValueFunction next = shapley_operator(game, v, lambda);
        step = ValueFunction::max_abs_diff(next, v);
        v = std::move(next);
        ++sol.iterations;
        if (step <= threshold) break;
        if (sol.iterations >= max_iter)
            throw numerical_error("discounted solve: iteration budget exhausted at step " +
                                      std::to_string(step),
                                  step);
    }

    // Final application gathers the per-cell optimal strategies.
    sol.strategies.reserve(game.nx() * game.ny());
    ValueFunction final_v(game.nx(), game.ny());
    for (std::size_t x = 0; x < game.nx(); ++x)
        for (std::size_t y = 0; y < game.ny(); ++y) {
            auto cell = solve_matrix_game(stage_game_matrix(game, v, lambda, x, y));
            cell.row_point = mix_barycenter(game.house1().transition(x), cell.row_mix);
            cell.col_point = mix_barycenter(game.house2().transition(y), cell.col_mix);
            final_v(x, y) = cell.value;
            sol.strategies.push_back(std::move(cell));
        }
    sol.residual = ValueFunction::max_abs_diff(final_v, v);
    sol.values = std::move(final_v);
    return sol;
}

std::vector<ValueFunction> n_stage_values(const GamblingGame& game, std::size_t n) {
    if (n < 1) throw input_error("n-stage values: n must be at least 1");
    std::vector<ValueFunction> vs;
    vs.reserve(n);
    vs.emplace_back(game.payoff());
    // The recursion is the stage game at lambda = 1/(k+1):
    //   (1/(k+1)) * (u + k * v_k)  =  lambda*u + (1-lambda)*v_k.
    for (std::size_t k = 1; k < n; ++k) {
        const double lambda = 1.0 / static_cast<double>(k + 1);
        ValueFunction next(game.nx(), game.ny());
        for (std::size_t x = 0; x < game.nx(); ++x)
            for (std::size_t y = 0; y < game.ny(); ++y)
                next(x, y) =
                    solve_matrix_game(stage_game_matrix(game, vs.back(), lambda, x, y)).value;
        vs.push_back(std::move(next));
    }
    return vs;
}

SweepTable lambda_sweep(const GamblingGame& game, const std::vector<double>& lambdas,
                        double tol, std::int64_t max_iter, bool warm_start) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        check_lambda(lambdas[i]);
        if (i > 0 && lambdas[i] >= lambdas[i - 1])
            throw input_error("lambda sweep: lambdas must be strictly decreasing");
    }
    SweepTable table;
    const ValueFunction* seed = nullptr;
    for (double lambda : lambdas) {
        SweepRow row;
        row.lambda = lambda;
        try {
            auto sol = solve_discounted(game, lambda, tol, max_iter, seed);
            row.values = std::move(sol.values);
            row.residual = sol.residual;
            row.iterations = sol.iterations;
        } catch (const numerical_error& e) {
            row.converged = false;
            row.error = e.what();
            row.residual = e.residual();
        }
        table.rows.push_back(std::move(row));
        if (warm_start && table.rows.back().converged) seed = &table.rows.back().values;
    }
    return table;
}

}  // namespace gg
