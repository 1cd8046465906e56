#pragma once

#include <cstdint>
#include <vector>

#include "gglab/minimax.hpp"

namespace gg {

/// Fixed point of the discounted Shapley operator, with the optimal
/// stationary choices of the final operator application.
struct DiscountedSolution {
    double lambda = 0.0;
    ValueFunction values{1, 1};
    double residual = 0.0;  // sup-norm of the last iteration step
    std::int64_t iterations = 0;
    std::vector<MatrixGameSolution> strategies;  // indexed x * ny + y

    const MatrixGameSolution& strategy(std::size_t x, std::size_t y, std::size_t ny) const {
        return strategies[x * ny + y];
    }
};

struct SweepRow {
    double lambda = 0.0;
    ValueFunction values{1, 1};
    double residual = 0.0;
    std::int64_t iterations = 0;
    bool converged = true;
    std::string error;
};

/// One discounted solve per lambda, lambdas strictly decreasing.
struct SweepTable {
    std::vector<SweepRow> rows;
};

inline constexpr std::int64_t kDefaultMaxIter = 200'000'000;

/// One application of the Shapley operator
///   Phi(v)(x,y) = value of the stage game at (x,y).
/// Phi is a (1-lambda)-contraction in sup-norm.
ValueFunction shapley_operator(const GamblingGame& game, const ValueFunction& v, double lambda);

/// Iterate v <- Phi(v) from v = 0 until the sup-norm step is at most
/// tol*lambda/(1-lambda), which bounds the true error by tol. `start` can
/// seed the iteration (warm starts across a sweep); correctness is
/// lambda-local so this only affects iteration counts.
DiscountedSolution solve_discounted(const GamblingGame& game, double lambda, double tol = 1e-9,
                                    std::int64_t max_iter = kDefaultMaxIter,
                                    const ValueFunction* start = nullptr);

/// Values of the n-stage games: v_1 = u and
///   v_{n+1}(x,y) = (1/(n+1)) * value of the game with entries
///                  u(x,y) + n * affine_eval(v_n, g_i, h_j).
std::vector<ValueFunction> n_stage_values(const GamblingGame& game, std::size_t n);

/// One DiscountedSolution per lambda (strictly decreasing), warm-starting
/// each row from the previous one unless disabled. Per-row numerical errors
/// are recorded in the row, not fatal to the sweep.
SweepTable lambda_sweep(const GamblingGame& game, const std::vector<double>& lambdas,
                        double tol = 1e-9, std::int64_t max_iter = kDefaultMaxIter,
                        bool warm_start = true);

}  // namespace gg
