#pragma once

#include <optional>
#include <vector>

#include "gglab/core.hpp"

namespace gg {

/// Value and optimal mixed strategies of a finite zero-sum matrix game
/// (row player maximizes). Optimal strategy sets are faces, not points, so
/// only the value is unique; mixes depend on the deterministic pivot order.
struct MatrixGameSolution {
    double value = 0.0;
    std::vector<double> row_mix;
    std::vector<double> col_mix;
    double duality_gap = 0.0;
    bool pure = false;  // solved by saddle-point shortcut

    /// Barycenters of the mixes over generator polytopes, filled by callers
    /// that know which polytopes the rows/columns index.
    std::optional<Distribution> row_point;
    std::optional<Distribution> col_point;
};

/// Solve the matrix game by the standard pair of primal/dual linear programs
/// (after a positivity shift), with a saddle-point shortcut for games that
/// have one in pure strategies. max-min equals min-max within tol.
MatrixGameSolution solve_matrix_game(const Matrix& m, double tol = kLpTol);

/// Stage game of the discounted Shapley recursion at cell (x, y):
/// entry (i, j) = lambda u(x,y) + (1-lambda) * affine_eval(v, g_i, h_j)
/// over the generators g_i of Gamma(x) and h_j of Lambda(y). Any mixed
/// strategy over generators is payoff-equivalent to the pure choice of its
/// barycenter, so solving this matrix game solves the polytope game.
Matrix stage_game_matrix(const GamblingGame& game, const ValueFunction& v, double lambda,
                         std::size_t x, std::size_t y);

/// Weighted average of a polytope's generators under a probability mix.
Distribution mix_barycenter(const TransitionPolytope& polytope,
                            const std::vector<double>& mix);

}  // namespace gg
