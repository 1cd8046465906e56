#pragma once

#include <string>
#include <vector>

#include "gglab/shapley.hpp"

namespace gg {

/// Action set for the 3x3 counterexample transitions. `grid` stands for the
/// full interval [lo, hi] (materialized on an evenly spaced grid when
/// generators are needed, treated as the continuous interval by the reduced
/// solver); `finite` is an explicit point list; `lacunary` is the geometric
/// family {4^-1, ..., 4^-depth} plus 0.
struct ActionSet {
    enum class Kind { grid, finite, lacunary };

    Kind kind = Kind::grid;
    double lo = 0.0, hi = 0.0;
    int depth = 0;                // lacunary depth
    std::vector<double> points;   // materialized, sorted ascending, contains 0

    static ActionSet grid(double lo, double hi, int intervals);
    static ActionSet finite(std::vector<double> pts);
    static ActionSet lacunary(int depth);

    double min() const { return points.front(); }
    double max() const { return points.back(); }
    std::string describe() const;
};

/// The 3x3 game of the divergence construction: X = {a,b,c}, Y = {a',b',c'},
/// u = 0 on the diagonal and 1 off it, both houses move a<->b with chances
/// (alpha, alpha^2) drawn from I (resp. J) and c is absorbing. Discrete
/// metric with d = 2.
GamblingGame build_counterexample_game(const ActionSet& i_set, const ActionSet& j_set);

/// z = 16 lambda / (1 + 15 lambda): the value at (c, a') in closed form.
double z_closed_form(double lambda);

/// Solution of the reduced two-equation system at one discount factor.
struct ReducedSolution {
    double lambda = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;
    double alpha_star = 0.0, beta_star = 0.0;
    double residual_x = 0.0, residual_y = 0.0;
    std::string method;  // "value-iteration" or "root-finder"
    bool small_lambda_regime = true;  // lambda <= 1/32, the validity regime
};

/// Solve the coupled system
///   lambda x = (1-lambda) max_{alpha in I} (alpha (y-x) + alpha^2 (z-x))
///   lambda y = lambda + (1-lambda) min_{beta in [0,1/4]} (beta (x-y) + beta^2 (1-y))
/// with z in closed form. The inner min is closed form; the inner max
/// enumerates finite/lacunary points and uses the clamped stationary point on
/// grid (interval) sets. For lambda >= 1e-4, damped value iteration mirroring
/// the Shapley recursion; below that, nested bisection (the y-residual is
/// strictly increasing in y). In the overlap both must agree within 10 tol.
ReducedSolution solve_reduced(const ActionSet& i_set, double lambda, double tol = 1e-12);

struct ScanRow {
    int n = 0;
    double lambda_hi = 0.0, x_hi = 0.0;  // 4^-2n: sqrt(lambda) in I
    double lambda_lo = 0.0, x_lo = 0.0;  // 4^(1-2n): (sqrt(l)/2, 2 sqrt(l)) misses I
};

/// Theorem-2-part-3 demonstration: along the lacunary family, the reduced
/// values oscillate between ~1/2 and <= ~4/9 depending on whether
/// sqrt(lambda) hits the action set.
std::vector<ScanRow> divergence_scan(int depth);

struct DominanceReport {
    bool pass = false;
    double worst_violation = 0.0;
    double worst_alpha = 0.0, worst_beta = 0.0;
};

/// Rebuild the bilinear stage payoffs at (a,a') and (b,a') from a reduced
/// solution and check the dominant pure strategies (beta = 0 for Player 2 at
/// (a,a'); alpha = 0 for Player 1 at (b,a')) over the materialized grids.
/// Only meaningful in the small-lambda regime (lambda <= 1/32).
DominanceReport verify_dominance(const ActionSet& i_set, const ActionSet& j_set, double lambda,
                                 const ReducedSolution& sol, double tol = 1e-9);

struct CrossValidationReport {
    double lambda = 0.0;
    ReducedSolution reduced;
    double full_aa = 0.0, full_ab = 0.0, full_ca = 0.0;
    double delta_x = 0.0, delta_y = 0.0, delta_z = 0.0;
    double symmetry_violation = 0.0;  // |v(a,a')-v(b,b')| etc.
    double exact_cells_violation = 0.0;  // |v(c,c')|, |v(a,c')-1|
    bool pass = false;
};

/// Ties the reduced system to the general solver: build the game from the
/// materialized action sets, run the full discounted solve, and compare
/// (a,a'), (a,b'), (c,a') against (x, y, z).
CrossValidationReport cross_validate_full(const ActionSet& i_set, const ActionSet& j_set,
                                          double lambda, double tol,
                                          double solver_tol = 1e-9);

}  // namespace gg
