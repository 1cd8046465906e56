#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gglab/reach.hpp"
#include "gglab/shapley.hpp"

namespace gg {

enum class Flag { pass, fail, not_run, indeterminate };

const char* flag_name(Flag f);

struct PredicateReport {
    Flag flag = Flag::not_run;
    double violation = 0.0;  // worst violation magnitude (nonnegative)
    std::size_t cell_x = 0, cell_y = 0;
    std::string note;

    bool passed() const { return flag == Flag::pass; }
};

/// Verification flags for the limit-value characterizations. A pass implies
/// the violation is at most the tolerance the check ran with.
struct CharacterizationReport {
    PredicateReport excessive, depressive, balanced;
    PredicateReport p1, p2;
    PredicateReport mz1, mz2;
    PredicateReport e1, e2;
};

/// Excessive w.r.t. X: v(x,y) equals max over generators of Gamma(x) of
/// v~(., delta_y) at every cell (the max over the polytope is attained at a
/// generator).
PredicateReport check_excessive(const GamblingGame& game, const ValueFunction& v,
                                double tol = kCheckTol);

/// Depressive w.r.t. Y: mirror of check_excessive with min over Lambda(y).
PredicateReport check_depressive(const GamblingGame& game, const ValueFunction& v,
                                 double tol = kCheckTol);

/// Balanced: v(x,y) equals the value of the local matrix game with entries
/// v~(g_i, h_j).
PredicateReport check_balanced(const GamblingGame& game, const ValueFunction& v,
                               double tol = kCheckTol);

/// Smallest excessive (w.r.t. X) function not lower than g: monotone limit of
/// cellwise updates from w = g. Updates resolve the self-loop weight exactly
/// (Gauss-Seidel with the current state's mass folded into the candidate), so
/// the sweep count stays proportional to the transition structure rather than
/// to 1/accuracy.
ValueFunction reduite_exc(const GamblingGame& game, const ValueFunction& g, double tol = 1e-12,
                          std::int64_t max_sweeps = 1000000);

/// Largest depressive (w.r.t. Y) function not greater than g; mirror of
/// reduite_exc, implemented independently.
ValueFunction reduite_dep(const GamblingGame& game, const ValueFunction& g, double tol = 1e-12,
                          std::int64_t max_sweeps = 1000000);

enum class Side { one, two };
enum class ReachKind { infinite, one_step };

struct PCheckResult {
    PredicateReport report;
    // One witness per cell when the feasibility program succeeded.
    std::vector<std::optional<Distribution>> witnesses;
};

/// Reach-and-stop condition P1 (side one): at every cell there is a
/// distribution p in Gamma^inf(x) (or Gamma(x) for one_step, the Q variant)
/// with v(x,y) = v~(p,y) <= u(p,y), relaxed to two-sided inequalities at tol.
/// P2 (side two) is the mirror with the payoff inequality flipped.
/// The per-cell LP minimizes the largest violation, so failures carry a
/// magnitude.
PCheckResult check_P(const GamblingGame& game, const ValueFunction& v, Side side,
                     ReachKind reach_kind, double tol = kCheckTol,
                     const ReachableSets* reach = nullptr);

struct MzReport {
    PredicateReport mz1, mz2;
};

/// Mertens-Zamir style system: v = Exc_Gamma min(u,v) and
/// v = Dep_Lambda max(u,v), compared in sup-norm.
MzReport check_MZ(const GamblingGame& game, const ValueFunction& v, double tol = kCheckTol);

struct EReport {
    PredicateReport e1, e2;
    std::size_t indeterminate_cells = 0;
};

/// Extreme-point condition: x is extreme for v(.,y) when every reachable
/// vertex other than delta_x sits strictly below v(x,y); extreme cells must
/// satisfy v <= u (E1), mirrored for E2. Cells within the separation margin
/// are reported indeterminate and excluded.
EReport check_E(const GamblingGame& game, const ValueFunction& v, double tol = kCheckTol,
                const ReachableSets* reach1 = nullptr, const ReachableSets* reach2 = nullptr);

enum class LimitMethod { sweep, mz_iteration };

struct LimitParams {
    std::vector<double> lambdas{1e-1, 1e-2, 1e-3};  // sweep grid, decreasing
    double solver_tol = 1e-9;
    std::int64_t max_iter = kDefaultMaxIter;
    double check_tol = kCheckTol;
    double mz_tol = 1e-10;
    std::int64_t mz_max_iter = 200000;
    bool mz_alternating = false;  // use Dep(max(u, Exc(min(u, .)))) instead of averaging
    bool full_report = true;      // run the P/MZ/E checks (needs reachable sets)
};

struct LimitResult {
    std::string method;
    ValueFunction values{1, 1};
    /// Richardson extrapolation of the last three sweep rows assuming a
    /// sqrt(lambda) leading error term. Recorded for diagnostics, never
    /// asserted: the assumption is an observation, not a theorem.
    std::optional<ValueFunction> extrapolation;
    CharacterizationReport report;
    SweepTable sweep;
    std::int64_t mz_iterations = 0;
};

/// Limit-value candidates with their verification report. The sweep method
/// returns the smallest-lambda values; the mz-iteration solver is heuristic
/// and its output is only trustworthy when the report passes.
LimitResult limit_value(const GamblingGame& game, LimitMethod method,
                        const LimitParams& params = {});

/// Builds the verification report for an externally supplied candidate.
CharacterizationReport characterize(const GamblingGame& game, const ValueFunction& v,
                                    double tol = kCheckTol, bool full = true);

// --- one-player (gambling house / MDP) layer --------------------------------

/// Exact discounted value of a one-player house by policy iteration
/// (linear-system policy evaluation), usable at arbitrarily small lambda.
std::vector<double> solve_discounted_one_player(const GamblingHouse& house,
                                                const std::vector<double>& u, double lambda);

struct OnePlayerLimit {
    std::vector<double> values;       // the reduite values (returned answer)
    std::vector<double> reach_based;  // max of u~ over reachable vertices
    std::vector<double> sweep_based;  // extrapolated tiny-lambda policy-iteration sweep
    double discrepancy = 0.0;         // max pairwise sup-distance of the three
};

/// Limit value of a leavable one-player house computed three independent
/// ways (reduite of u, reachable-set maximum, lambda-sweep extrapolation).
/// Throws numerical_error carrying all three values if they disagree beyond
/// tol.
OnePlayerLimit one_player_limit(const GamblingHouse& house, const std::vector<double>& u,
                                double tol = 1e-6);

/// Wrap a house and a payoff column as a one-player GamblingGame (Y is a
/// singleton whose only move is to stay).
GamblingGame one_player_game(const GamblingHouse& house, const std::vector<double>& u);

}  // namespace gg
