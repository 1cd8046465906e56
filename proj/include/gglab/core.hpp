#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gglab/space.hpp"

namespace gg {

/// Convex compact set of distributions given by a finite generator list.
/// Duplicates and redundant generators are permitted; the represented set is
/// the convex hull.
class TransitionPolytope {
public:
    explicit TransitionPolytope(std::vector<Distribution> generators);

    const std::vector<Distribution>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    const Distribution& generator(std::size_t k) const { return generators_[k]; }
    const MetricSpacePtr& space() const { return generators_.front().space(); }

private:
    std::vector<Distribution> generators_;
};

/// A state space with one transition polytope per state (the set-valued map
/// Gamma: X -> compact convex subsets of Delta(X)).
class GamblingHouse {
public:
    GamblingHouse(MetricSpacePtr space, std::vector<TransitionPolytope> transitions);

    const MetricSpacePtr& space() const { return space_; }
    std::size_t num_states() const { return space_->size(); }
    const TransitionPolytope& transition(std::size_t x) const { return transitions_[x]; }

private:
    MetricSpacePtr space_;
    std::vector<TransitionPolytope> transitions_;
};

/// Real matrix indexed by X x Y. Houses discounted values, n-stage values,
/// limits and candidate limits; for one-player use the Y dimension is 1.
class ValueFunction {
public:
    ValueFunction(std::size_t nx, std::size_t ny, double fill = 0.0)
        : values_(nx, ny, fill) {}
    explicit ValueFunction(Matrix values) : values_(std::move(values)) {}

    std::size_t nx() const { return values_.rows(); }
    std::size_t ny() const { return values_.cols(); }
    double& operator()(std::size_t x, std::size_t y) { return values_(x, y); }
    double operator()(std::size_t x, std::size_t y) const { return values_(x, y); }
    const Matrix& matrix() const { return values_; }

    static double max_abs_diff(const ValueFunction& a, const ValueFunction& b) {
        return Matrix::max_abs_diff(a.values_, b.values_);
    }

private:
    Matrix values_;
};

/// Two houses plus a running payoff u on X x Y; Player 1 (house 1, states X)
/// maximizes, Player 2 minimizes.
class GamblingGame {
public:
    GamblingGame(GamblingHouse house1, GamblingHouse house2, Matrix payoff);

    const GamblingHouse& house1() const { return house1_; }
    const GamblingHouse& house2() const { return house2_; }
    const Matrix& payoff() const { return payoff_; }
    double payoff(std::size_t x, std::size_t y) const { return payoff_(x, y); }
    std::size_t nx() const { return house1_.num_states(); }
    std::size_t ny() const { return house2_.num_states(); }
    double min_payoff() const { return min_u_; }
    double max_payoff() const { return max_u_; }
    double payoff_range() const { return max_u_ - min_u_; }

    ValueFunction payoff_as_values() const { return ValueFunction(payoff_); }

private:
    GamblingHouse house1_;
    GamblingHouse house2_;
    Matrix payoff_;
    double min_u_, max_u_;
};

// ---------------------------------------------------------------------------
// Operations

/// Kantorovich-Rubinstein (Wasserstein-1) distance between two distributions
/// on the same space, computed as a dense transportation linear program.
double kr_distance(const Distribution& p, const Distribution& q, double tol = kLpTol);

/// min over the polytope conv(vertices) of kr_distance(p, .): one linear
/// program combining transport and convex-combination variables.
double kr_distance_to_polytope(const Distribution& p,
                               const std::vector<Distribution>& vertices,
                               double tol = kLpTol);

/// Smallest L1 deviation between `point` and the convex hull of `vertices`,
/// i.e. min ||point - sum_k mu_k v_k||_1 over probability weights mu. Zero
/// (within tolerance) iff the point is a member of the hull. Used for all
/// membership and redundancy tests; the KR metric is reserved for geometric
/// quantities.
double hull_l1_deviation(const std::vector<double>& point,
                         const std::vector<Distribution>& vertices,
                         double tol = kLpTol);

/// Affine extension: sum_x sum_y p(x) q(y) v(x,y). Bilinear in (p, q).
double affine_eval(const ValueFunction& v, const Distribution& p, const Distribution& q);

/// Affine extension in the first argument only: sum_x p(x) v(x, y).
double affine_eval_x(const ValueFunction& v, const Distribution& p, std::size_t y);

/// Affine extension in the second argument only: sum_y q(y) v(x, y).
double affine_eval_y(const ValueFunction& v, std::size_t x, const Distribution& q);

struct StateCheck {
    std::size_t state = 0;
    bool pass = false;
    double violation = 0.0;  // membership deviation or distance excess
    std::string note;
};

struct HouseCheckReport {
    bool pass = false;
    double worst_violation = 0.0;
    std::optional<std::size_t> witness_state;
    std::vector<StateCheck> per_state;
};

/// Leavability: delta_x lies in Gamma(x) (membership LP, deviation <= tol)
/// for every state x.
HouseCheckReport check_leavable(const GamblingHouse& house, double tol = kLpTol);

struct PairCheck {
    std::size_t x = 0, x_other = 0, generator = 0;
    double excess = 0.0;  // min-distance minus d(x, x')
};

struct NonexpansiveReport {
    bool pass = false;
    PairCheck worst;
    double worst_excess = 0.0;
};

/// Non-expansivity: for every ordered state pair (x, x') and every generator
/// p of Gamma(x), min over Gamma(x') of d_KR(p, .) <= d(x, x') + tol.
/// Checking generators suffices: the constraint set is convex and the
/// distance is convex in p.
NonexpansiveReport check_nonexpansive(const GamblingHouse& house, double tol = kLpTol);

}  // namespace gg
