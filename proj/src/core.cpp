#include "gglab/core.hpp"

#include <algorithm>
#include <cmath>

#include "gglab/lp.hpp"

namespace gg {

TransitionPolytope::TransitionPolytope(std::vector<Distribution> generators)
    : generators_(std::move(generators)) {
    if (generators_.empty()) throw input_error("polytope: no generators");
    const auto& s = generators_.front().space();
    for (const auto& g : generators_)
        if (g.space() != s) throw input_error("polytope: generators on different spaces");
}

GamblingHouse::GamblingHouse(MetricSpacePtr space, std::vector<TransitionPolytope> transitions)
    : space_(std::move(space)), transitions_(std::move(transitions)) {
    if (!space_) throw input_error("house: null space");
    if (transitions_.size() != space_->size())
        throw input_error("house: need exactly one transition polytope per state");
    for (const auto& t : transitions_)
        if (t.space() != space_) throw input_error("house: transition on wrong space");
}

GamblingGame::GamblingGame(GamblingHouse house1, GamblingHouse house2, Matrix payoff)
    : house1_(std::move(house1)), house2_(std::move(house2)), payoff_(std::move(payoff)) {
    if (payoff_.rows() != house1_.num_states() || payoff_.cols() != house2_.num_states())
        throw input_error("game: payoff dimensions must match |X| x |Y|");
    min_u_ = payoff_.min();
    max_u_ = payoff_.max();
}

double kr_distance(const Distribution& p, const Distribution& q, double tol) {
    if (p.space() != q.space()) throw input_error("kr_distance: distributions on different spaces");
    const auto& space = *p.space();
    const std::size_t n = space.size();
    if (n == 1) return 0.0;

    // Transportation problem: min sum c_ij pi_ij with row sums p, column sums q.
    std::vector<double> c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = space.dist(i, j);

    std::vector<lp::Constraint> rows;
    rows.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        lp::Constraint r{std::vector<double>(n * n, 0.0), lp::Rel::eq, p.weight(i)};
        for (std::size_t j = 0; j < n; ++j) r.a[i * n + j] = 1.0;
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n; ++j) {
        lp::Constraint r{std::vector<double>(n * n, 0.0), lp::Rel::eq, q.weight(j)};
        for (std::size_t i = 0; i < n; ++i) r.a[i * n + j] = 1.0;
        rows.push_back(std::move(r));
    }
    auto res = lp::solve(c, rows, tol);
    if (!res.ok()) throw numerical_error("kr_distance: transport LP failed", res.infeasibility);
    return std::max(0.0, res.objective);
}

double kr_distance_to_polytope(const Distribution& p,
                               const std::vector<Distribution>& vertices,
                               double tol) {
    if (vertices.empty()) throw input_error("kr_distance_to_polytope: empty vertex list");
    const auto& space = *p.space();
    const std::size_t n = space.size();
    const std::size_t k = vertices.size();
    for (const auto& v : vertices)
        if (v.space() != p.space())
            throw input_error("kr_distance_to_polytope: space mismatch");

    // Variables: pi (n*n transport plan), mu (k hull weights).
    const std::size_t nv = n * n + k;
    std::vector<double> c(nv, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = space.dist(i, j);

    std::vector<lp::Constraint> rows;
    for (std::size_t i = 0; i < n; ++i) {
        lp::Constraint r{std::vector<double>(nv, 0.0), lp::Rel::eq, p.weight(i)};
        for (std::size_t j = 0; j < n; ++j) r.a[i * n + j] = 1.0;
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n; ++j) {
        lp::Constraint r{std::vector<double>(nv, 0.0), lp::Rel::eq, 0.0};
        for (std::size_t i = 0; i < n; ++i) r.a[i * n + j] = 1.0;
        for (std::size_t v = 0; v < k; ++v) r.a[n * n + v] = -vertices[v].weight(j);
        rows.push_back(std::move(r));
    }
    {
        lp::Constraint r{std::vector<double>(nv, 0.0), lp::Rel::eq, 1.0};
        for (std::size_t v = 0; v < k; ++v) r.a[n * n + v] = 1.0;
        rows.push_back(std::move(r));
    }
    auto res = lp::solve(c, rows, tol);
    if (!res.ok())
        throw numerical_error("kr_distance_to_polytope: LP failed", res.infeasibility);
    return std::max(0.0, res.objective);
}

double hull_l1_deviation(const std::vector<double>& point,
                         const std::vector<Distribution>& vertices,
                         double tol) {
    if (vertices.empty()) throw input_error("hull_l1_deviation: empty vertex list");
    const std::size_t n = point.size();
    const std::size_t k = vertices.size();
    for (const auto& v : vertices)
        if (v.size() != n) throw input_error("hull_l1_deviation: dimension mismatch");

    // Variables: mu (k), e+ (n), e- (n); minimize sum(e+ + e-) subject to
    // sum_k mu_k v_k + e+ - e- = point, sum mu = 1.
    const std::size_t nv = k + 2 * n;
    std::vector<double> c(nv, 0.0);
    for (std::size_t i = k; i < nv; ++i) c[i] = 1.0;

    std::vector<lp::Constraint> rows;
    for (std::size_t j = 0; j < n; ++j) {
        lp::Constraint r{std::vector<double>(nv, 0.0), lp::Rel::eq, point[j]};
        for (std::size_t v = 0; v < k; ++v) r.a[v] = vertices[v].weight(j);
        r.a[k + j] = 1.0;
        r.a[k + n + j] = -1.0;
        rows.push_back(std::move(r));
    }
    {
        lp::Constraint r{std::vector<double>(nv, 0.0), lp::Rel::eq, 1.0};
        for (std::size_t v = 0; v < k; ++v) r.a[v] = 1.0;
        rows.push_back(std::move(r));
    }
    auto res = lp::solve(c, rows, tol);
    if (!res.ok()) throw numerical_error("hull_l1_deviation: LP failed", res.infeasibility);
    return std::max(0.0, res.objective);
}

double affine_eval(const ValueFunction& v, const Distribution& p, const Distribution& q) {
    if (p.size() != v.nx() || q.size() != v.ny())
        throw input_error("affine_eval: dimension mismatch");
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double px = p.weight(x);
        if (px == 0.0) continue;
        double row = 0.0;
        for (std::size_t y = 0; y < q.size(); ++y) row += q.weight(y) * v(x, y);
        s += px * row;
    }
    return s;
}

double affine_eval_x(const ValueFunction& v, const Distribution& p, std::size_t y) {
    if (p.size() != v.nx() || y >= v.ny()) throw input_error("affine_eval_x: dimension mismatch");
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) s += p.weight(x) * v(x, y);
    return s;
}

double affine_eval_y(const ValueFunction& v, std::size_t x, const Distribution& q) {
    if (q.size() != v.ny() || x >= v.nx()) throw input_error("affine_eval_y: dimension mismatch");
    double s = 0.0;
    for (std::size_t y = 0; y < q.size(); ++y) s += q.weight(y) * v(x, y);
    return s;
}

HouseCheckReport check_leavable(const GamblingHouse& house, double tol) {
    HouseCheckReport report;
    report.pass = true;
    for (std::size_t x = 0; x < house.num_states(); ++x) {
        std::vector<double> dirac(house.num_states(), 0.0);
        dirac[x] = 1.0;
        const double dev = hull_l1_deviation(dirac, house.transition(x).generators());
        StateCheck sc{x, dev <= tol, dev, {}};
        if (!sc.pass) {
            sc.note = "dirac at " + house.space()->label(x) + " is outside the transition set";
            report.pass = false;
            if (dev > report.worst_violation) {
                report.worst_violation = dev;
                report.witness_state = x;
            }
        }
        report.per_state.push_back(std::move(sc));
    }
    return report;
}

NonexpansiveReport check_nonexpansive(const GamblingHouse& house, double tol) {
    NonexpansiveReport report;
    report.pass = true;
    const auto& space = *house.space();
    for (std::size_t x = 0; x < house.num_states(); ++x) {
        for (std::size_t xo = 0; xo < house.num_states(); ++xo) {
            if (x == xo) continue;
            const auto& gens = house.transition(x).generators();
            const auto& target = house.transition(xo).generators();
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const double dist = kr_distance_to_polytope(gens[k], target);
                const double excess = dist - space.dist(x, xo);
                if (excess > report.worst_excess) {
                    report.worst_excess = excess;
                    report.worst = PairCheck{x, xo, k, excess};
                }
                if (excess > tol) report.pass = false;
            }
        }
    }
    return report;
}

}  // namespace gg
