#include "gglab/charact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gglab/lp.hpp"

namespace gg {
namespace {

constexpr double kDiracSkipTol = 1e-7;

void require_dims(const GamblingGame& game, const ValueFunction& v, const char* who) {
    if (v.nx() != game.nx() || v.ny() != game.ny())
        throw input_error(std::string(who) + ": value function dimension mismatch");
}

PredicateReport cellwise_report(double worst, std::size_t wx, std::size_t wy, double tol) {
    PredicateReport r;
    r.flag = worst <= tol ? Flag::pass : Flag::fail;
    r.violation = worst;
    r.cell_x = wx;
    r.cell_y = wy;
    return r;
}

double off_mass(const Distribution& g, std::size_t own) {
    double s = 0.0;
    for (std::size_t z = 0; z < g.size(); ++z)
        if (z != own) s += g.weight(z);
    return s;
}

}  // namespace

const char* flag_name(Flag f) {
    switch (f) {
        case Flag::pass: return "pass";
        case Flag::fail: return "fail";
        case Flag::not_run: return "not-run";
        case Flag::indeterminate: return "indeterminate";
    }
    return "?";
}

PredicateReport check_excessive(const GamblingGame& game, const ValueFunction& v, double tol) {
    require_dims(game, v, "check_excessive");
    double worst = 0.0;
    std::size_t wx = 0, wy = 0;
    for (std::size_t x = 0; x < game.nx(); ++x) {
        const auto& gens = game.house1().transition(x).generators();
        for (std::size_t y = 0; y < game.ny(); ++y) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& g : gens) best = std::max(best, affine_eval_x(v, g, y));
            const double viol = std::abs(v(x, y) - best);
            if (viol > worst) { worst = viol; wx = x; wy = y; }
        }
    }
    return cellwise_report(worst, wx, wy, tol);
}

PredicateReport check_depressive(const GamblingGame& game, const ValueFunction& v, double tol) {
    require_dims(game, v, "check_depressive");
    double worst = 0.0;
    std::size_t wx = 0, wy = 0;
    for (std::size_t y = 0; y < game.ny(); ++y) {
        const auto& gens = game.house2().transition(y).generators();
        for (std::size_t x = 0; x < game.nx(); ++x) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& h : gens) best = std::min(best, affine_eval_y(v, x, h));
            const double viol = std::abs(v(x, y) - best);
            if (viol > worst) { worst = viol; wx = x; wy = y; }
        }
    }
    return cellwise_report(worst, wx, wy, tol);
}

PredicateReport check_balanced(const GamblingGame& game, const ValueFunction& v, double tol) {
    require_dims(game, v, "check_balanced");
    double worst = 0.0;
    std::size_t wx = 0, wy = 0;
    for (std::size_t x = 0; x < game.nx(); ++x) {
        const auto& gx = game.house1().transition(x).generators();
        for (std::size_t y = 0; y < game.ny(); ++y) {
            const auto& hy = game.house2().transition(y).generators();
            Matrix m(gx.size(), hy.size());
            for (std::size_t i = 0; i < gx.size(); ++i)
                for (std::size_t j = 0; j < hy.size(); ++j)
                    m(i, j) = affine_eval(v, gx[i], hy[j]);
            const double viol = std::abs(v(x, y) - solve_matrix_game(m).value);
            if (viol > worst) { worst = viol; wx = x; wy = y; }
        }
    }
    return cellwise_report(worst, wx, wy, tol);
}

ValueFunction reduite_exc(const GamblingGame& game, const ValueFunction& g, double tol,
                          std::int64_t max_sweeps) {
    require_dims(game, g, "reduite_exc");
    ValueFunction w = g;
    for (std::int64_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double step = 0.0;
        for (std::size_t x = 0; x < game.nx(); ++x) {
            const auto& gens = game.house1().transition(x).generators();
            for (std::size_t y = 0; y < game.ny(); ++y) {
                double best = g(x, y);
                for (const auto& gen : gens) {
                    const double off = off_mass(gen, x);
                    if (off <= 1e-300) continue;  // pure self-loop
                    double num = 0.0;
                    for (std::size_t z = 0; z < game.nx(); ++z)
                        if (z != x) num += gen.weight(z) * w(z, y);
                    best = std::max(best, num / off);
                }
                if (best > w(x, y)) {
                    step = std::max(step, best - w(x, y));
                    w(x, y) = best;
                }
            }
        }
        if (step <= tol) return w;
    }
    throw numerical_error("reduite_exc: sweep budget exhausted", tol);
}

ValueFunction reduite_dep(const GamblingGame& game, const ValueFunction& g, double tol,
                          std::int64_t max_sweeps) {
    require_dims(game, g, "reduite_dep");
    ValueFunction w = g;
    for (std::int64_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double step = 0.0;
        for (std::size_t y = 0; y < game.ny(); ++y) {
            const auto& gens = game.house2().transition(y).generators();
            for (std::size_t x = 0; x < game.nx(); ++x) {
                double best = g(x, y);
                for (const auto& gen : gens) {
                    const double off = off_mass(gen, y);
                    if (off <= 1e-300) continue;
                    double num = 0.0;
                    for (std::size_t z = 0; z < game.ny(); ++z)
                        if (z != y) num += gen.weight(z) * w(x, z);
                    best = std::min(best, num / off);
                }
                if (best < w(x, y)) {
                    step = std::max(step, w(x, y) - best);
                    w(x, y) = best;
                }
            }
        }
        if (step <= tol) return w;
    }
    throw numerical_error("reduite_dep: sweep budget exhausted", tol);
}

PCheckResult check_P(const GamblingGame& game, const ValueFunction& v, Side side,
                     ReachKind reach_kind, double tol, const ReachableSets* reach) {
    require_dims(game, v, "check_P");
    const GamblingHouse& house = side == Side::one ? game.house1() : game.house2();
    std::optional<ReachableSets> own;
    if (reach_kind == ReachKind::infinite && reach == nullptr) {
        own.emplace(house);
        reach = &*own;
    }

    const ValueFunction u = game.payoff_as_values();
    PCheckResult out;
    out.witnesses.resize(game.nx() * game.ny());
    double worst = 0.0;
    std::size_t wx = 0, wy = 0;
    for (std::size_t x = 0; x < game.nx(); ++x)
        for (std::size_t y = 0; y < game.ny(); ++y) {
            const std::size_t own_state = side == Side::one ? x : y;
            const auto& vertices = reach_kind == ReachKind::infinite
                                       ? reach->at(own_state).polytope.vertices
                                       : house.transition(own_state).generators();
            const std::size_t k = vertices.size();
            // Per vertex: a = v~ along the own side, b = u~ along the own side.
            std::vector<double> a(k), b(k);
            for (std::size_t i = 0; i < k; ++i) {
                if (side == Side::one) {
                    a[i] = affine_eval_x(v, vertices[i], y);
                    b[i] = affine_eval_x(u, vertices[i], y);
                } else {
                    a[i] = affine_eval_y(v, x, vertices[i]);
                    b[i] = affine_eval_y(u, x, vertices[i]);
                }
            }
            // Minimize s subject to |mu.a - v(x,y)| <= s and the payoff-side
            // inequality relaxed by s; variables mu (k) and s.
            std::vector<double> c(k + 1, 0.0);
            c[k] = 1.0;
            std::vector<lp::Constraint> lprows;
            {
                lp::Constraint r{std::vector<double>(k + 1, 0.0), lp::Rel::le, v(x, y)};
                for (std::size_t i = 0; i < k; ++i) r.a[i] = a[i];
                r.a[k] = -1.0;
                lprows.push_back(std::move(r));
            }
            {
                lp::Constraint r{std::vector<double>(k + 1, 0.0), lp::Rel::ge, v(x, y)};
                for (std::size_t i = 0; i < k; ++i) r.a[i] = a[i];
                r.a[k] = 1.0;
                lprows.push_back(std::move(r));
            }
            {
                // Side one: u~(p) >= v~(p) - s;  side two: u~(q) <= v~(q) + s.
                lp::Constraint r{std::vector<double>(k + 1, 0.0), lp::Rel::ge, 0.0};
                for (std::size_t i = 0; i < k; ++i)
                    r.a[i] = side == Side::one ? b[i] - a[i] : a[i] - b[i];
                r.a[k] = 1.0;
                lprows.push_back(std::move(r));
            }
            {
                lp::Constraint r{std::vector<double>(k + 1, 0.0), lp::Rel::eq, 1.0};
                for (std::size_t i = 0; i < k; ++i) r.a[i] = 1.0;
                lprows.push_back(std::move(r));
            }
            auto res = lp::solve(c, lprows);
            if (!res.ok())
                throw numerical_error("check_P: feasibility LP failed", res.infeasibility);
            const double s = std::max(0.0, res.objective);
            if (s <= tol) {
                std::vector<double> wts(house.num_states(), 0.0);
                double mass = 0.0;
                for (std::size_t i = 0; i < k; ++i) mass += res.x[i];
                for (std::size_t i = 0; i < k; ++i) {
                    if (res.x[i] <= 0.0) continue;
                    for (std::size_t z = 0; z < wts.size(); ++z)
                        wts[z] += res.x[i] / mass * vertices[i].weight(z);
                }
                out.witnesses[x * game.ny() + y] = Distribution(house.space(), std::move(wts));
            }
            if (s > worst) { worst = s; wx = x; wy = y; }
        }
    out.report = cellwise_report(worst, wx, wy, tol);
    return out;
}

MzReport check_MZ(const GamblingGame& game, const ValueFunction& v, double tol) {
    require_dims(game, v, "check_MZ");
    ValueFunction lo(game.nx(), game.ny()), hi(game.nx(), game.ny());
    for (std::size_t x = 0; x < game.nx(); ++x)
        for (std::size_t y = 0; y < game.ny(); ++y) {
            lo(x, y) = std::min(game.payoff(x, y), v(x, y));
            hi(x, y) = std::max(game.payoff(x, y), v(x, y));
        }
    MzReport rep;
    {
        const ValueFunction exc = reduite_exc(game, lo);
        double worst = 0.0;
        std::size_t wx = 0, wy = 0;
        for (std::size_t x = 0; x < game.nx(); ++x)
            for (std::size_t y = 0; y < game.ny(); ++y) {
                const double d = std::abs(exc(x, y) - v(x, y));
                if (d > worst) { worst = d; wx = x; wy = y; }
            }
        rep.mz1 = cellwise_report(worst, wx, wy, tol);
    }
    {
        const ValueFunction dep = reduite_dep(game, hi);
        double worst = 0.0;
        std::size_t wx = 0, wy = 0;
        for (std::size_t x = 0; x < game.nx(); ++x)
            for (std::size_t y = 0; y < game.ny(); ++y) {
                const double d = std::abs(dep(x, y) - v(x, y));
                if (d > worst) { worst = d; wx = x; wy = y; }
            }
        rep.mz2 = cellwise_report(worst, wx, wy, tol);
    }
    return rep;
}

EReport check_E(const GamblingGame& game, const ValueFunction& v, double tol,
                const ReachableSets* reach1, const ReachableSets* reach2) {
    require_dims(game, v, "check_E");
    std::optional<ReachableSets> own1, own2;
    if (!reach1) { own1.emplace(game.house1()); reach1 = &*own1; }
    if (!reach2) { own2.emplace(game.house2()); reach2 = &*own2; }

    EReport rep;
    double worst1 = 0.0, worst2 = 0.0;
    std::size_t w1x = 0, w1y = 0, w2x = 0, w2y = 0;
    for (std::size_t x = 0; x < game.nx(); ++x)
        for (std::size_t y = 0; y < game.ny(); ++y) {
            // Side 1 extremeness of x for v(., y).
            double m1 = -std::numeric_limits<double>::infinity();
            for (const auto& p : reach1->at(x).polytope.vertices) {
                if (2.0 * off_mass(p, x) <= kDiracSkipTol) continue;
                m1 = std::max(m1, affine_eval_x(v, p, y));
            }
            if (m1 <= v(x, y) - 2.0 * tol) {
                const double viol = v(x, y) - game.payoff(x, y);
                if (viol > worst1) { worst1 = viol; w1x = x; w1y = y; }
            } else if (m1 < v(x, y) - tol) {
                ++rep.indeterminate_cells;
            }
            // Side 2 extremeness of y for v(x, .).
            double m2 = std::numeric_limits<double>::infinity();
            for (const auto& q : reach2->at(y).polytope.vertices) {
                if (2.0 * off_mass(q, y) <= kDiracSkipTol) continue;
                m2 = std::min(m2, affine_eval_y(v, x, q));
            }
            if (m2 >= v(x, y) + 2.0 * tol) {
                const double viol = game.payoff(x, y) - v(x, y);
                if (viol > worst2) { worst2 = viol; w2x = x; w2y = y; }
            } else if (m2 > v(x, y) + tol) {
                ++rep.indeterminate_cells;
            }
        }
    rep.e1 = cellwise_report(std::max(0.0, worst1), w1x, w1y, tol);
    rep.e2 = cellwise_report(std::max(0.0, worst2), w2x, w2y, tol);
    return rep;
}

CharacterizationReport characterize(const GamblingGame& game, const ValueFunction& v,
                                    double tol, bool full) {
    CharacterizationReport rep;
    rep.excessive = check_excessive(game, v, tol);
    rep.depressive = check_depressive(game, v, tol);
    rep.balanced = check_balanced(game, v, tol);
    if (!full) return rep;
    ReachableSets reach1(game.house1());
    ReachableSets reach2(game.house2());
    rep.p1 = check_P(game, v, Side::one, ReachKind::infinite, tol, &reach1).report;
    rep.p2 = check_P(game, v, Side::two, ReachKind::infinite, tol, &reach2).report;
    auto mz = check_MZ(game, v, tol);
    rep.mz1 = mz.mz1;
    rep.mz2 = mz.mz2;
    auto e = check_E(game, v, tol, &reach1, &reach2);
    rep.e1 = e.e1;
    rep.e2 = e.e2;
    return rep;
}

LimitResult limit_value(const GamblingGame& game, LimitMethod method, const LimitParams& params) {
    LimitResult out;
    if (method == LimitMethod::sweep) {
        out.method = "sweep";
        out.sweep = lambda_sweep(game, params.lambdas, params.solver_tol, params.max_iter);
        const SweepRow* last = nullptr;
        for (const auto& row : out.sweep.rows)
            if (row.converged) last = &row;
        if (!last) throw numerical_error("limit_value: no sweep row converged");
        out.values = last->values;

        // Richardson on the last three converged rows, first eliminating the
        // sqrt(lambda) term, then the linear one.
        std::vector<const SweepRow*> rows;
        for (const auto& row : out.sweep.rows)
            if (row.converged) rows.push_back(&row);
        if (rows.size() >= 3) {
            const auto& r0 = *rows[rows.size() - 3];
            const auto& r1 = *rows[rows.size() - 2];
            const auto& r2 = *rows[rows.size() - 1];
            ValueFunction extrap(game.nx(), game.ny());
            for (std::size_t x = 0; x < game.nx(); ++x)
                for (std::size_t y = 0; y < game.ny(); ++y) {
                    const double s1 = std::sqrt(r1.lambda / r0.lambda);
                    const double s2 = std::sqrt(r2.lambda / r1.lambda);
                    const double e1 = (r1.values(x, y) - s1 * r0.values(x, y)) / (1.0 - s1);
                    const double e2 = (r2.values(x, y) - s2 * r1.values(x, y)) / (1.0 - s2);
                    const double rho = r2.lambda / r1.lambda;
                    extrap(x, y) = (e2 - rho * e1) / (1.0 - rho);
                }
            out.extrapolation = std::move(extrap);
        }
    } else {
        out.method = "mz-iteration";
        ValueFunction v = game.payoff_as_values();
        double step = std::numeric_limits<double>::infinity();
        for (std::int64_t it = 0; it < params.mz_max_iter; ++it) {
            ValueFunction lo(game.nx(), game.ny()), hi(game.nx(), game.ny());
            for (std::size_t x = 0; x < game.nx(); ++x)
                for (std::size_t y = 0; y < game.ny(); ++y) {
                    lo(x, y) = std::min(game.payoff(x, y), v(x, y));
                    hi(x, y) = std::max(game.payoff(x, y), v(x, y));
                }
            ValueFunction next(game.nx(), game.ny());
            if (params.mz_alternating) {
                const ValueFunction exc = reduite_exc(game, lo);
                ValueFunction mid(game.nx(), game.ny());
                for (std::size_t x = 0; x < game.nx(); ++x)
                    for (std::size_t y = 0; y < game.ny(); ++y)
                        mid(x, y) = std::max(game.payoff(x, y), exc(x, y));
                next = reduite_dep(game, mid);
            } else {
                const ValueFunction exc = reduite_exc(game, lo);
                const ValueFunction dep = reduite_dep(game, hi);
                for (std::size_t x = 0; x < game.nx(); ++x)
                    for (std::size_t y = 0; y < game.ny(); ++y)
                        next(x, y) = 0.5 * (exc(x, y) + dep(x, y));
            }
            step = ValueFunction::max_abs_diff(next, v);
            v = std::move(next);
            out.mz_iterations = it + 1;
            if (step <= params.mz_tol) break;
        }
        if (step > params.mz_tol)
            throw numerical_error("limit_value: mz-iteration did not converge", step);
        out.values = std::move(v);
    }
    out.report = characterize(game, out.values, params.check_tol, params.full_report);
    return out;
}

// --- one-player layer --------------------------------------------------------

GamblingGame one_player_game(const GamblingHouse& house, const std::vector<double>& u) {
    if (u.size() != house.num_states())
        throw input_error("one_player_game: payoff size mismatch");
    auto yspace = MetricSpace::discrete({"*"});
    std::vector<TransitionPolytope> ytrans;
    ytrans.emplace_back(std::vector<Distribution>{Distribution::dirac(yspace, 0)});
    GamblingHouse house2(yspace, std::move(ytrans));
    Matrix payoff(house.num_states(), 1);
    for (std::size_t x = 0; x < u.size(); ++x) payoff(x, 0) = u[x];
    return GamblingGame(house, std::move(house2), std::move(payoff));
}

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) < 1e-300)
            throw numerical_error("policy evaluation: singular system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = a(i, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

}  // namespace

std::vector<double> solve_discounted_one_player(const GamblingHouse& house,
                                                const std::vector<double>& u, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw input_error("one-player solve: lambda must be in (0,1]");
    if (u.size() != house.num_states())
        throw input_error("one-player solve: payoff size mismatch");
    const std::size_t n = house.num_states();

    // Policy iteration: evaluate v = lambda*u + (1-lambda) P v for the current
    // generator choice, then improve greedily; exact at any lambda.
    std::vector<std::size_t> policy(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        const auto& gens = house.transition(x).generators();
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < gens.size(); ++k) {
            double s = 0.0;
            for (std::size_t z = 0; z < n; ++z) s += gens[k].weight(z) * u[z];
            if (s > best + 1e-15) { best = s; policy[x] = k; }
        }
    }
    std::vector<double> v(n, 0.0);
    for (int round = 0; round < 1000; ++round) {
        Matrix a(n, n, 0.0);
        std::vector<double> b(n);
        for (std::size_t x = 0; x < n; ++x) {
            const auto& g = house.transition(x).generator(policy[x]);
            for (std::size_t z = 0; z < n; ++z) a(x, z) = -(1.0 - lambda) * g.weight(z);
            a(x, x) += 1.0;
            b[x] = lambda * u[x];
        }
        v = solve_linear(std::move(a), std::move(b));

        bool changed = false;
        for (std::size_t x = 0; x < n; ++x) {
            const auto& gens = house.transition(x).generators();
            std::size_t best_k = policy[x];
            double best = 0.0;
            for (std::size_t z = 0; z < n; ++z)
                best += gens[policy[x]].weight(z) * v[z];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                double s = 0.0;
                for (std::size_t z = 0; z < n; ++z) s += gens[k].weight(z) * v[z];
                if (s > best + 1e-14) { best = s; best_k = k; }
            }
            if (best_k != policy[x]) { policy[x] = best_k; changed = true; }
        }
        if (!changed) return v;
    }
    throw numerical_error("one-player solve: policy iteration did not settle");
}

OnePlayerLimit one_player_limit(const GamblingHouse& house, const std::vector<double>& u,
                                double tol) {
    const std::size_t n = house.num_states();
    OnePlayerLimit out;

    GamblingGame game = one_player_game(house, u);
    ValueFunction g = game.payoff_as_values();
    const ValueFunction red = reduite_exc(game, g, 1e-13);
    out.values.resize(n);
    for (std::size_t x = 0; x < n; ++x) out.values[x] = red(x, 0);

    ReachOptions ropts;
    ropts.tol = 1e-9;
    ReachableSets reach(house, ropts);
    out.reach_based.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : reach.at(x).polytope.vertices) {
            double s = 0.0;
            for (std::size_t z = 0; z < n; ++z) s += p.weight(z) * u[z];
            best = std::max(best, s);
        }
        out.reach_based[x] = best;
    }

    // Tiny-lambda sweep via policy iteration plus two-stage Richardson with a
    // sqrt(lambda) leading term.
    const double l0 = 1e-11, l1 = 1e-12, l2 = 1e-13;
    const auto v0 = solve_discounted_one_player(house, u, l0);
    const auto v1 = solve_discounted_one_player(house, u, l1);
    const auto v2 = solve_discounted_one_player(house, u, l2);
    out.sweep_based.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        const double s1 = std::sqrt(l1 / l0), s2 = std::sqrt(l2 / l1);
        const double e1 = (v1[x] - s1 * v0[x]) / (1.0 - s1);
        const double e2 = (v2[x] - s2 * v1[x]) / (1.0 - s2);
        const double rho = l2 / l1;
        out.sweep_based[x] = (e2 - rho * e1) / (1.0 - rho);
    }

    for (std::size_t x = 0; x < n; ++x) {
        out.discrepancy = std::max(out.discrepancy, std::abs(out.values[x] - out.reach_based[x]));
        out.discrepancy = std::max(out.discrepancy, std::abs(out.values[x] - out.sweep_based[x]));
        out.discrepancy =
            std::max(out.discrepancy, std::abs(out.reach_based[x] - out.sweep_based[x]));
    }
    if (out.discrepancy > tol) {
        std::string msg = "one_player_limit: methods disagree (reduite/reachable/sweep):";
        for (std::size_t x = 0; x < n; ++x)
            msg += " [" + std::to_string(out.values[x]) + "," +
                   std::to_string(out.reach_based[x]) + "," + std::to_string(out.sweep_based[x]) +
                   "]";
        throw numerical_error(msg, out.discrepancy);
    }
    return out;
}

}  // namespace gg
