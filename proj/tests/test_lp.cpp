#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gglab/lp.hpp"

using gg::lp::Constraint;
using gg::lp::Rel;
using gg::lp::Status;

TEST_CASE("unique vertex optimum") {
    // min -x - 2y  s.t. x + y <= 4, x <= 3, y <= 2  ->  (2, 2), obj -6
    auto r = gg::lp::solve({-1.0, -2.0},
                           {{{1.0, 1.0}, Rel::le, 4.0},
                            {{1.0, 0.0}, Rel::le, 3.0},
                            {{0.0, 1.0}, Rel::le, 2.0}});
    REQUIRE(r.ok());
    CHECK(r.objective == doctest::Approx(-6.0));
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.x[1] == doctest::Approx(2.0));
}

TEST_CASE("equality constraints") {
    // min x + y  s.t. x + 2y = 3, x - y = 0  ->  x = y = 1
    auto r = gg::lp::solve({1.0, 1.0},
                           {{{1.0, 2.0}, Rel::eq, 3.0},
                            {{1.0, -1.0}, Rel::eq, 0.0}});
    REQUIRE(r.ok());
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible detected") {
    auto r = gg::lp::solve({1.0},
                           {{{1.0}, Rel::ge, 2.0},
                            {{1.0}, Rel::le, 1.0}});
    CHECK(r.status == Status::infeasible);
    CHECK(r.infeasibility > 0.5);
}

TEST_CASE("unbounded detected") {
    auto r = gg::lp::solve({-1.0}, {{{0.0}, Rel::le, 1.0}});
    CHECK(r.status == Status::unbounded);
}

TEST_CASE("negative rhs rows are handled") {
    // x >= 2 written as -x <= -2
    auto r = gg::lp::solve({1.0}, {{{-1.0}, Rel::le, -2.0}});
    REQUIRE(r.ok());
    CHECK(r.x[0] == doctest::Approx(2.0));
}

TEST_CASE("redundant equalities do not break phase 1") {
    auto r = gg::lp::solve({1.0, 0.0},
                           {{{1.0, 1.0}, Rel::eq, 1.0},
                            {{2.0, 2.0}, Rel::eq, 2.0}});
    REQUIRE(r.ok());
    CHECK(r.objective == doctest::Approx(0.0));
}

TEST_CASE("degenerate LP terminates (Bland)") {
    // Classic degenerate corner; Bland's rule must not cycle.
    auto r = gg::lp::solve({-0.75, 150.0, -0.02, 6.0},
                           {{{0.25, -60.0, -0.04, 9.0}, Rel::le, 0.0},
                            {{0.5, -90.0, -0.02, 3.0}, Rel::le, 0.0},
                            {{0.0, 0.0, 1.0, 0.0}, Rel::le, 1.0}});
    REQUIRE(r.ok());
    CHECK(r.objective == doctest::Approx(-0.05));
}

TEST_CASE("random transportation problems satisfy duality bounds") {
    // Feasibility and weak-duality sanity on random instances: the optimum of
    // min c.pi with fixed marginals is between max(c_min) over any row and the
    // greedy upper bound. We only check the LP is optimal, feasible and below
    // the independence coupling.
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> uc(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 5;
        std::vector<double> p(n), q(n), c(n * n);
        double sp = 0, sq = 0;
        for (auto& v : p) { v = uc(rng) + 0.01; sp += v; }
        for (auto& v : q) { v = uc(rng) + 0.01; sq += v; }
        for (auto& v : p) v /= sp;
        for (auto& v : q) v /= sq;
        for (auto& v : c) v = uc(rng);

        std::vector<Constraint> rows;
        for (std::size_t i = 0; i < n; ++i) {
            Constraint row{std::vector<double>(n * n, 0.0), Rel::eq, p[i]};
            for (std::size_t j = 0; j < n; ++j) row.a[i * n + j] = 1.0;
            rows.push_back(std::move(row));
        }
        for (std::size_t j = 0; j < n; ++j) {
            Constraint col{std::vector<double>(n * n, 0.0), Rel::eq, q[j]};
            for (std::size_t i = 0; i < n; ++i) col.a[i * n + j] = 1.0;
            rows.push_back(std::move(col));
        }
        auto r = gg::lp::solve(c, rows);
        REQUIRE(r.ok());
        double indep = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) indep += c[i * n + j] * p[i] * q[j];
        CHECK(r.objective <= indep + 1e-9);
        double mass = 0.0;
        for (double v : r.x) { CHECK(v >= -1e-9); mass += v; }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}
