#pragma once

#include <vector>

#include "gglab/common.hpp"

namespace gg::lp {

enum class Rel { le, eq, ge };

struct Constraint {
    std::vector<double> a;
    Rel rel = Rel::eq;
    double b = 0.0;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
    Status status = Status::iteration_limit;
    std::vector<double> x;       // values of the original variables
    double objective = 0.0;
    double infeasibility = 0.0;  // phase-1 residual
    int iterations = 0;

    bool ok() const { return status == Status::optimal; }
};

/// Minimize c.x subject to the given constraints and x >= 0.
///
/// Dense two-phase primal simplex with Bland's rule, so pivoting is
/// deterministic and cycling-free. Every optimization in this artifact goes
/// through here; there is no external solver contract. `tol` is the
/// feasibility tolerance (default 1e-9).
Result solve(const std::vector<double>& c, const std::vector<Constraint>& rows,
             double tol = kLpTol, int max_iter = 0);

/// Convenience: feasibility only (minimize 0).
Result feasible(std::size_t num_vars, const std::vector<Constraint>& rows,
                double tol = kLpTol);

}  // namespace gg::lp
