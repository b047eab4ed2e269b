#pragma once

#include <vector>

#include "avoidkit/rational.hpp"

namespace avoidkit {

/// Small exact-rational linear program, maximization form. All
/// variables are constrained to be nonnegative; callers split free
/// variables into positive and negative parts. Bland's rule keeps the
/// pivoting cycle-free and the result deterministic.
struct LpProblem {
    enum class Rel { le, ge, eq };

    std::vector<Rational> objective;         // maximize objective . x
    std::vector<std::vector<Rational>> rows; // coefficient rows
    std::vector<Rational> rhs;
    std::vector<Rel> rel;

    std::size_t num_vars() const { return objective.size(); }
    void add_row(std::vector<Rational> coeffs, Rel r, Rational b);
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rational objective;
    std::vector<Rational> x;
};

LpResult lp_solve(const LpProblem& problem);

} // namespace avoidkit
