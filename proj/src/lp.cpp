#include "avoidkit/lp.hpp"

#include <algorithm>

#include "avoidkit/errors.hpp"

namespace avoidkit {

void LpProblem::add_row(std::vector<Rational> coeffs, Rel r, Rational b) {
    if (coeffs.size() != num_vars())
        throw input_error("LP row width does not match variable count");
    rows.push_back(std::move(coeffs));
    rel.push_back(r);
    rhs.push_back(std::move(b));
}

namespace {

/// Dense simplex tableau. Columns = structural + slack + artificial
/// variables; the last column is the right-hand side.
class Tableau {
public:
    Tableau(const LpProblem& p) : n_(p.num_vars()) {
        const std::size_t m = p.rows.size();
        // Normalize to a.x <= b or a.x = b with b >= 0, then attach a
        // slack per inequality and an artificial where the slack cannot
        // serve as the initial basic variable.
        std::vector<std::vector<Rational>> rows(m);
        std::vector<Rational> rhs(m);
        std::vector<int> kind(m); // 0: slack basic, 1: needs artificial
        std::vector<int> slack_sign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            rows[i] = p.rows[i];
            rhs[i] = p.rhs[i];
            LpProblem::Rel r = p.rel[i];
            if (r == LpProblem::Rel::ge) {
                for (auto& v : rows[i]) v = -v;
                rhs[i] = -rhs[i];
                r = LpProblem::Rel::le;
            }
            bool negated = false;
            if (rhs[i].sign() < 0) {
                for (auto& v : rows[i]) v = -v;
                rhs[i] = -rhs[i];
                negated = true;
            }
            if (r == LpProblem::Rel::le) {
                slack_sign[i] = negated ? -1 : 1;
                kind[i] = negated ? 1 : 0;
            } else {
                slack_sign[i] = 0;
                kind[i] = 1;
            }
        }
        std::size_t num_art = 0;
        for (std::size_t i = 0; i < m; ++i) num_art += kind[i];
        slack_begin_ = n_;
        art_begin_ = n_ + m;
        cols_ = art_begin_ + num_art;
        t_.assign(m, std::vector<Rational>(cols_ + 1));
        basis_.assign(m, -1);
        std::size_t art = art_begin_;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = rows[i][j];
            if (slack_sign[i] != 0) t_[i][slack_begin_ + i] = Rational(slack_sign[i]);
            if (kind[i] == 0) {
                basis_[i] = static_cast<int>(slack_begin_ + i);
            } else {
                t_[i][art] = Rational(1);
                basis_[i] = static_cast<int>(art);
                ++art;
            }
        }
        t_rhs_ = std::move(rhs);
    }

    /// Runs both phases; true iff a feasible basis exists.
    bool make_feasible() {
        if (art_begin_ == cols_) return true;
        std::vector<Rational> cost(cols_);
        for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = Rational(-1);
        price_out(cost);
        optimize();
        if (obj_value_.sign() != 0) return false;
        // Drive leftover degenerate artificials out of the basis.
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (static_cast<std::size_t>(basis_[i]) < art_begin_) continue;
            std::size_t j = 0;
            while (j < art_begin_ && t_[i][j].is_zero()) ++j;
            if (j < art_begin_) pivot(i, j);
        }
        // Remaining artificial-basic rows are redundant zero rows.
        for (std::size_t i = t_.size(); i-- > 0;) {
            if (static_cast<std::size_t>(basis_[i]) >= art_begin_) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                t_rhs_.erase(t_rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        cols_ = art_begin_; // artificial columns are dead from here on
        for (auto& row : t_) row.resize(cols_ + 1);
        return true;
    }

    /// Prices out the given cost vector against the current basis and
    /// maximizes. Returns false when unbounded.
    bool maximize(const std::vector<Rational>& objective) {
        std::vector<Rational> cost(cols_);
        for (std::size_t j = 0; j < n_ && j < objective.size(); ++j) cost[j] = objective[j];
        price_out(cost);
        return optimize();
    }

    Rational objective_value() const { return obj_value_; }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(n_);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (static_cast<std::size_t>(basis_[i]) < n_)
                x[static_cast<std::size_t>(basis_[i])] = t_rhs_[i];
        return x;
    }

private:
    void price_out(const std::vector<Rational>& cost) {
        rc_ = cost;
        rc_.resize(cols_);
        obj_value_ = Rational(0);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Rational& cb = cost[static_cast<std::size_t>(basis_[i])];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j < cols_; ++j) rc_[j] -= cb * t_[i][j];
            obj_value_ += cb * t_rhs_[i];
        }
    }

    bool optimize() {
        while (true) {
            // Bland: entering = smallest column with positive reduced cost.
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (rc_[j].sign() > 0) { enter = j; break; }
            if (enter == cols_) return true;
            // Ratio test; ties resolved by smallest basic variable index.
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter].sign() <= 0) continue;
                Rational ratio = t_rhs_[i] / t_[i][enter];
                if (leave == t_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t_.size()) return false; // unbounded
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Rational inv = Rational(1) / t_[row][col];
        for (auto& v : t_[row]) v *= inv;
        t_rhs_[row] *= inv;
        t_[row][col] = Rational(1);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || t_[i][col].is_zero()) continue;
            Rational f = t_[i][col];
            for (std::size_t j = 0; j < cols_; ++j) t_[i][j] -= f * t_[row][j];
            t_[i][col] = Rational(0);
            t_rhs_[i] -= f * t_rhs_[row];
        }
        if (!rc_[col].is_zero()) {
            Rational f = rc_[col];
            for (std::size_t j = 0; j < cols_; ++j) rc_[j] -= f * t_[row][j];
            rc_[col] = Rational(0);
            obj_value_ += f * t_rhs_[row];
        }
        basis_[row] = static_cast<int>(col);
    }

    std::size_t n_ = 0;
    std::size_t slack_begin_ = 0;
    std::size_t art_begin_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> t_rhs_;
    std::vector<Rational> rc_;
    Rational obj_value_;
    std::vector<int> basis_;
};

} // namespace

LpResult lp_solve(const LpProblem& problem) {
    for (const auto& row : problem.rows)
        if (row.size() != problem.num_vars())
            throw input_error("LP row width does not match variable count");
    Tableau tab(problem);
    LpResult result;
    if (!tab.make_feasible()) {
        result.status = LpResult::Status::infeasible;
        return result;
    }
    if (!tab.maximize(problem.objective)) {
        result.status = LpResult::Status::unbounded;
        return result;
    }
    result.status = LpResult::Status::optimal;
    result.objective = tab.objective_value();
    result.x = tab.solution();
    return result;
}

} // namespace avoidkit
