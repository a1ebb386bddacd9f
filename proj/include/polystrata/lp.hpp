#pragma once

// Exact LP feasibility with strict inequalities.
//
// Strict rows are handled by one extra variable t: every strict row
// a.x > b becomes a.x - t >= b, t <= 1 is added, and t is maximized.
// The system is feasible iff the optimum has t > 0. The simplex runs on
// a dense rational tableau with Bland's rule, so it always terminates.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polystrata/rational.hpp"

namespace polystrata {

enum class Relation { GreaterEqual, Equal };

struct LinearConstraint {
    RatVector coeffs;
    Relation relation = Relation::GreaterEqual;
    Rational rhs = 0;
    bool strict = false;
};

struct LPProblem {
    std::size_t variables = 0;
    std::vector<LinearConstraint> constraints;

    explicit LPProblem(std::size_t vars = 0) : variables(vars) {}

    void add_ge(RatVector a, Rational b) { constraints.push_back({std::move(a), Relation::GreaterEqual, std::move(b), false}); }
    void add_gt(RatVector a, Rational b) { constraints.push_back({std::move(a), Relation::GreaterEqual, std::move(b), true}); }
    void add_le(RatVector a, Rational b) { add_ge(negated(std::move(a)), -b); }
    void add_lt(RatVector a, Rational b) { add_gt(negated(std::move(a)), -b); }
    void add_eq(RatVector a, Rational b) { constraints.push_back({std::move(a), Relation::Equal, std::move(b), false}); }

    /// Exact check of a candidate point against every row.
    bool satisfied_by(const RatVector& x) const {
        for (const auto& c : constraints) {
            Rational lhs = dot(c.coeffs, x);
            if (c.relation == Relation::Equal) {
                if (lhs != c.rhs) return false;
            } else if (c.strict ? !(lhs > c.rhs) : !(lhs >= c.rhs)) {
                return false;
            }
        }
        return true;
    }

private:
    static RatVector negated(RatVector a) {
        for (auto& x : a) x = -x;
        return a;
    }
};

namespace detail {

// Maximize cost.y subject to the tableau rows, y >= 0, starting from a
// feasible basis. Columns flagged in `blocked` never enter.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows * (cols + 1)), basis_(rows) {}

    Rational& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
    Rational& rhs(std::size_t i) { return at(i, cols_); }
    std::size_t& basic(std::size_t i) { return basis_[i]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// Returns the optimal objective value. Objective must be bounded.
    Rational maximize(const RatVector& cost, const std::vector<bool>& blocked) {
        reduced_.assign(cols_ + 1, Rational(0));
        for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * at(i, j);
        }
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (!blocked[j] && reduced_[j] > 0) {
                    enter = j;
                    break;
                }
            if (enter == cols_) break;
            std::size_t leave = rows_;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (at(i, enter) <= 0) continue;
                Rational ratio = rhs(i) / at(i, enter);
                if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_) throw std::logic_error("simplex: unbounded objective");
            pivot(leave, enter);
        }
        return -reduced_[cols_];
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / at(r, c);
        for (std::size_t j = 0; j <= cols_; ++j)
            if (at(r, j) != 0) at(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c) == 0) continue;
            Rational f = at(i, c);
            for (std::size_t j = 0; j <= cols_; ++j)
                if (at(r, j) != 0) at(i, j) -= f * at(r, j);
        }
        if (!reduced_.empty() && reduced_[c] != 0) {
            Rational f = reduced_[c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (at(r, j) != 0) reduced_[j] -= f * at(r, j);
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        std::size_t w = cols_ + 1;
        t_.erase(t_.begin() + r * w, t_.begin() + (r + 1) * w);
        basis_.erase(basis_.begin() + r);
        --rows_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> t_;
    std::vector<std::size_t> basis_;
    RatVector reduced_;
};

}  // namespace detail

/// A point satisfying every constraint (strict rows strictly), or nullopt.
inline std::optional<RatVector> lp_feasible(const LPProblem& p) {
    const std::size_t n = p.variables;
    bool any_strict = false;
    for (const auto& c : p.constraints) {
        if (c.coeffs.size() != n) throw InputError("LP constraint length does not match the variable count");
        if (c.strict && c.relation == Relation::Equal) throw InputError("strict equality constraint");
        any_strict = any_strict || c.strict;
    }

    // Column layout: x+ (n), x- (n), [t+, t-], surplus per >= row, [u for t <= 1], artificials.
    std::size_t surplus_count = 0;
    for (const auto& c : p.constraints)
        if (c.relation == Relation::GreaterEqual) ++surplus_count;
    const std::size_t t_plus = 2 * n, t_minus = 2 * n + 1;
    const std::size_t surplus0 = any_strict ? 2 * n + 2 : 2 * n;
    const std::size_t u_col = surplus0 + surplus_count;
    const std::size_t structural = u_col + (any_strict ? 1 : 0);
    const std::size_t rows = p.constraints.size() + (any_strict ? 1 : 0);
    const std::size_t cols = structural + rows;

    detail::Tableau tab(rows, cols);
    std::size_t s = surplus0;
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(i, j) = c.coeffs[j];
            tab.at(i, n + j) = -c.coeffs[j];
        }
        if (c.strict) {
            tab.at(i, t_plus) = -1;
            tab.at(i, t_minus) = 1;
        }
        if (c.relation == Relation::GreaterEqual) tab.at(i, s++) = -1;
        tab.rhs(i) = c.rhs;
    }
    if (any_strict) {
        std::size_t i = rows - 1;
        tab.at(i, t_plus) = 1;
        tab.at(i, t_minus) = -1;
        tab.at(i, u_col) = 1;
        tab.rhs(i) = 1;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        if (tab.rhs(i) < 0)
            for (std::size_t j = 0; j <= cols; ++j) tab.at(i, j) = -tab.at(i, j);
        tab.at(i, structural + i) = 1;
        tab.basic(i) = structural + i;
    }

    // Phase 1: drive the artificials to zero.
    RatVector cost(cols, Rational(0));
    for (std::size_t j = structural; j < cols; ++j) cost[j] = -1;
    std::vector<bool> blocked(cols, false);
    if (tab.maximize(cost, blocked) != 0) return std::nullopt;

    for (std::size_t j = structural; j < cols; ++j) blocked[j] = true;
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basic(i) < structural) {
            ++i;
            continue;
        }
        std::size_t c = 0;
        while (c < structural && tab.at(i, c) == 0) ++c;
        if (c == structural) {
            tab.drop_row(i);  // redundant equality
            continue;
        }
        tab.pivot(i, c);
        ++i;
    }

    auto extract = [&]() {
        RatVector val(cols, Rational(0));
        for (std::size_t i = 0; i < tab.rows(); ++i) val[tab.basic(i)] = tab.rhs(i);
        RatVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = val[j] - val[n + j];
        return x;
    };

    if (!any_strict) return extract();

    // Phase 2: maximize t.
    RatVector phase2(cols, Rational(0));
    phase2[t_plus] = 1;
    phase2[t_minus] = -1;
    if (tab.maximize(phase2, blocked) <= 0) return std::nullopt;
    return extract();
}

}  // namespace polystrata
