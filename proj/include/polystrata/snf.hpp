#pragma once

#include <cstddef>
#include <vector>

#include "polystrata/matrix.hpp"

namespace polystrata {

/// left * A * right = diag(invariant_factors, 0, ...), with d_k | d_{k+1}.
struct SNFResult {
    std::vector<Integer> invariant_factors;  // nonzero factors only
    IntegerMatrix left;
    IntegerMatrix right;
    IntegerMatrix diagonal;

    std::size_t rank() const { return invariant_factors.size(); }

    /// Factors greater than one: the torsion of the cokernel.
    std::vector<Integer> torsion() const {
        std::vector<Integer> out;
        for (const auto& d : invariant_factors)
            if (d > 1) out.push_back(d);
        return out;
    }
};

namespace detail {

struct SNFWork {
    IntegerMatrix a, left, right;

    void swap_rows(std::size_t i, std::size_t j) {
        a.swap_rows(i, j);
        left.swap_rows(i, j);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        right.swap_cols(i, j);
    }
    // row_i += f * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& f) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += f * a(j, c);
        for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) += f * left(j, c);
    }
    // col_i += f * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& f) {
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += f * a(r, j);
        for (std::size_t r = 0; r < right.rows(); ++r) right(r, i) += f * right(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = -left(i, c);
    }
};

}  // namespace detail

inline SNFResult smith_normal_form(const IntegerMatrix& input) {
    const std::size_t m = input.rows(), n = input.cols();
    detail::SNFWork w{input, IntegerMatrix::identity(m), IntegerMatrix::identity(n)};
    IntegerMatrix& a = w.a;

    std::size_t t = 0;
    while (t < m && t < n) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        bool found = false;
        std::size_t pi = t, pj = t;
        Integer best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
                    found = true;
                    best = abs(a(i, j));
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);
                w.add_row(i, t, -q);
                if (a(i, t) != 0) {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                w.add_col(j, t, -q);
                if (a(t, j) != 0) {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Row and column are clear; enforce divisibility of the trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        w.add_row(t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) w.negate_row(t);
        ++t;
    }

    SNFResult out;
    for (std::size_t k = 0; k < t; ++k) out.invariant_factors.push_back(a(k, k));
    out.left = std::move(w.left);
    out.right = std::move(w.right);
    out.diagonal = std::move(w.a);
    return out;
}

}  // namespace polystrata
