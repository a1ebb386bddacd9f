#pragma once

// Sublattices of Z^N given by row bases.

#include <optional>
#include <vector>

#include "polystrata/matrix.hpp"
#include "polystrata/snf.hpp"

namespace polystrata {

/// Row-style Hermite normal form of a full-row-rank integer matrix.
/// Pivots positive, entries above each pivot reduced into [0, pivot).
inline IntegerMatrix hermite_normal_form(IntegerMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // Euclid on column c among rows r..m-1.
        for (;;) {
            std::size_t piv = m;
            for (std::size_t i = r; i < m; ++i)
                if (a(i, c) != 0 && (piv == m || abs(a(i, c)) < abs(a(piv, c)))) piv = i;
            if (piv == m) break;
            a.swap_rows(r, piv);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (a(i, c) == 0) continue;
                Integer q = a(i, c) / a(r, c);
                for (std::size_t j = 0; j < n; ++j) a(i, j) -= q * a(r, j);
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (std::size_t j = 0; j < n; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = a(i, c) / a(r, c);
            if (a(i, c) - q * a(r, c) < 0) q -= 1;
            if (q != 0)
                for (std::size_t j = 0; j < n; ++j) a(i, j) -= q * a(r, j);
        }
        ++r;
    }
    IntegerMatrix out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
    return out;
}

/// Basis (rows, Hermite normal form) of the saturation of the lattice spanned
/// by the generator rows: all integer points of their rational span.
inline IntegerMatrix saturate(const IntegerMatrix& generators) {
    const std::size_t n = generators.cols();
    if (generators.rows() == 0) return IntegerMatrix(0, n);
    SNFResult s = smith_normal_form(generators);
    RationalMatrix rinv = *inverse(to_rational(s.right));
    IntegerMatrix basis(s.rank(), n);
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < n; ++j) basis(i, j) = numerator(rinv(i, j));
    return hermite_normal_form(basis);
}

/// Coordinates of x in the given row basis, if x lies in the lattice.
inline std::optional<IntVector> lattice_coordinates(const IntegerMatrix& basis, const IntVector& x) {
    auto c = solve(to_rational(basis.transpose()), to_rational(x));
    if (!c || !is_integral(*c)) return std::nullopt;
    return to_integer(*c);
}

inline bool lattice_contains(const IntegerMatrix& basis, const IntVector& x) {
    return lattice_coordinates(basis, x).has_value();
}

/// True iff every row of `sub` lies in the lattice spanned by `super`.
inline bool lattice_includes(const IntegerMatrix& super, const IntegerMatrix& sub) {
    for (std::size_t i = 0; i < sub.rows(); ++i)
        if (!lattice_contains(super, sub.row(i))) return false;
    return true;
}

}  // namespace polystrata
