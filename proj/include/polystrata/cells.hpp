#pragma once

// Proper intersection of marked cells.

#include <algorithm>
#include <vector>

#include "polystrata/lp.hpp"

namespace polystrata {

/// Two point sets A, B intersect properly when conv(A) and conv(B) meet in
/// a common face whose points of A and of B coincide. Equivalently, no
/// convex combination of A equals a convex combination of B unless both
/// are supported on A cap B. Decided by one strict LP.
inline bool intersect_properly(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
    if (a.empty() || b.empty()) return true;
    const std::size_t d = a.front().size();
    auto in = [](const std::vector<RatVector>& set, const RatVector& x) {
        return std::find(set.begin(), set.end(), x) != set.end();
    };
    std::vector<bool> a_private(a.size()), b_private(b.size());
    bool any_private = false;
    for (std::size_t i = 0; i < a.size(); ++i) any_private |= (a_private[i] = !in(b, a[i]));
    for (std::size_t j = 0; j < b.size(); ++j) any_private |= (b_private[j] = !in(a, b[j]));
    if (!any_private) return true;

    const std::size_t n = a.size() + b.size();
    LPProblem lp(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n, Rational(0));
        e[i] = 1;
        lp.add_ge(e, 0);
    }
    RatVector sa(n, Rational(0)), sb(n, Rational(0)), priv(n, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa[i] = 1;
        if (a_private[i]) priv[i] = 1;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        sb[a.size() + j] = 1;
        if (b_private[j]) priv[a.size() + j] = 1;
    }
    lp.add_eq(sa, 1);
    lp.add_eq(sb, 1);
    for (std::size_t c = 0; c < d; ++c) {
        RatVector row(n, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) row[i] = a[i][c];
        for (std::size_t j = 0; j < b.size(); ++j) row[a.size() + j] = -b[j][c];
        lp.add_eq(row, 0);
    }
    lp.add_gt(priv, 0);
    return !lp_feasible(lp).has_value();
}

}  // namespace polystrata
