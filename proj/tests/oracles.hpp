#pragma once

// Independent brute-force oracles used to freeze and cross-check results.
// Nothing here calls into the hull, SNF, LP or subdivision code paths it checks.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "polystrata/rational.hpp"

namespace oracle {

using polystrata::Integer;
using polystrata::IntVector;
using polystrata::Rational;
using polystrata::RatVector;

/// Determinant by cofactor expansion.
inline Integer cofactor_det(const std::vector<IntVector>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Integer total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<IntVector> minor;
        for (std::size_t r = 1; r < n; ++r) {
            IntVector row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[r][j]);
            minor.push_back(row);
        }
        Integer term = m[0][c] * cofactor_det(minor);
        total += (c % 2 == 0) ? term : Integer(-term);
    }
    return total;
}

/// Determinant by one-step fraction-free elimination, written independently.
inline Integer fraction_free_det(std::vector<IntVector> a) {
    const std::size_t n = a.size();
    Integer divisor = 1;
    int s = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / divisor;
            a[i][k] = 0;
        }
        divisor = a[k][k];
    }
    return s * a[n - 1][n - 1];
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

/// gcd of all k x k minors for k = 1..min(m,n); the k-th entry is d_1 * ... * d_k.
inline std::vector<Integer> minor_gcds(const std::vector<IntVector>& a, std::size_t cols) {
    std::vector<Integer> out;
    const std::size_t m = a.size();
    for (std::size_t k = 1; k <= std::min(m, cols); ++k) {
        Integer g = 0;
        for_each_subset(m, k, [&](const std::vector<std::size_t>& rs) {
            for_each_subset(cols, k, [&](const std::vector<std::size_t>& cs) {
                std::vector<IntVector> sub;
                for (auto r : rs) {
                    IntVector row;
                    for (auto c : cs) row.push_back(a[r][c]);
                    sub.push_back(row);
                }
                g = polystrata::gcd(g, cofactor_det(sub));
            });
        });
        out.push_back(g);
    }
    return out;
}

/// Rank over Q by plain rational elimination.
inline std::size_t rational_rank(std::vector<RatVector> a) {
    if (a.empty()) return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

/// Normal of the hyperplane through d points in Q^d (zero vector if they are dependent).
inline RatVector hyperplane_normal(const std::vector<RatVector>& pts) {
    const std::size_t d = pts[0].size();
    // Normal components are signed (d-1)-minors of the difference matrix.
    std::vector<RatVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVector v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = pts[i][j] - pts[0][j];
        diffs.push_back(v);
    }
    // Scale rows to integers for the cofactor determinant.
    std::vector<IntVector> idiffs;
    for (auto& v : diffs) {
        Integer den = 1;
        for (auto& x : v) den = polystrata::lcm(den, polystrata::denominator(x));
        IntVector row;
        for (auto& x : v) row.push_back(polystrata::numerator(x * den));
        idiffs.push_back(row);
    }
    RatVector normal(d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<IntVector> sub;
        for (auto& row : idiffs) {
            IntVector r;
            for (std::size_t j = 0; j < d; ++j)
                if (j != c) r.push_back(row[j]);
            sub.push_back(r);
        }
        Integer m = cofactor_det(sub);
        normal[c] = Rational(c % 2 == 0 ? m : Integer(-m));
    }
    return normal;
}

/// Facets of a full-dimensional point set in Q^d as sets of incident indices:
/// every d-subset is tried as a candidate supporting hyperplane.
inline std::set<std::vector<std::size_t>> brute_force_facets(const std::vector<RatVector>& pts) {
    const std::size_t d = pts[0].size();
    std::set<std::vector<std::size_t>> out;
    for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& s) {
        std::vector<RatVector> sel;
        for (auto i : s) sel.push_back(pts[i]);
        RatVector n = hyperplane_normal(sel);
        if (std::all_of(n.begin(), n.end(), [](const Rational& x) { return x == 0; })) return;
        Rational c = polystrata::dot(n, sel[0]);
        bool above = true, below = true;
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rational v = polystrata::dot(n, pts[i]) - c;
            if (v > 0) below = false;
            if (v < 0) above = false;
            if (v == 0) on.push_back(i);
        }
        if (above || below) out.insert(on);
    });
    return out;
}

/// Lower facets of lifted points (p, h(p)), p in Q^d, as incidence sets; lifted set must be full-dimensional.
inline std::set<std::vector<std::size_t>> brute_force_lower_facets(const std::vector<RatVector>& base,
                                                                   const RatVector& heights) {
    std::vector<RatVector> lifted;
    for (std::size_t i = 0; i < base.size(); ++i) {
        RatVector p = base[i];
        p.push_back(heights[i]);
        lifted.push_back(p);
    }
    const std::size_t d1 = lifted[0].size();
    std::set<std::vector<std::size_t>> out;
    for_each_subset(lifted.size(), d1, [&](const std::vector<std::size_t>& s) {
        std::vector<RatVector> sel;
        for (auto i : s) sel.push_back(lifted[i]);
        RatVector n = hyperplane_normal(sel);
        if (n.back() == 0) return;  // vertical or degenerate
        if (n.back() < 0)
            for (auto& x : n) x = -x;
        Rational c = polystrata::dot(n, sel[0]);
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < lifted.size(); ++i) {
            Rational v = polystrata::dot(n, lifted[i]) - c;
            if (v < 0) return;
            if (v == 0) on.push_back(i);
        }
        out.insert(on);
    });
    return out;
}

/// Integer points of a box, lexicographic.
inline std::vector<IntVector> box_points(const IntVector& lo, const IntVector& hi) {
    std::vector<IntVector> out;
    IntVector cur = lo;
    const std::size_t d = lo.size();
    if (d == 0) return {IntVector{}};
    for (;;) {
        out.push_back(cur);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (cur[i] < hi[i]) {
                cur[i] += 1;
                for (std::size_t j = i + 1; j < d; ++j) cur[j] = lo[j];
                break;
            }
            if (i == 0) return out;
        }
    }
}

inline RatVector rat(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline IntVector ivec(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace oracle
