#pragma once

// Exact convex hulls, vertex enumeration and triangulation.
//
// Both directions go through one double-description routine on pointed
// cones {y : A y >= 0}. Hulls are computed inside the affine hull of the
// input, on a coordinate projection that is injective there, so
// lower-dimensional point sets need no special casing by callers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "polystrata/lp.hpp"
#include "polystrata/matrix.hpp"
#include "polystrata/snf.hpp"

namespace polystrata {

namespace detail {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void grow(std::size_t n) { words_.resize((n + 63) / 64, 0); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    Bits operator&(const Bits& o) const {
        Bits r;
        r.words_.resize(std::max(words_.size(), o.words_.size()), 0);
        for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i) r.words_[i] = words_[i] & o.words_[i];
        return r;
    }
    bool contains(const Bits& o) const {
        for (std::size_t i = 0; i < o.words_.size(); ++i) {
            std::uint64_t mine = i < words_.size() ? words_[i] : 0;
            if ((o.words_[i] & ~mine) != 0) return false;
        }
        return true;
    }
    std::vector<std::size_t> members(std::size_t n) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    IntVector v;
    Bits zeros;  // rows tight at this ray
};

/// Extreme rays of the pointed cone {y : rows * y >= 0}. rank(rows) must equal the column count.
inline std::vector<Ray> extreme_rays(const IntegerMatrix& rows) {
    const std::size_t m = rows.rows(), dim = rows.cols();

    // Greedy basis of rows.
    std::vector<std::size_t> basis;
    {
        std::vector<RatVector> picked;
        for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
            picked.push_back(to_rational(rows.row(i)));
            if (rank(RationalMatrix::from_rows(picked)) == picked.size()) basis.push_back(i);
            else picked.pop_back();
        }
    }
    if (basis.size() < dim) throw std::logic_error("extreme_rays: cone is not pointed");

    RationalMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) b(i, j) = Rational(rows(basis[i], j));
    RationalMatrix inv = *inverse(b);

    std::vector<Ray> rays;
    std::vector<bool> processed(m, false);
    for (auto i : basis) processed[i] = true;
    for (std::size_t j = 0; j < dim; ++j) {
        Ray r{primitive(inv.col(j)), Bits(m)};
        for (std::size_t k = 0; k < dim; ++k)
            if (k != j) r.zeros.set(basis[k]);
        rays.push_back(std::move(r));
    }

    auto row_dot = [&](std::size_t i, const IntVector& v) {
        Integer s = 0;
        for (std::size_t j = 0; j < dim; ++j) s += rows(i, j) * v[j];
        return s;
    };

    for (std::size_t i = 0; i < m; ++i) {
        if (processed[i]) continue;
        processed[i] = true;
        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            val[k] = row_dot(i, rays[k].v);
            int s = sign(val[k]);
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(k);
        }
        for (auto k : zero) rays[k].zeros.set(i);
        if (neg.empty()) continue;

        std::vector<Ray> next;
        for (auto k : pos) next.push_back(rays[k]);
        for (auto k : zero) next.push_back(rays[k]);
        for (auto p : pos)
            for (auto q : neg) {
                Bits common = rays[p].zeros & rays[q].zeros;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
                    if (k != p && k != q && rays[k].zeros.contains(common)) adjacent = false;
                if (!adjacent) continue;
                IntVector v(dim);
                for (std::size_t j = 0; j < dim; ++j) v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
                common.set(i);
                next.push_back(Ray{primitive(v), std::move(common)});
            }
        rays = std::move(next);
    }
    return rays;
}

/// Scale a rational row to a primitive integer row on the same ray.
inline IntVector integer_row(const RatVector& r) { return primitive(r); }

}  // namespace detail

/// Affine hull of a point list: base point, dimension, a coordinate
/// projection that is injective on it, and defining equations.
struct AffineHull {
    std::size_t ambient_dim = 0;
    std::size_t dimension = 0;
    RatVector base;
    std::vector<std::size_t> chart;        // pivot coordinates
    std::vector<RatVector> equation_normals;  // normal . x == rhs on the hull
    RatVector equation_rhs;
};

inline AffineHull affine_hull(const std::vector<RatVector>& points) {
    if (points.empty()) throw InputError("affine hull of an empty point set");
    AffineHull out;
    out.ambient_dim = points.front().size();
    out.base = points.front();
    std::vector<RatVector> diffs;
    for (const auto& p : points) {
        if (p.size() != out.ambient_dim) throw InputError("points of mixed dimension");
        diffs.push_back(p - out.base);
    }
    RationalMatrix e = RationalMatrix::from_rows(diffs, out.ambient_dim);
    RowEchelon ech = row_echelon(e);
    out.chart = ech.pivot_cols;
    out.dimension = ech.rank();
    for (auto& c : kernel(e)) {
        IntVector prim = primitive(c);
        RatVector n = to_rational(prim);
        out.equation_rhs.push_back(dot(n, out.base));
        out.equation_normals.push_back(std::move(n));
    }
    return out;
}

struct Facet {
    RatVector normal;  // inner normal: normal . x >= offset on the hull
    Rational offset;
    std::vector<std::size_t> incident;  // input indices lying on the facet hyperplane
};

struct HullResult {
    std::size_t ambient_dim = 0;
    std::size_t dimension = 0;  // dimension of the affine hull of the input
    std::vector<Facet> facets;
    std::vector<std::size_t> lower_facets;  // facets whose inner normal has positive last coordinate
    std::vector<RatVector> equation_normals;
    RatVector equation_rhs;
    std::vector<std::size_t> vertices;  // input indices of the hull vertices (first of any duplicates)

    bool contains(const RatVector& x) const {
        for (std::size_t i = 0; i < equation_normals.size(); ++i)
            if (dot(equation_normals[i], x) != equation_rhs[i]) return false;
        for (const auto& f : facets)
            if (dot(f.normal, x) < f.offset) return false;
        return true;
    }
};

inline HullResult convex_hull(const std::vector<RatVector>& points) {
    AffineHull ah = affine_hull(points);
    HullResult out;
    out.ambient_dim = ah.ambient_dim;
    out.dimension = ah.dimension;
    out.equation_normals = ah.equation_normals;
    out.equation_rhs = ah.equation_rhs;
    const std::size_t n = points.size(), k = ah.dimension;

    if (k == 0) {
        out.vertices = {0};
        return out;
    }

    IntegerMatrix rows(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        RatVector r(k + 1);
        r[0] = 1;
        for (std::size_t j = 0; j < k; ++j) r[j + 1] = points[i][ah.chart[j]];
        IntVector ir = detail::integer_row(r);
        for (std::size_t j = 0; j <= k; ++j) rows(i, j) = ir[j];
    }

    for (const auto& ray : detail::extreme_rays(rows)) {
        Facet f;
        f.normal.assign(ah.ambient_dim, Rational(0));
        for (std::size_t j = 0; j < k; ++j) f.normal[ah.chart[j]] = ray.v[j + 1];
        f.offset = -Rational(ray.v[0]);
        f.incident = ray.zeros.members(n);
        out.facets.push_back(std::move(f));
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const Facet& a, const Facet& b) { return a.incident < b.incident; });
    for (std::size_t i = 0; i < out.facets.size(); ++i)
        if (out.facets[i].normal.back() > 0) out.lower_facets.push_back(i);

    // A point is a vertex iff the facets through it meet only in copies of it.
    for (std::size_t p = 0; p < n; ++p) {
        bool first_copy = true;
        for (std::size_t q = 0; q < p && first_copy; ++q)
            if (points[q] == points[p]) first_copy = false;
        if (!first_copy) continue;
        std::vector<bool> alive(n, true);
        for (const auto& f : out.facets) {
            if (!std::binary_search(f.incident.begin(), f.incident.end(), p)) continue;
            std::vector<bool> on(n, false);
            for (auto i : f.incident) on[i] = true;
            for (std::size_t i = 0; i < n; ++i) alive[i] = alive[i] && on[i];
        }
        bool vertex = true;
        for (std::size_t i = 0; i < n && vertex; ++i)
            if (alive[i] && points[i] != points[p]) vertex = false;
        if (vertex) out.vertices.push_back(p);
    }
    return out;
}

/// Vertices of the polytope {x : ineq_normals[i] . x >= ineq_rhs[i], eq_normals[j] . x == eq_rhs[j]}.
/// Empty result for an empty polytope; InputError when unbounded.
inline std::vector<RatVector> enumerate_vertices(std::size_t dim, const std::vector<RatVector>& ineq_normals,
                                                 const RatVector& ineq_rhs,
                                                 const std::vector<RatVector>& eq_normals = {},
                                                 const RatVector& eq_rhs = {}) {
    LPProblem lp(dim);
    for (std::size_t i = 0; i < ineq_normals.size(); ++i) lp.add_ge(ineq_normals[i], ineq_rhs[i]);
    for (std::size_t i = 0; i < eq_normals.size(); ++i) lp.add_eq(eq_normals[i], eq_rhs[i]);
    auto feasible = lp_feasible(lp);
    if (!feasible) return {};

    // Parametrize the equality subspace: x = x0 + K z.
    RatVector x0 = *feasible;
    std::vector<RatVector> kbasis;
    if (eq_normals.empty()) {
        for (std::size_t i = 0; i < dim; ++i) kbasis.push_back(to_rational(unit_vector(dim, i)));
    } else {
        kbasis = kernel(RationalMatrix::from_rows(eq_normals, dim));
    }
    const std::size_t kz = kbasis.size();
    if (kz == 0) return {x0};

    // Homogenized cone {(s, z) : a.K z + (a.x0 - b) s >= 0, s >= 0}.
    IntegerMatrix rows(ineq_normals.size() + 1, kz + 1);
    for (std::size_t i = 0; i < ineq_normals.size(); ++i) {
        RatVector r(kz + 1);
        r[0] = dot(ineq_normals[i], x0) - ineq_rhs[i];
        for (std::size_t j = 0; j < kz; ++j) r[j + 1] = dot(ineq_normals[i], kbasis[j]);
        IntVector ir = primitive(r);
        for (std::size_t j = 0; j <= kz; ++j) rows(i, j) = ir[j];
    }
    rows(ineq_normals.size(), 0) = 1;
    if (rank(rows) < kz + 1) throw InputError("enumerate_vertices: polyhedron is unbounded");

    std::vector<RatVector> out;
    for (const auto& ray : detail::extreme_rays(rows)) {
        if (ray.v[0] == 0) throw InputError("enumerate_vertices: polyhedron is unbounded");
        RatVector x = x0;
        for (std::size_t j = 0; j < kz; ++j) {
            Rational zj = Rational(ray.v[j + 1]) / Rational(ray.v[0]);
            if (zj != 0)
                for (std::size_t c = 0; c < dim; ++c) x[c] += zj * kbasis[j][c];
        }
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

inline void pulling_triangulation(const std::vector<RatVector>& pts, const std::vector<std::size_t>& ids,
                                  std::vector<std::vector<std::size_t>>& out) {
    std::vector<RatVector> sub;
    for (auto i : ids) sub.push_back(pts[i]);
    HullResult h = convex_hull(sub);
    if (h.dimension == 0) {
        out.push_back({ids[h.vertices.front()]});
        return;
    }
    std::size_t apex = h.vertices.front();  // smallest-index vertex
    for (const auto& f : h.facets) {
        if (std::binary_search(f.incident.begin(), f.incident.end(), apex)) continue;
        std::vector<std::size_t> face_ids;
        for (auto i : f.incident) face_ids.push_back(ids[i]);
        std::vector<std::vector<std::size_t>> sub_simplices;
        pulling_triangulation(pts, face_ids, sub_simplices);
        for (auto& s : sub_simplices) {
            s.push_back(ids[apex]);
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
    }
}

}  // namespace detail

/// Pulling triangulation of conv(points) using only hull vertices. Simplices are index sets.
inline std::vector<std::vector<std::size_t>> triangulate(const std::vector<RatVector>& points) {
    std::vector<std::size_t> ids(points.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    detail::pulling_triangulation(points, ids, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Normalized volume of a lattice simplex relative to the lattice of its affine hull:
/// the index of the edge lattice in its saturation.
inline Integer simplex_normalized_volume(const std::vector<IntVector>& vertices) {
    if (vertices.size() <= 1) return 1;
    IntegerMatrix e(vertices.size() - 1, vertices.front().size());
    for (std::size_t i = 1; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) e(i - 1, j) = vertices[i][j] - vertices[0][j];
    SNFResult s = smith_normal_form(e);
    if (s.rank() != vertices.size() - 1) return 0;
    Integer prod = 1;
    for (const auto& d : s.invariant_factors) prod *= d;
    return prod;
}

/// dim! times the lattice-relative volume of conv(points); points must be integral.
inline Integer normalized_volume(const std::vector<IntVector>& points) {
    std::vector<RatVector> pts;
    for (const auto& p : points) pts.push_back(to_rational(p));
    Integer total = 0;
    for (const auto& s : triangulate(pts)) {
        std::vector<IntVector> verts;
        for (auto i : s) verts.push_back(points[i]);
        total += simplex_normalized_volume(verts);
    }
    return total;
}

/// Euclidean volume of a full-dimensional rational polytope.
inline Rational euclidean_volume(const std::vector<RatVector>& points) {
    const std::size_t d = points.front().size();
    Rational total = 0;
    Integer fact = 1;
    for (std::size_t i = 2; i <= d; ++i) fact *= i;
    for (const auto& s : triangulate(points)) {
        if (s.size() != d + 1) return 0;
        RationalMatrix e(d, d);
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = 0; j < d; ++j) e(i - 1, j) = points[s[i]][j] - points[s[0]][j];
        total += abs(determinant(e));
    }
    return total / Rational(fact);
}

}  // namespace polystrata
