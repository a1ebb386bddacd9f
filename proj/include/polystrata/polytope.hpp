#pragma once

// Point configurations and lattice polytopes.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "polystrata/hull.hpp"

namespace polystrata {

/// Labeled points; labels are the indices 0..n-1.
class PointConfiguration {
public:
    PointConfiguration() = default;
    explicit PointConfiguration(std::vector<RatVector> points) : points_(std::move(points)) {
        if (points_.empty()) throw InputError("a point configuration needs at least one point");
        const std::size_t d = points_.front().size();
        for (const auto& p : points_)
            if (p.size() != d) throw InputError("configuration points have mixed dimensions");
        std::vector<RatVector> sorted = points_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("configuration contains a repeated point");
    }

    static PointConfiguration from_integer(const std::vector<IntVector>& pts) {
        std::vector<RatVector> r;
        for (const auto& p : pts) r.push_back(to_rational(p));
        return PointConfiguration(std::move(r));
    }

    std::size_t size() const { return points_.size(); }
    std::size_t ambient_dim() const { return points_.front().size(); }
    const RatVector& operator[](std::size_t label) const { return points_.at(label); }
    const std::vector<RatVector>& points() const { return points_; }

    bool is_integral() const {
        return std::all_of(points_.begin(), points_.end(), [](const RatVector& p) { return polystrata::is_integral(p); });
    }

    std::vector<RatVector> subset(const std::vector<std::size_t>& labels) const {
        std::vector<RatVector> out;
        for (auto l : labels) out.push_back(points_.at(l));
        return out;
    }

private:
    std::vector<RatVector> points_;
};

/// Convex hull of finitely many integer points, stored by its vertices.
class LatticePolytope {
public:
    LatticePolytope() = default;

    /// Any generating point set; redundant points are dropped.
    explicit LatticePolytope(const std::vector<IntVector>& points) {
        if (points.empty()) throw InputError("a lattice polytope needs at least one point");
        std::vector<RatVector> pts;
        for (const auto& p : points) pts.push_back(to_rational(p));
        HullResult h = convex_hull(pts);
        for (auto i : h.vertices) vertices_.push_back(points[i]);
        std::sort(vertices_.begin(), vertices_.end());
        std::vector<RatVector> vs;
        for (const auto& v : vertices_) vs.push_back(to_rational(v));
        hull_ = convex_hull(vs);
    }

    const std::vector<IntVector>& vertices() const { return vertices_; }
    const HullResult& hull() const { return hull_; }
    std::size_t dimension() const { return hull_.dimension; }
    std::size_t ambient_dim() const { return vertices_.front().size(); }

    bool contains(const IntVector& x) const { return hull_.contains(to_rational(x)); }
    bool contains(const RatVector& x) const { return hull_.contains(x); }

    LatticePolytope dilate(const Integer& k) const {
        std::vector<IntVector> vs;
        for (const auto& v : vertices_) vs.push_back(scaled(v, k));
        return LatticePolytope(vs);
    }

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.vertices_ == b.vertices_; }

private:
    std::vector<IntVector> vertices_;
    HullResult hull_;
};

/// All integer points of P, lexicographically, by bounding box and H-representation.
inline std::vector<IntVector> lattice_points(const LatticePolytope& p) {
    const std::size_t d = p.ambient_dim();
    IntVector lo = p.vertices().front(), hi = lo;
    for (const auto& v : p.vertices())
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<IntVector> out;
    IntVector cur = lo;
    for (;;) {
        if (p.contains(cur)) out.push_back(cur);
        std::size_t i = d;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (cur[i] < hi[i]) {
                cur[i] += 1;
                for (std::size_t j = i + 1; j < d; ++j) cur[j] = lo[j];
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

inline Integer normalized_volume(const LatticePolytope& p) { return normalized_volume(p.vertices()); }

/// Pairs of vertex indices spanning an edge: the facets through both meet in no other vertex.
inline std::vector<std::pair<std::size_t, std::size_t>> polytope_edges(const LatticePolytope& p) {
    const auto& h = p.hull();
    const std::size_t n = p.vertices().size();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (h.dimension == 0) return out;
    if (h.dimension == 1) return {{0, 1}};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<bool> alive(n, true);
            for (const auto& f : h.facets) {
                bool has_a = std::binary_search(f.incident.begin(), f.incident.end(), a);
                bool has_b = std::binary_search(f.incident.begin(), f.incident.end(), b);
                if (!has_a || !has_b) continue;
                std::vector<bool> on(n, false);
                for (auto i : f.incident) on[i] = true;
                for (std::size_t i = 0; i < n; ++i) alive[i] = alive[i] && on[i];
            }
            std::size_t count = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true));
            if (count == 2) out.emplace_back(a, b);
        }
    return out;
}

struct IdpWitness {
    std::size_t level;
    IntVector point;  // in the dilate level * P, not a sum of lower-level points
};

/// Integer decomposition property up to the given cone level. nullopt means
/// every lattice point of kP for k <= degree_bound is a sum of points of P.
inline std::optional<IdpWitness> is_idp_polytope(const LatticePolytope& p, std::size_t degree_bound) {
    if (degree_bound < 2) throw InputError("degree bound must be at least 2");
    const std::vector<IntVector> level_one = lattice_points(p);
    std::set<IntVector> previous(level_one.begin(), level_one.end());
    for (std::size_t k = 2; k <= degree_bound; ++k) {
        std::set<IntVector> current;
        for (const auto& x : lattice_points(p.dilate(Integer(k)))) {
            bool decomposes = false;
            for (const auto& a : level_one)
                if (previous.count(x - a)) {
                    decomposes = true;
                    break;
                }
            if (!decomposes) return IdpWitness{k, x};
            current.insert(x);
        }
        previous = std::move(current);
    }
    return std::nullopt;
}

}  // namespace polystrata
