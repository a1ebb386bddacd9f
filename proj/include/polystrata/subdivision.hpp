#pragma once

// Marked subdivisions of point configurations: lower envelopes, regularity
// certificates, GKZ vectors, secondary polytopes and exhaustive enumeration.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polystrata/cells.hpp"
#include "polystrata/complex.hpp"
#include "polystrata/polytope.hpp"

namespace polystrata {

/// Height per label.
using HeightFunction = RatVector;

using LabelSet = std::vector<std::size_t>;

/// Maximal cells of a marked subdivision, each given by its marking C_i as a
/// sorted label set; Q_i = Conv(C_i). Cells are kept sorted.
struct MarkedSubdivision {
    PointConfiguration base;
    std::vector<LabelSet> cells;

    MarkedSubdivision() = default;
    MarkedSubdivision(PointConfiguration config, std::vector<LabelSet> cs) : base(std::move(config)), cells(std::move(cs)) {
        for (auto& c : cells) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }
        std::sort(cells.begin(), cells.end());
    }

    bool is_triangulation() const {
        const std::size_t k = affine_hull(base.points()).dimension;
        return std::all_of(cells.begin(), cells.end(), [k](const LabelSet& c) { return c.size() == k + 1; });
    }

    friend bool operator==(const MarkedSubdivision& a, const MarkedSubdivision& b) { return a.cells == b.cells; }
    friend bool operator<(const MarkedSubdivision& a, const MarkedSubdivision& b) { return a.cells < b.cells; }
};

namespace detail {

/// Configuration points in coordinates of its affine hull.
struct Chart {
    AffineHull hull;
    std::vector<RatVector> coords;
    std::size_t dim() const { return hull.dimension; }
};

inline Chart chart_of(const PointConfiguration& config) {
    Chart c;
    c.hull = affine_hull(config.points());
    for (const auto& p : config.points()) {
        RatVector x;
        for (auto j : c.hull.chart) x.push_back(p[j]);
        c.coords.push_back(std::move(x));
    }
    return c;
}

inline std::vector<RatVector> pick(const std::vector<RatVector>& pts, const LabelSet& labels) {
    std::vector<RatVector> out;
    for (auto l : labels) out.push_back(pts.at(l));
    return out;
}

inline Rational chart_volume(const std::vector<RatVector>& pts) {
    if (pts.front().empty()) return 1;
    return euclidean_volume(pts);
}

}  // namespace detail

/// Cells are the lower facets of the lifted points (m, h(m)); each marking is
/// every label lying on the facet's supporting hyperplane.
inline MarkedSubdivision regular_subdivision(const PointConfiguration& config, const HeightFunction& h) {
    if (h.size() != config.size()) throw InputError("height function must have one value per label");
    detail::Chart ch = detail::chart_of(config);
    const std::size_t n = config.size(), k = ch.dim();
    LabelSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    if (k == 0) return MarkedSubdivision(config, {all});
    std::vector<RatVector> lifted;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector p = ch.coords[i];
        p.push_back(h[i]);
        lifted.push_back(std::move(p));
    }
    HullResult hull = convex_hull(lifted);
    if (hull.dimension == k) return MarkedSubdivision(config, {all});
    std::vector<LabelSet> cells;
    for (auto f : hull.lower_facets) cells.push_back(hull.facets[f].incident);
    return MarkedSubdivision(config, std::move(cells));
}

/// Throws InputError unless the cells form a marked subdivision of Conv(config).
inline void validate_subdivision(const MarkedSubdivision& sub) {
    const auto& config = sub.base;
    if (config.size() == 0) throw InputError("subdivision has no base configuration");
    if (sub.cells.empty()) throw InputError("subdivision has no cells");
    detail::Chart ch = detail::chart_of(config);
    const std::size_t k = ch.dim();
    for (const auto& c : sub.cells) {
        if (c.empty()) throw InputError("subdivision contains an empty cell");
        for (auto l : c)
            if (l >= config.size()) throw InputError("cell label " + std::to_string(l) + " out of range");
        if (affine_hull(detail::pick(ch.coords, c)).dimension != k)
            throw InputError("a cell is not full-dimensional in the configuration");
    }
    for (std::size_t i = 0; i < sub.cells.size(); ++i)
        for (std::size_t j = i + 1; j < sub.cells.size(); ++j)
            if (!intersect_properly(detail::pick(ch.coords, sub.cells[i]), detail::pick(ch.coords, sub.cells[j])))
                throw InputError("cells " + std::to_string(i) + " and " + std::to_string(j) +
                                 " do not meet in a common marked face");
    if (k == 0) return;
    Rational total = 0;
    for (const auto& c : sub.cells) total += detail::chart_volume(detail::pick(ch.coords, c));
    if (total != detail::chart_volume(ch.coords)) throw InputError("cells do not cover the convex hull");
}

struct RegularityResult {
    bool regular = false;
    std::optional<HeightFunction> certificate;  // integral heights, zero on an affine basis of labels
};

/// Exact LP in h and one affine function alpha_i per cell: alpha_i = h on C_i
/// and alpha_i < h on every other label.
inline RegularityResult is_regular(const MarkedSubdivision& sub) {
    validate_subdivision(sub);
    const auto& config = sub.base;
    detail::Chart ch = detail::chart_of(config);
    const std::size_t n = config.size(), k = ch.dim(), m = sub.cells.size();
    const std::size_t vars = n + m * (k + 1);
    LPProblem lp(vars);
    // Gauge: h vanishes on an affine basis of labels.
    {
        std::vector<RatVector> basis;
        for (std::size_t i = 0; i < n && basis.size() < k + 1; ++i) {
            basis.push_back(ch.coords[i]);
            if (affine_hull(basis).dimension + 1 != basis.size()) {
                basis.pop_back();
                continue;
            }
            RatVector row(vars, Rational(0));
            row[i] = 1;
            lp.add_eq(row, 0);
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        const std::size_t off = n + c * (k + 1);
        std::vector<bool> in(n, false);
        for (auto l : sub.cells[c]) in[l] = true;
        for (std::size_t i = 0; i < n; ++i) {
            // row . vars = h_i - alpha_c(x_i)
            RatVector row(vars, Rational(0));
            row[i] = 1;
            for (std::size_t j = 0; j < k; ++j) row[off + j] = -ch.coords[i][j];
            row[off + k] = -1;
            if (in[i]) lp.add_eq(row, 0);
            else lp.add_gt(row, 0);
        }
    }
    RegularityResult out;
    auto sol = lp_feasible(lp);
    if (!sol) return out;
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i) den = lcm(den, denominator((*sol)[i]));
    HeightFunction h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = (*sol)[i] * Rational(den);
    if (!(regular_subdivision(config, h) == sub)) throw std::logic_error("regularity certificate does not reproduce the subdivision");
    out.regular = true;
    out.certificate = std::move(h);
    return out;
}

/// Per label, the total normalized volume of the simplices using it.
inline IntVector gkz_vector(const MarkedSubdivision& sub) {
    if (!sub.base.is_integral()) throw InputError("GKZ vectors need an integral configuration");
    if (!sub.is_triangulation()) throw InputError("GKZ vector requested for a subdivision that is not a triangulation");
    IntVector phi(sub.base.size(), Integer(0));
    for (const auto& c : sub.cells) {
        std::vector<IntVector> verts;
        for (auto l : c) verts.push_back(to_integer(sub.base[l]));
        Integer vol = simplex_normalized_volume(verts);
        for (auto l : c) phi[l] += vol;
    }
    return phi;
}

inline constexpr std::size_t kMaxEnumerationPoints = 12;
inline constexpr std::size_t kMaxEnumerationDim = 3;

namespace detail {

/// Backtracking over candidate cells: repeatedly pick the smallest interior
/// ridge covered from one side only and try every compatible candidate on the
/// other side. Finished covers are closed pseudomanifolds, hence subdivisions.
class CellSearch {
public:
    CellSearch(const PointConfiguration& config, std::vector<LabelSet> candidates)
        : config_(config), chart_(chart_of(config)) {
        for (auto& labels : candidates) {
            Candidate cand;
            cand.labels = labels;
            auto pts = pick(chart_.coords, labels);
            HullResult hull = convex_hull(pts);
            for (const auto& f : hull.facets) {
                LabelSet ridge;
                for (auto i : f.incident) ridge.push_back(labels[i]);
                std::size_t id = ridge_id(ridge);
                const Ridge& r = ridges_[id];
                int side = 0;
                for (const auto& p : pts) {
                    Rational v = dot(r.normal, p) - r.rhs;
                    if (v != 0) {
                        side = v > 0 ? 1 : -1;
                        break;
                    }
                }
                cand.ridges.emplace_back(id, side);
            }
            cands_.push_back(std::move(cand));
        }
        by_ridge_.resize(ridges_.size());
        for (std::size_t c = 0; c < cands_.size(); ++c)
            for (auto [id, side] : cands_[c].ridges) by_ridge_[id].emplace_back(c, side);
        compat_.assign(cands_.size(), std::vector<signed char>(cands_.size(), -1));
        target_volume_ = chart_volume(chart_.coords);
    }

    /// Every subdivision using only candidate cells, sorted.
    std::vector<MarkedSubdivision> run() {
        std::set<std::vector<LabelSet>> found;
        if (chart_.dim() == 0) {
            for (const auto& c : cands_) found.insert({c.labels});
        } else {
            // Every cover uses some candidate through hull vertex 0 of the configuration.
            std::size_t v0 = convex_hull(chart_.coords).vertices.front();
            for (std::size_t c = 0; c < cands_.size(); ++c) {
                if (!std::binary_search(cands_[c].labels.begin(), cands_[c].labels.end(), v0)) continue;
                if (!place(c)) continue;
                recurse(found);
                unplace(c);
            }
        }
        std::vector<MarkedSubdivision> out;
        for (const auto& cells : found) out.emplace_back(config_, cells);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Ridge {
        RatVector normal;
        Rational rhs;
        bool boundary = false;
    };
    struct Candidate {
        LabelSet labels;
        std::vector<std::pair<std::size_t, int>> ridges;
    };

    std::size_t ridge_id(const LabelSet& labels) {
        auto it = ridge_index_.find(labels);
        if (it != ridge_index_.end()) return it->second;
        AffineHull ah = affine_hull(pick(chart_.coords, labels));
        Ridge r;
        r.normal = ah.equation_normals.front();
        r.rhs = ah.equation_rhs.front();
        bool above = true, below = true;
        for (const auto& p : chart_.coords) {
            Rational v = dot(r.normal, p) - r.rhs;
            if (v > 0) below = false;
            if (v < 0) above = false;
        }
        r.boundary = above || below;
        ridges_.push_back(std::move(r));
        ridge_index_.emplace(labels, ridges_.size() - 1);
        return ridges_.size() - 1;
    }

    bool compatible(std::size_t a, std::size_t b) {
        if (compat_[a][b] < 0) {
            bool ok = intersect_properly(pick(chart_.coords, cands_[a].labels), pick(chart_.coords, cands_[b].labels));
            compat_[a][b] = compat_[b][a] = ok ? 1 : 0;
        }
        return compat_[a][b] == 1;
    }

    bool place(std::size_t c) {
        for (auto [id, side] : cands_[c].ridges) {
            if (ridges_[id].boundary) continue;
            auto it = open_.find(id);
            if (closed_.count(id) || (it != open_.end() && it->second == side)) return false;
        }
        for (auto other : chosen_)
            if (!compatible(c, other)) return false;
        for (auto [id, side] : cands_[c].ridges) {
            if (ridges_[id].boundary) continue;
            auto it = open_.find(id);
            if (it == open_.end()) open_.emplace(id, side);
            else {
                open_.erase(it);
                closed_.insert(id);
            }
        }
        chosen_.push_back(c);
        return true;
    }

    void unplace(std::size_t c) {
        chosen_.pop_back();
        for (auto [id, side] : cands_[c].ridges) {
            if (ridges_[id].boundary) continue;
            if (closed_.erase(id)) open_.emplace(id, -side);
            else open_.erase(id);
        }
    }

    void recurse(std::set<std::vector<LabelSet>>& found) {
        if (open_.empty()) {
            std::vector<LabelSet> cells;
            Rational vol = 0;
            for (auto c : chosen_) {
                cells.push_back(cands_[c].labels);
                vol += chart_volume(pick(chart_.coords, cands_[c].labels));
            }
            if (vol != target_volume_) throw std::logic_error("closed cell cover does not fill the hull");
            std::sort(cells.begin(), cells.end());
            found.insert(std::move(cells));
            return;
        }
        auto [rid, side] = *open_.begin();
        const int need = -side;
        for (auto [c, s] : by_ridge_[rid]) {
            if (s != need) continue;
            if (!place(c)) continue;
            recurse(found);
            unplace(c);
        }
    }

    PointConfiguration config_;
    Chart chart_;
    std::vector<Candidate> cands_;
    std::vector<Ridge> ridges_;
    std::map<LabelSet, std::size_t> ridge_index_;
    std::vector<std::vector<std::pair<std::size_t, int>>> by_ridge_;
    std::vector<std::vector<signed char>> compat_;
    std::vector<std::size_t> chosen_;
    std::map<std::size_t, int> open_;
    std::set<std::size_t> closed_;
    Rational target_volume_;
};

inline void check_enumeration_limits(const PointConfiguration& config) {
    if (config.size() > kMaxEnumerationPoints)
        throw RefusedError("enumeration is limited to " + std::to_string(kMaxEnumerationPoints) + " points, got " +
                           std::to_string(config.size()));
    std::size_t k = affine_hull(config.points()).dimension;
    if (k > kMaxEnumerationDim)
        throw RefusedError("enumeration is limited to dimension " + std::to_string(kMaxEnumerationDim) + ", got " +
                           std::to_string(k));
}

inline void for_each_label_subset(std::size_t n, std::size_t min_size, std::size_t max_size,
                                  const std::function<void(const LabelSet&)>& f) {
    for (std::size_t size = min_size; size <= max_size; ++size) {
        LabelSet idx(size);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
            if (depth == size) {
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
}

}  // namespace detail

/// All triangulations (cells are simplices marked by their vertices), sorted.
inline std::vector<MarkedSubdivision> enumerate_triangulations(const PointConfiguration& config) {
    detail::check_enumeration_limits(config);
    detail::Chart ch = detail::chart_of(config);
    const std::size_t k = ch.dim();
    std::vector<LabelSet> cands;
    detail::for_each_label_subset(config.size(), k + 1, k + 1, [&](const LabelSet& s) {
        if (affine_hull(detail::pick(ch.coords, s)).dimension == k) cands.push_back(s);
    });
    return detail::CellSearch(config, std::move(cands)).run();
}

struct SubdivisionEntry {
    MarkedSubdivision subdivision;
    bool regular = false;
    std::optional<HeightFunction> certificate;
};

/// Every marked subdivision, each checked for regularity.
inline std::vector<SubdivisionEntry> enumerate_all_subdivisions(const PointConfiguration& config) {
    detail::check_enumeration_limits(config);
    detail::Chart ch = detail::chart_of(config);
    const std::size_t k = ch.dim();
    std::vector<LabelSet> cands;
    detail::for_each_label_subset(config.size(), k + 1, config.size(), [&](const LabelSet& s) {
        if (affine_hull(detail::pick(ch.coords, s)).dimension == k) cands.push_back(s);
    });
    std::sort(cands.begin(), cands.end());
    std::vector<SubdivisionEntry> out;
    for (auto& sub : detail::CellSearch(config, std::move(cands)).run()) {
        SubdivisionEntry e;
        auto reg = is_regular(sub);
        e.regular = reg.regular;
        e.certificate = reg.certificate;
        e.subdivision = std::move(sub);
        out.push_back(std::move(e));
    }
    return out;
}

struct SecondaryPolytope {
    LatticePolytope polytope;  // in Z^n, one coordinate per label
    std::vector<MarkedSubdivision> triangulations;
    std::vector<IntVector> gkz;  // parallel to triangulations
};

/// Convex hull of the GKZ vectors of all triangulations.
inline SecondaryPolytope secondary_polytope(const PointConfiguration& config) {
    if (!config.is_integral()) throw InputError("secondary polytope needs an integral configuration");
    SecondaryPolytope out;
    out.triangulations = enumerate_triangulations(config);
    for (const auto& t : out.triangulations) out.gkz.push_back(gkz_vector(t));
    out.polytope = LatticePolytope(out.gkz);
    const std::size_t k = affine_hull(config.points()).dimension;
    if (out.polytope.dimension() != config.size() - k - 1)
        throw std::logic_error("secondary polytope has dimension " + std::to_string(out.polytope.dimension()) +
                               ", expected " + std::to_string(config.size() - k - 1));
    return out;
}

struct RegularSubdivisionEntry {
    MarkedSubdivision subdivision;
    std::size_t face_dimension = 0;
    std::vector<std::size_t> face_vertices;  // indices into the secondary polytope's vertices
    HeightFunction height;                   // a relative-interior normal of the face
};

/// Vertex sets of all nonempty faces of a polytope, from its facet incidences.
inline std::vector<std::vector<std::size_t>> polytope_faces(const LatticePolytope& p) {
    std::set<std::vector<std::size_t>> faces;
    std::vector<std::size_t> all(p.vertices().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    faces.insert(all);
    std::vector<std::vector<std::size_t>> frontier;
    for (const auto& f : p.hull().facets)
        if (faces.insert(f.incident).second) frontier.push_back(f.incident);
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& a : frontier)
            for (const auto& f : p.hull().facets) {
                std::vector<std::size_t> meet;
                std::set_intersection(a.begin(), a.end(), f.incident.begin(), f.incident.end(), std::back_inserter(meet));
                if (!meet.empty() && faces.insert(meet).second) next.push_back(meet);
            }
        frontier = std::move(next);
    }
    return {faces.begin(), faces.end()};
}

/// One regular subdivision per nonempty face of the secondary polytope, read
/// off with the sum of the inner facet normals through the face as height.
inline std::vector<RegularSubdivisionEntry> enumerate_regular_subdivisions(const PointConfiguration& config) {
    SecondaryPolytope sec = secondary_polytope(config);
    const auto& poly = sec.polytope;
    std::vector<RegularSubdivisionEntry> out;
    for (const auto& face : polytope_faces(poly)) {
        HeightFunction h(config.size(), Rational(0));
        for (const auto& f : poly.hull().facets)
            if (std::includes(f.incident.begin(), f.incident.end(), face.begin(), face.end())) h = h + f.normal;
        RegularSubdivisionEntry e;
        e.subdivision = regular_subdivision(config, h);
        std::vector<RatVector> verts;
        for (auto v : face) verts.push_back(to_rational(poly.vertices()[v]));
        e.face_dimension = affine_hull(verts).dimension;
        e.face_vertices = face;
        e.height = std::move(h);
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const RegularSubdivisionEntry& a, const RegularSubdivisionEntry& b) {
        if (a.face_dimension != b.face_dimension) return a.face_dimension < b.face_dimension;
        return a.subdivision < b.subdivision;
    });
    return out;
}

/// Marked complex with cells Conv(C_i) and markings C_i; ids are cell indices.
inline MarkedComplex to_marked_complex(const MarkedSubdivision& sub) {
    if (!sub.base.is_integral()) throw InputError("marked complexes need an integral configuration");
    std::vector<CellInput> cells;
    std::map<std::string, std::vector<IntVector>> marks;
    for (std::size_t i = 0; i < sub.cells.size(); ++i) {
        std::vector<IntVector> pts;
        for (auto l : sub.cells[i]) pts.push_back(to_integer(sub.base[l]));
        cells.push_back({std::to_string(i), pts});
        marks[std::to_string(i)] = pts;
    }
    auto v = validate_complex(sub.base.ambient_dim(), cells);
    if (!v.ok()) throw InputError("subdivision cells do not form a complex: " + v.violation->reason);
    return make_marked_complex(std::move(*v.complex), marks);
}

struct StratumDimensions {
    std::size_t secondary_codim = 0;
    std::size_t face_dimension = 0;
    std::size_t gluing_h1_rank = 0;
    bool flag = false;  // gluing moduli exceed the main component's stratum
};

/// Compares the dimension of the secondary face of a regular subdivision with
/// the rank of H1 of its marked complex.
inline StratumDimensions stratum_dimensions(const MarkedSubdivision& sub) {
    auto reg = is_regular(sub);
    if (!reg.regular) throw InputError("stratum dimensions need a regular subdivision");
    SecondaryPolytope sec = secondary_polytope(sub.base);
    const HeightFunction& h = *reg.certificate;
    std::optional<Rational> best;
    std::vector<RatVector> face;
    for (const auto& g : sec.gkz) {
        Rational v = dot(h, to_rational(g));
        if (!best || v < *best) {
            best = v;
            face.clear();
        }
        if (v == *best) face.push_back(to_rational(g));
    }
    StratumDimensions out;
    out.face_dimension = affine_hull(face).dimension;
    out.secondary_codim = sec.polytope.dimension() - out.face_dimension;
    out.gluing_h1_rank = pair_cohomology(to_marked_complex(sub)).cohomology.h1_rank;
    out.flag = out.gluing_h1_rank > out.face_dimension;
    return out;
}

}  // namespace polystrata
