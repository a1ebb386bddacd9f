#pragma once

// Polytopal complexes in Z^g, the lattice sheaf M~ and the Cech lattice
// complexes whose homology, dualized into k*, gives automorphisms (H0) and
// gluings (H1) of stable toric varieties.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polystrata/cells.hpp"
#include "polystrata/lattice.hpp"
#include "polystrata/polytope.hpp"

namespace polystrata {

struct ComplexCell {
    std::string id;
    LatticePolytope polytope;
    std::vector<IntVector> points;  // lattice points, sorted
};

class PolytopalComplex {
public:
    std::size_t g() const { return g_; }
    const std::vector<ComplexCell>& cells() const { return cells_; }
    const ComplexCell& cell(std::size_t i) const { return cells_.at(i); }
    /// Indices of cells that are not a proper face of another listed cell.
    const std::vector<std::size_t>& maximal() const { return maximal_; }
    /// faces()[i] lists the listed cells that are faces of cell i, including i.
    const std::vector<std::vector<std::size_t>>& faces() const { return faces_; }
    bool multiplicity_free() const { return true; }

    std::optional<std::size_t> find(const std::string& id) const {
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i].id == id) return i;
        return std::nullopt;
    }

private:
    friend struct ComplexBuilder;
    std::size_t g_ = 0;
    std::vector<ComplexCell> cells_;
    std::vector<std::size_t> maximal_;
    std::vector<std::vector<std::size_t>> faces_;
};

struct ComplexViolation {
    std::string first;
    std::string second;
    std::string reason;
};

struct ComplexValidation {
    std::optional<PolytopalComplex> complex;
    std::optional<ComplexViolation> violation;
    bool ok() const { return complex.has_value(); }
};

struct CellInput {
    std::string id;
    std::vector<IntVector> vertices;
};

namespace detail {

inline std::vector<RatVector> as_rational(const std::vector<IntVector>& pts) {
    std::vector<RatVector> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(to_rational(p));
    return out;
}

inline std::vector<IntVector> intersect_sorted(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
    std::vector<IntVector> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

struct ComplexBuilder {
    static ComplexValidation build(std::size_t g, const std::vector<CellInput>& input) {
        ComplexValidation result;
        PolytopalComplex c;
        c.g_ = g;
        std::set<std::string> ids;
        for (const auto& in : input) {
            if (!ids.insert(in.id).second) throw InputError("duplicate cell id '" + in.id + "'");
            if (in.vertices.empty()) throw InputError("cell '" + in.id + "' has no vertices");
            for (const auto& v : in.vertices)
                if (v.size() != g) throw InputError("cell '" + in.id + "' has a vertex outside Z^" + std::to_string(g));
            ComplexCell cell{in.id, LatticePolytope(in.vertices), {}};
            cell.points = lattice_points(cell.polytope);
            c.cells_.push_back(std::move(cell));
        }
        const std::size_t n = c.cells_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto& a = c.cells_[i];
                const auto& b = c.cells_[j];
                if (a.polytope == b.polytope) {
                    result.violation = ComplexViolation{a.id, b.id, "the same polytope is listed twice"};
                    return result;
                }
                if (!intersect_properly(detail::as_rational(a.points), detail::as_rational(b.points))) {
                    result.violation = ComplexViolation{a.id, b.id, "intersection is not a common face"};
                    return result;
                }
            }
        c.faces_.assign(n, {});
        std::vector<bool> is_proper_face(n, false);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto& big = c.cells_[i].points;
                const auto& small = c.cells_[j].points;
                if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
                    c.faces_[i].push_back(j);
                    if (i != j) is_proper_face[j] = true;
                }
            }
        for (std::size_t i = 0; i < n; ++i)
            if (!is_proper_face[i]) c.maximal_.push_back(i);
        result.complex = std::move(c);
        return result;
    }
};

/// Checks that any two cells meet in a common face and computes the face poset.
inline ComplexValidation validate_complex(std::size_t g, const std::vector<CellInput>& cells) {
    if (cells.empty()) throw InputError("a complex needs at least one cell");
    return ComplexBuilder::build(g, cells);
}

/// Row basis of the saturation of <(1, m) : m in points> inside Z^{1+g}.
inline IntegerMatrix tilde_lattice(const std::vector<IntVector>& points) {
    if (points.empty()) throw InputError("tilde lattice of an empty cell");
    const std::size_t g = points.front().size();
    IntegerMatrix gens(points.size(), g + 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        gens(i, 0) = 1;
        for (std::size_t j = 0; j < g; ++j) gens(i, j + 1) = points[i][j];
    }
    return saturate(gens);
}

inline IntegerMatrix tilde_lattice(const PolytopalComplex& c, std::size_t cell) {
    return tilde_lattice(c.cell(cell).polytope.vertices());
}

struct LatticeSheaf {
    std::vector<IntegerMatrix> bases;  // one per cell of the complex
};

inline LatticeSheaf lattice_sheaf(const PolytopalComplex& c) {
    LatticeSheaf s;
    for (std::size_t i = 0; i < c.cells().size(); ++i) s.bases.push_back(tilde_lattice(c, i));
    return s;
}

/// Chain complex of free abelian groups C_0 <- C_1 <- ... ; boundary[p] maps
/// C_p to C_{p-1} (ranks[p-1] x ranks[p]); boundary[0] is an empty map.
struct ChainComplex {
    std::vector<std::size_t> ranks;
    std::vector<IntegerMatrix> boundary;

    std::size_t top() const { return ranks.empty() ? 0 : ranks.size() - 1; }

    long euler_characteristic() const {
        long chi = 0;
        for (std::size_t p = 0; p < ranks.size(); ++p) chi += (p % 2 ? -1L : 1L) * static_cast<long>(ranks[p]);
        return chi;
    }

    bool squares_to_zero() const {
        for (std::size_t p = 1; p + 1 < ranks.size(); ++p)
            if (!(boundary[p] * boundary[p + 1]).is_zero()) return false;
        return true;
    }
};

struct Homology {
    std::vector<std::size_t> ranks;
    std::vector<std::vector<Integer>> torsion;

    long euler_characteristic() const {
        long chi = 0;
        for (std::size_t p = 0; p < ranks.size(); ++p) chi += (p % 2 ? -1L : 1L) * static_cast<long>(ranks[p]);
        return chi;
    }
};

/// H_p = ker d_p / im d_{p+1}: rank n_p - rk d_p - rk d_{p+1}, torsion from the SNF of d_{p+1}.
inline Homology homology(const ChainComplex& k) {
    Homology h;
    const std::size_t top = k.ranks.size();
    std::vector<SNFResult> snf(top + 1);
    for (std::size_t p = 1; p < top; ++p) snf[p] = smith_normal_form(k.boundary[p]);
    for (std::size_t p = 0; p < top; ++p) {
        std::size_t rk_out = p >= 1 ? snf[p].rank() : 0;
        std::size_t rk_in = p + 1 < top ? snf[p + 1].rank() : 0;
        h.ranks.push_back(k.ranks[p] - rk_out - rk_in);
        h.torsion.push_back(p + 1 < top ? snf[p + 1].torsion() : std::vector<Integer>{});
    }
    return h;
}

/// Intersections of maximal cells indexed by sorted subsets, grouped by size.
struct Nerve {
    std::vector<std::vector<std::vector<std::size_t>>> simplices;  // [p] -> (p+1)-subsets
    std::vector<std::vector<std::vector<IntVector>>> points;       // common lattice points

    std::size_t index_of(std::size_t p, const std::vector<std::size_t>& s) const {
        auto it = std::lower_bound(simplices[p].begin(), simplices[p].end(), s);
        return static_cast<std::size_t>(it - simplices[p].begin());
    }
};

namespace detail {

/// Nerve of the closed cover by `sets`, each a sorted point list.
inline Nerve build_nerve(const std::vector<std::vector<IntVector>>& sets) {
    Nerve nv;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<IntVector>>> frontier;
    for (std::size_t i = 0; i < sets.size(); ++i) frontier.push_back({{i}, sets[i]});
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end());
        nv.simplices.emplace_back();
        nv.points.emplace_back();
        std::vector<std::pair<std::vector<std::size_t>, std::vector<IntVector>>> next;
        for (auto& [s, pts] : frontier) {
            for (std::size_t j = s.back() + 1; j < sets.size(); ++j) {
                auto common = intersect_sorted(pts, sets[j]);
                if (common.empty()) continue;
                auto t = s;
                t.push_back(j);
                next.push_back({std::move(t), std::move(common)});
            }
            nv.simplices.back().push_back(s);
            nv.points.back().push_back(pts);
        }
        frontier = std::move(next);
    }
    return nv;
}

/// Block offsets for a direct sum with the given summand ranks.
inline std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> out(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) out[i + 1] = out[i] + sizes[i];
    return out;
}

/// Matrix whose columns express each basis row of `sub` in the basis `super`.
inline IntegerMatrix inclusion_matrix(const IntegerMatrix& super, const IntegerMatrix& sub) {
    IntegerMatrix m(super.rows(), sub.rows());
    for (std::size_t j = 0; j < sub.rows(); ++j) {
        auto c = lattice_coordinates(super, sub.row(j));
        if (!c) throw std::logic_error("lattice sheaf is not functorial");
        for (std::size_t i = 0; i < super.rows(); ++i) m(i, j) = (*c)[i];
    }
    return m;
}

/// Generic Cech complex over a nerve: one summand per simplex, with the
/// restriction along the omission of position k weighted by (-1)^k.
template <class Summand, class Restrict>
ChainComplex cech_complex(const Nerve& nv, Summand rank_of, Restrict restriction) {
    ChainComplex k;
    std::vector<std::vector<std::size_t>> offs;
    for (std::size_t p = 0; p < nv.simplices.size(); ++p) {
        std::vector<std::size_t> sizes;
        for (std::size_t s = 0; s < nv.simplices[p].size(); ++s) sizes.push_back(rank_of(p, s));
        offs.push_back(offsets(sizes));
        k.ranks.push_back(offs.back().back());
    }
    k.boundary.push_back(IntegerMatrix(0, k.ranks.empty() ? 0 : k.ranks[0]));
    for (std::size_t p = 1; p < nv.simplices.size(); ++p) {
        IntegerMatrix d(k.ranks[p - 1], k.ranks[p]);
        for (std::size_t s = 0; s < nv.simplices[p].size(); ++s) {
            const auto& simplex = nv.simplices[p][s];
            for (std::size_t pos = 0; pos < simplex.size(); ++pos) {
                auto face = simplex;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(pos));
                std::size_t f = nv.index_of(p - 1, face);
                IntegerMatrix block = restriction(p, s, f);
                const Integer sign = pos % 2 ? -1 : 1;
                for (std::size_t i = 0; i < block.rows(); ++i)
                    for (std::size_t j = 0; j < block.cols(); ++j)
                        d(offs[p - 1][f] + i, offs[p][s] + j) += sign * block(i, j);
            }
        }
        k.boundary.push_back(std::move(d));
    }
    return k;
}

inline std::vector<std::vector<IntVector>> maximal_point_sets(const PolytopalComplex& c) {
    std::vector<std::vector<IntVector>> sets;
    for (auto i : c.maximal()) sets.push_back(c.cell(i).points);
    return sets;
}

}  // namespace detail

/// L_p = sum of M~ over (p+1)-fold intersections of maximal cells.
struct LatticeComplex {
    Nerve nerve;
    std::vector<std::vector<IntegerMatrix>> lattices;  // [p][s] basis of M~ of the intersection
    ChainComplex chains;
};

inline LatticeComplex cech_lattice_complex(const PolytopalComplex& c) {
    LatticeComplex lc;
    lc.nerve = detail::build_nerve(detail::maximal_point_sets(c));
    for (const auto& level : lc.nerve.points) {
        lc.lattices.emplace_back();
        for (const auto& pts : level) lc.lattices.back().push_back(tilde_lattice(pts));
    }
    lc.chains = detail::cech_complex(
        lc.nerve, [&](std::size_t p, std::size_t s) { return lc.lattices[p][s].rows(); },
        [&](std::size_t p, std::size_t s, std::size_t f) {
            return detail::inclusion_matrix(lc.lattices[p - 1][f], lc.lattices[p][s]);
        });
    return lc;
}

/// Cohomology with torus coefficients, read off the lattice homology: since
/// k* is divisible, H^p = Hom(H_p, k*) has torus rank rank H_p and finite
/// part dual to the torsion of H_p.
struct GluingCohomology {
    std::size_t h0_rank = 0;
    std::size_t h1_rank = 0;
    std::vector<Integer> h0_torsion;
    std::vector<Integer> h1_torsion;
    Homology all;
    std::vector<std::size_t> chain_ranks;

    static GluingCohomology from(const ChainComplex& k) {
        GluingCohomology g;
        g.all = homology(k);
        g.chain_ranks = k.ranks;
        if (!g.all.ranks.empty()) {
            g.h0_rank = g.all.ranks[0];
            g.h0_torsion = g.all.torsion[0];
        }
        if (g.all.ranks.size() > 1) {
            g.h1_rank = g.all.ranks[1];
            g.h1_torsion = g.all.torsion[1];
        }
        return g;
    }
};

inline GluingCohomology gluing_cohomology(const PolytopalComplex& c) {
    return GluingCohomology::from(cech_lattice_complex(c).chains);
}

enum class PseudomanifoldVerdict { closed, with_boundary, not_pseudomanifold };

inline const char* to_string(PseudomanifoldVerdict v) {
    switch (v) {
        case PseudomanifoldVerdict::closed: return "closed";
        case PseudomanifoldVerdict::with_boundary: return "with_boundary";
        default: return "not_pseudomanifold";
    }
}

struct PseudomanifoldReport {
    PseudomanifoldVerdict verdict = PseudomanifoldVerdict::not_pseudomanifold;
    std::vector<std::vector<IntVector>> boundary;  // vertex lists of boundary ridges
    std::string witness;                           // empty unless not_pseudomanifold
};

/// Combinatorial surrogate for "manifold with boundary": pure, each ridge in
/// one or two maximal cells, strongly connected through ridges.
inline PseudomanifoldReport pseudomanifold_check(const PolytopalComplex& c) {
    PseudomanifoldReport out;
    const auto& maxi = c.maximal();
    const std::size_t dim = c.cell(maxi.front()).polytope.dimension();
    for (auto i : maxi)
        if (c.cell(i).polytope.dimension() != dim) {
            out.witness = "cell '" + c.cell(i).id + "' has dimension " +
                          std::to_string(c.cell(i).polytope.dimension()) + ", expected " + std::to_string(dim);
            return out;
        }
    if (dim == 0) {
        if (maxi.size() == 1) out.verdict = PseudomanifoldVerdict::closed;
        else out.witness = "several isolated points";
        return out;
    }
    std::map<std::vector<IntVector>, std::vector<std::size_t>> ridges;
    for (std::size_t k = 0; k < maxi.size(); ++k) {
        const auto& poly = c.cell(maxi[k]).polytope;
        for (const auto& f : poly.hull().facets) {
            std::vector<IntVector> key;
            for (auto v : f.incident) key.push_back(poly.vertices()[v]);
            std::sort(key.begin(), key.end());
            ridges[key].push_back(k);
        }
    }
    std::vector<std::vector<std::size_t>> adj(maxi.size());
    for (const auto& [key, owners] : ridges) {
        if (owners.size() > 2) {
            out.witness = "a ridge lies in " + std::to_string(owners.size()) + " maximal cells";
            out.boundary.clear();
            return out;
        }
        if (owners.size() == 1) out.boundary.push_back(key);
        else {
            adj[owners[0]].push_back(owners[1]);
            adj[owners[1]].push_back(owners[0]);
        }
    }
    std::vector<bool> seen(maxi.size(), false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        auto u = todo.front();
        todo.pop();
        for (auto v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                todo.push(v);
            }
    }
    if (reached != maxi.size()) {
        out.witness = "maximal cells are not connected through ridges";
        out.boundary.clear();
        return out;
    }
    out.verdict = out.boundary.empty() ? PseudomanifoldVerdict::closed : PseudomanifoldVerdict::with_boundary;
    return out;
}

/// A complex with a marking C_i (subset of the lattice points, Conv C_i = Q_i) on every maximal cell.
struct MarkedComplex {
    PolytopalComplex complex;
    std::map<std::size_t, std::vector<IntVector>> markings;  // by cell index, sorted
};

/// Markings keyed by cell id. Throws InputError unless Conv(C_i) = Q_i and the
/// markings agree on every shared face.
inline MarkedComplex make_marked_complex(PolytopalComplex c, const std::map<std::string, std::vector<IntVector>>& by_id) {
    MarkedComplex mc;
    for (const auto& [id, pts] : by_id) {
        auto idx = c.find(id);
        if (!idx) throw InputError("marking refers to unknown cell '" + id + "'");
        if (std::find(c.maximal().begin(), c.maximal().end(), *idx) == c.maximal().end())
            throw InputError("marking given for non-maximal cell '" + id + "'");
        std::vector<IntVector> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        const auto& cell = c.cell(*idx);
        for (const auto& p : sorted)
            if (!std::binary_search(cell.points.begin(), cell.points.end(), p))
                throw InputError("marking of '" + id + "' contains a point outside the cell");
        for (const auto& v : cell.polytope.vertices())
            if (!std::binary_search(sorted.begin(), sorted.end(), v))
                throw InputError("marking of '" + id + "' misses a vertex, so its hull is not the cell");
        mc.markings[*idx] = std::move(sorted);
    }
    for (auto i : c.maximal())
        if (!mc.markings.count(i)) throw InputError("maximal cell '" + c.cell(i).id + "' has no marking");
    for (auto i : c.maximal())
        for (auto j : c.maximal()) {
            if (j <= i) continue;
            auto shared = detail::intersect_sorted(c.cell(i).points, c.cell(j).points);
            auto ci = detail::intersect_sorted(mc.markings[i], shared);
            auto cj = detail::intersect_sorted(mc.markings[j], shared);
            if (ci != cj)
                throw InputError("markings of '" + c.cell(i).id + "' and '" + c.cell(j).id +
                                 "' disagree on their common face");
        }
    mc.complex = std::move(c);
    return mc;
}

/// Mapping cone of psi: L' -> L, where L'_p sums Z^{C_S} over the same
/// intersections and psi sends e_m to (1, m). K_n = L_n + L'_{n-1} with
/// d(x, y) = (dx + psi y, -d'y).
inline ChainComplex marked_section_complex(const MarkedComplex& mc) {
    const auto& c = mc.complex;
    LatticeComplex lc = cech_lattice_complex(c);
    std::vector<std::vector<IntVector>> marks;
    for (auto i : c.maximal()) marks.push_back(mc.markings.at(i));
    // Marked points of an intersection are the common marked points; compute per nerve simplex.
    const Nerve& nv = lc.nerve;
    std::vector<std::vector<std::vector<IntVector>>> mpts(nv.simplices.size());
    for (std::size_t p = 0; p < nv.simplices.size(); ++p)
        for (const auto& s : nv.simplices[p]) {
            std::vector<IntVector> common = marks[s[0]];
            for (std::size_t k = 1; k < s.size(); ++k) common = detail::intersect_sorted(common, marks[s[k]]);
            mpts[p].push_back(std::move(common));
        }
    ChainComplex lp = detail::cech_complex(
        nv, [&](std::size_t p, std::size_t s) { return mpts[p][s].size(); },
        [&](std::size_t p, std::size_t s, std::size_t f) {
            const auto& from = mpts[p][s];
            const auto& to = mpts[p - 1][f];
            IntegerMatrix m(to.size(), from.size());
            for (std::size_t j = 0; j < from.size(); ++j) {
                auto it = std::lower_bound(to.begin(), to.end(), from[j]);
                m(static_cast<std::size_t>(it - to.begin()), j) = 1;
            }
            return m;
        });

    // psi_p : L'_p -> L_p, block diagonal.
    std::vector<IntegerMatrix> psi;
    for (std::size_t p = 0; p < nv.simplices.size(); ++p) {
        IntegerMatrix m(lc.chains.ranks[p], lp.ranks[p]);
        std::size_t row = 0, col = 0;
        for (std::size_t s = 0; s < nv.simplices[p].size(); ++s) {
            const auto& basis = lc.lattices[p][s];
            for (const auto& pt : mpts[p][s]) {
                IntVector v(pt.size() + 1);
                v[0] = 1;
                std::copy(pt.begin(), pt.end(), v.begin() + 1);
                auto coords = lattice_coordinates(basis, v);
                for (std::size_t i = 0; i < basis.rows(); ++i) m(row + i, col) = (*coords)[i];
                ++col;
            }
            row += basis.rows();
        }
        psi.push_back(std::move(m));
    }

    const std::size_t top = nv.simplices.size();  // L, L' live in degrees 0..top-1
    ChainComplex k;
    for (std::size_t n = 0; n <= top; ++n) {
        std::size_t r = (n < top ? lc.chains.ranks[n] : 0) + (n >= 1 ? lp.ranks[n - 1] : 0);
        k.ranks.push_back(r);
    }
    k.boundary.push_back(IntegerMatrix(0, k.ranks[0]));
    for (std::size_t n = 1; n <= top; ++n) {
        IntegerMatrix d(k.ranks[n - 1], k.ranks[n]);
        const std::size_t ln = n < top ? lc.chains.ranks[n] : 0;      // x part of K_n
        const std::size_t ln1 = lc.chains.ranks[n - 1];                // x part of K_{n-1}
        if (n < top)
            for (std::size_t i = 0; i < ln1; ++i)
                for (std::size_t j = 0; j < ln; ++j) d(i, j) = lc.chains.boundary[n](i, j);
        const IntegerMatrix& ps = psi[n - 1];
        for (std::size_t i = 0; i < ps.rows(); ++i)
            for (std::size_t j = 0; j < ps.cols(); ++j) d(i, ln + j) = ps(i, j);
        if (n >= 2) {
            const IntegerMatrix& dp = lp.boundary[n - 1];
            for (std::size_t i = 0; i < dp.rows(); ++i)
                for (std::size_t j = 0; j < dp.cols(); ++j) d(ln1 + i, ln + j) = -dp(i, j);
        }
        k.boundary.push_back(std::move(d));
    }
    return k;
}

struct PairCohomology {
    GluingCohomology cohomology;
    bool automorphisms_finite = true;  // h0_rank == 0
};

inline PairCohomology pair_cohomology(const MarkedComplex& mc) {
    PairCohomology out;
    out.cohomology = GluingCohomology::from(marked_section_complex(mc));
    out.automorphisms_finite = out.cohomology.h0_rank == 0;
    return out;
}

}  // namespace polystrata
