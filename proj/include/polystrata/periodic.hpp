#pragma once

// Periodic subdivisions of R^g: Delaunay and semi-Delaunay decompositions of
// quadratic heights, second Voronoi cones, GL(g,Z) equivalence, hyperplane
// systems and cographic subdivisions.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polystrata/hull.hpp"
#include "polystrata/lattice.hpp"
#include "polystrata/lp.hpp"
#include "polystrata/matroid.hpp"
#include "polystrata/polytope.hpp"
#include "polystrata/snf.hpp"

namespace polystrata {

/// Symmetric rational g x g matrix, certified positive semidefinite.
class QuadraticForm {
public:
    QuadraticForm() = default;
    explicit QuadraticForm(RationalMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0) throw InputError("quadratic form must be a nonempty square matrix");
        const std::size_t g = m_.rows();
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (m_(i, j) != m_(j, i)) throw InputError("quadratic form matrix is not symmetric");
        // Every principal minor must be nonnegative.
        for (std::uint32_t s = 1; s < (std::uint32_t(1) << g); ++s) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < g; ++i)
                if (s >> i & 1U) idx.push_back(i);
            if (determinant(select_cols(select_rows(m_, idx), idx)) < 0)
                throw InputError("quadratic form is not positive semidefinite");
        }
        definite_ = true;
        for (std::size_t k = 1; k <= g && definite_; ++k) {
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            if (determinant(select_cols(select_rows(m_, idx), idx)) <= 0) definite_ = false;
        }
    }

    static QuadraticForm identity(std::size_t g) { return QuadraticForm(RationalMatrix::identity(g)); }

    std::size_t g() const { return m_.rows(); }
    const RationalMatrix& matrix() const { return m_; }
    bool positive_definite() const { return definite_; }
    bool is_zero() const { return m_.is_zero(); }

    Rational operator()(const RatVector& x) const {
        Rational s = 0;
        for (std::size_t i = 0; i < g(); ++i)
            for (std::size_t j = 0; j < g(); ++j)
                if (m_(i, j) != 0) s += m_(i, j) * x[i] * x[j];
        return s;
    }
    Rational operator()(const IntVector& x) const { return (*this)(to_rational(x)); }

    /// U^T q U, the form pulled back along x -> U x.
    QuadraticForm pulled_back(const IntegerMatrix& u) const {
        RationalMatrix ur = to_rational(u);
        return QuadraticForm(ur.transpose() * m_ * ur);
    }

    QuadraticForm scaled(const Rational& c) const {
        if (c <= 0) throw InputError("forms can only be scaled by positive numbers");
        RationalMatrix m = m_;
        for (std::size_t i = 0; i < g(); ++i)
            for (std::size_t j = 0; j < g(); ++j) m(i, j) *= c;
        return QuadraticForm(m);
    }

private:
    RationalMatrix m_;
    bool definite_ = false;
};

namespace detail {

/// Reduce x modulo the lattice with upper triangular row basis h (row HNF of full rank).
inline IntVector reduce_mod(const IntegerMatrix& h, IntVector x) {
    for (std::size_t i = 0; i < h.rows(); ++i) {
        Integer t = floor(Rational(x[i]) / Rational(h(i, i)));
        if (t != 0)
            for (std::size_t j = 0; j < x.size(); ++j) x[j] -= t * h(i, j);
    }
    return x;
}

inline IntegerMatrix period_hnf(const IntegerMatrix& basis) {
    if (basis.rows() != basis.cols() || basis.rows() == 0) throw InputError("period lattice needs a square basis");
    if (determinant(basis) == 0) throw InputError("period lattice has infinite index");
    return hermite_normal_form(basis);
}

}  // namespace detail

/// r(m mod Gamma): one rational per residue class.
class ResidueFunction {
public:
    ResidueFunction() = default;
    ResidueFunction(const IntegerMatrix& period_basis, std::map<IntVector, Rational> values)
        : hnf_(detail::period_hnf(period_basis)) {
        for (auto& [res, val] : values) {
            if (res.size() != hnf_.cols()) throw InputError("residue has the wrong length");
            IntVector key = residue(res);
            if (values_.count(key)) throw InputError("two values given for one residue class");
            values_[key] = val;
        }
        for (const auto& r : residues())
            if (!values_.count(r)) throw InputError("residue function is missing a residue class");
    }

    static ResidueFunction zero(const IntegerMatrix& period_basis) {
        ResidueFunction r;
        r.hnf_ = detail::period_hnf(period_basis);
        for (const auto& res : r.residues()) r.values_[res] = 0;
        return r;
    }
    static ResidueFunction trivial(std::size_t g) { return zero(IntegerMatrix::identity(g)); }

    std::size_t g() const { return hnf_.cols(); }
    const IntegerMatrix& period() const { return hnf_; }
    IntVector residue(const IntVector& m) const { return detail::reduce_mod(hnf_, m); }
    Rational operator()(const IntVector& m) const { return values_.at(residue(m)); }
    const std::map<IntVector, Rational>& values() const { return values_; }

    bool is_constant() const {
        for (const auto& [k, v] : values_)
            if (v != values_.begin()->second) return false;
        return true;
    }

    /// Canonical representatives: the box prod [0, h_ii).
    std::vector<IntVector> residues() const {
        std::vector<IntVector> out;
        IntVector cur(g(), Integer(0));
        for (;;) {
            out.push_back(cur);
            std::size_t i = g();
            for (;;) {
                if (i == 0) return out;
                --i;
                cur[i] += 1;
                if (cur[i] < hnf_(i, i)) break;
                cur[i] = 0;
            }
        }
    }

private:
    IntegerMatrix hnf_;
    std::map<IntVector, Rational> values_;
};

struct PeriodicCell {
    std::vector<RatVector> vertices;  // sorted
    std::vector<RatVector> marking;   // sorted

    friend bool operator==(const PeriodicCell& a, const PeriodicCell& b) {
        return a.vertices == b.vertices && a.marking == b.marking;
    }
    friend bool operator<(const PeriodicCell& a, const PeriodicCell& b) {
        if (a.vertices != b.vertices) return a.vertices < b.vertices;
        return a.marking < b.marking;
    }
};

/// One representative per Gamma-orbit of maximal cells: the translate whose
/// lexicographically smallest vertex has Gamma-coordinates in [0,1).
struct PeriodicSubdivision {
    std::size_t g = 0;
    IntegerMatrix period_basis;  // Hermite normal form rows
    std::vector<PeriodicCell> cells;

    bool integral_vertices() const {
        for (const auto& c : cells)
            for (const auto& v : c.vertices)
                if (!is_integral(v)) return false;
        return true;
    }

    friend bool operator==(const PeriodicSubdivision& a, const PeriodicSubdivision& b) {
        return a.g == b.g && a.period_basis == b.period_basis && a.cells == b.cells;
    }
};

struct WindowOptions {
    long initial_window = 2;
    long max_window = 64;
};

namespace detail {

inline PeriodicCell canonical_cell(std::vector<RatVector> vertices, std::vector<RatVector> marking,
                                   const IntegerMatrix& period) {
    std::sort(vertices.begin(), vertices.end());
    std::sort(marking.begin(), marking.end());
    const RatVector& low = vertices.front();
    auto coords = solve(to_rational(period.transpose()), low);
    RatVector shift(low.size(), Rational(0));
    for (std::size_t i = 0; i < period.rows(); ++i) {
        Integer t = floor((*coords)[i]);
        if (t != 0)
            for (std::size_t j = 0; j < low.size(); ++j) shift[j] += Rational(t * period(i, j));
    }
    for (auto& v : vertices) v = v - shift;
    for (auto& m : marking) m = m - shift;
    return {std::move(vertices), std::move(marking)};
}

inline PeriodicSubdivision finish(std::size_t g, IntegerMatrix period, std::vector<PeriodicCell> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return {g, std::move(period), std::move(cells)};
}

/// All d in [-w, w]^g.
inline std::vector<IntVector> cube(std::size_t g, long w) {
    std::vector<IntVector> out;
    IntVector cur(g, Integer(-w));
    for (;;) {
        out.push_back(cur);
        std::size_t i = g;
        for (;;) {
            if (i == 0) return out;
            --i;
            if (cur[i] < w) {
                cur[i] += 1;
                break;
            }
            cur[i] = -w;
        }
    }
}

inline Rational quad(const RationalMatrix& q, const RatVector& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            if (q(i, j) != 0) s += q(i, j) * x[i] * x[j];
    return s;
}

/// Smallest nonnegative integer s with s^2 >= v.
inline Integer sqrt_ceil(const Rational& v) {
    if (v <= 0) return 0;
    Integer c = ceil(v);
    Integer s = boost::multiprecision::sqrt(c);
    if (s * s < c) s += 1;
    return s;
}

/// Smallest R such that every x with m(x + shift) <= rho, m positive definite,
/// lies in [-R, R]^g after widening each coordinate by slack.
inline long ellipsoid_radius(const RationalMatrix& m_inv, const RatVector& shift, const Rational& rho,
                             const RatVector& slack) {
    Integer r = 0;
    for (std::size_t i = 0; i < shift.size(); ++i) {
        Integer ri = ceil(abs(shift[i]) + slack[i]) + sqrt_ceil(rho * m_inv(i, i));
        r = std::max(r, ri);
    }
    if (r > 1'000'000) throw RefusedError("certificate window too large");
    return r.convert_to<long>();
}

/// h(m) = q(m) + r(m mod Gamma).
struct QuadraticHeight {
    RationalMatrix q;
    ResidueFunction r;
    Rational r_min;

    QuadraticHeight(RationalMatrix form, ResidueFunction res) : q(std::move(form)), r(std::move(res)) {
        r_min = r.values().begin()->second;
        for (const auto& [k, v] : r.values()) r_min = std::min(r_min, v);
    }
    Rational operator()(const IntVector& m) const { return quad(q, to_rational(m)) + r(m); }
};

struct LocalCell {
    RatVector slope;               // gradient of the supporting affine function
    std::vector<IntVector> tight;  // lattice points on it, sorted
};

/// Cells of the lower envelope through p, from the vertices of
/// {a : a.(m - p) <= h(m) - h(p) for m in p + [-w, w]^g}.
inline std::vector<LocalCell> cells_through(const QuadraticHeight& h, const IntVector& p, long w) {
    const std::size_t g = p.size();
    const Rational hp = h(p);
    std::vector<std::pair<Rational, IntVector>> diffs;
    for (auto& d : cube(g, w)) {
        if (std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 0; })) continue;
        diffs.emplace_back(h(p + d) - hp, d);
    }
    std::stable_sort(diffs.begin(), diffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    IntegerMatrix rows(diffs.size() + 1, g + 1);
    rows(0, 0) = 1;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        RatVector r(g + 1);
        r[0] = diffs[i].first;
        for (std::size_t j = 0; j < g; ++j) r[j + 1] = -Rational(diffs[i].second[j]);
        IntVector ir = primitive(r);
        for (std::size_t j = 0; j <= g; ++j) rows(i + 1, j) = ir[j];
    }
    std::vector<LocalCell> out;
    for (const auto& ray : extreme_rays(rows)) {
        if (ray.v[0] == 0) throw std::logic_error("local envelope cone is unbounded");
        LocalCell c;
        for (std::size_t j = 0; j < g; ++j) c.slope.push_back(Rational(ray.v[j + 1]) / Rational(ray.v[0]));
        c.tight.push_back(p);
        for (std::size_t i = 0; i < diffs.size(); ++i)
            if (ray.zeros.test(i + 1)) c.tight.push_back(p + diffs[i].second);
        std::sort(c.tight.begin(), c.tight.end());
        out.push_back(std::move(c));
    }
    return out;
}

/// Exact emptiness certificate for positive definite q. With x = m - p,
/// h(m) - alpha(m) >= q(x) + b.x + c0 where b = 2qp - a and c0 = r_min - r(p),
/// so points on or below alpha lie in an ellipsoid whose bounding box is
/// checked exhaustively. Fails when that box exceeds the window w.
inline bool certified(const QuadraticHeight& h, const RationalMatrix& q_inv, const IntVector& p,
                      const LocalCell& c, long w) {
    const std::size_t g = p.size();
    RatVector b = scaled(h.q * to_rational(p), Rational(2)) - c.slope;
    RatVector y0 = scaled(q_inv * b, Rational(1) / 2);
    Rational rho = quad(h.q, y0) - (h.r_min - h.r(p));
    long radius = ellipsoid_radius(q_inv, y0, rho, RatVector(g, Rational(0)));
    if (radius > w) return false;
    const Rational hp = h(p);
    for (const auto& d : cube(g, radius)) {
        IntVector m = p + d;
        Rational gap = h(m) - hp - dot(c.slope, to_rational(d));
        if (gap < 0) return false;
        if (gap == 0 && !std::binary_search(c.tight.begin(), c.tight.end(), m)) return false;
    }
    return true;
}

/// Gamma-periodic lower envelope of q(m) + r(m), q positive definite. The
/// window doubles until every cell found carries an exact certificate.
inline std::vector<PeriodicCell> periodic_envelope(const QuadraticHeight& h, const WindowOptions& opt) {
    if (opt.initial_window < 1 || opt.max_window < opt.initial_window)
        throw InputError("window bounds must satisfy 1 <= initial <= max");
    RationalMatrix q_inv = *inverse(h.q);
    long last = 0;
    for (long w = opt.initial_window; w <= opt.max_window; w *= 2) {
        last = w;
        bool ok = true;
        std::vector<PeriodicCell> cells;
        for (const auto& p : h.r.residues()) {
            for (auto& c : cells_through(h, p, w)) {
                if (!certified(h, q_inv, p, c, 2 * w)) {
                    ok = false;
                    break;
                }
                std::vector<RatVector> marking;
                for (const auto& m : c.tight) marking.push_back(to_rational(m));
                std::vector<RatVector> verts;
                LatticePolytope poly(c.tight);
                for (const auto& v : poly.vertices()) verts.push_back(to_rational(v));
                cells.push_back(canonical_cell(std::move(verts), std::move(marking), h.r.period()));
            }
            if (!ok) break;
        }
        if (ok) return cells;
    }
    throw RefusedError("periodic envelope not certified within window " + std::to_string(last) +
                       "; raise the window bound");
}

/// Whether the affine function through h on the marking stays below h on all
/// of Z^g. h is periodic along L = N (ker q cap Z^g) with N = [Z^g : Gamma], so
/// the check reduces to a box around p.
inline bool below_everywhere(const QuadraticHeight& h, const PeriodicCell& c, const std::vector<RatVector>& kern,
                             const RationalMatrix& m_inv) {
    const std::size_t g = h.q.rows();
    std::vector<IntVector> pts;
    for (const auto& m : c.marking) pts.push_back(to_integer(m));
    std::vector<std::size_t> basis;
    {
        std::vector<RatVector> picked;
        for (std::size_t i = 0; i < pts.size() && picked.size() < g + 1; ++i) {
            picked.push_back(c.marking[i]);
            if (affine_hull(picked).dimension + 1 != picked.size()) picked.pop_back();
            else basis.push_back(i);
        }
    }
    RationalMatrix a(g + 1, g + 1);
    RatVector rhs(g + 1);
    for (std::size_t i = 0; i <= g; ++i) {
        for (std::size_t j = 0; j < g; ++j) a(i, j) = c.marking[basis[i]][j];
        a(i, g) = 1;
        rhs[i] = h(pts[basis[i]]);
    }
    RatVector alpha = *solve(a, rhs);
    RatVector slope(alpha.begin(), alpha.end() - 1);
    const IntVector& p = pts.front();
    const Rational hp = h(p);
    for (const auto& m : pts)
        if (hp + dot(slope, to_rational(m - p)) != h(m)) return false;

    RatVector b = scaled(h.q * to_rational(p), Rational(2)) - slope;
    for (const auto& k : kern)
        if (dot(b, k) != 0) return false;  // unbounded below along the kernel
    RatVector y0 = *solve(h.q, scaled(b, Rational(1) / 2));
    Rational rho = quad(h.q, y0) - (h.r_min - h.r(p));
    Integer index = abs(determinant(h.r.period()));
    RatVector slack(g, Rational(0));
    for (const auto& k : kern) {
        IntVector l = primitive(k);
        for (std::size_t i = 0; i < g; ++i) slack[i] += Rational(abs(l[i]) * index);
    }
    long radius = ellipsoid_radius(m_inv, y0, rho, slack);
    for (const auto& d : cube(g, radius)) {
        if (h(p + d) < hp + dot(slope, to_rational(d))) return false;
    }
    return true;
}

}  // namespace detail

/// Delaunay decomposition of Z^g for the height m -> q(m).
inline PeriodicSubdivision delaunay(const QuadraticForm& q, const WindowOptions& opt = {}) {
    if (!q.positive_definite()) throw InputError("delaunay needs a positive definite form; use semi_delaunay");
    detail::QuadraticHeight h(q.matrix(), ResidueFunction::trivial(q.g()));
    return detail::finish(q.g(), h.r.period(), detail::periodic_envelope(h, opt));
}

/// Gamma-periodic subdivision for h(m) = q(m) + r(m mod Gamma). For a
/// semidefinite q the envelope is flat along ker q; its cells are refined by
/// the secondary height |pi_K m|^2 (orthogonal projection onto ker q).
inline PeriodicSubdivision semi_delaunay(const QuadraticForm& q, const ResidueFunction& r, const WindowOptions& opt = {}) {
    const std::size_t g = q.g();
    if (r.g() != g) throw InputError("form and residue function have different dimensions");
    if (q.positive_definite())
        return detail::finish(g, r.period(), detail::periodic_envelope(detail::QuadraticHeight(q.matrix(), r), opt));
    if (q.is_zero() && r.is_constant()) throw InputError("improper height: q = 0 and r is constant, so the envelope is flat");

    // ker q is rational, hence spanned by vectors of Gamma.
    auto kern = kernel(q.matrix());
    RationalMatrix kb = RationalMatrix::from_rows(kern, g).transpose();  // g x k
    RationalMatrix proj = kb * (*inverse(kb.transpose() * kb)) * kb.transpose();
    RationalMatrix lifted = q.matrix();
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) lifted(i, j) += proj(i, j);
    RationalMatrix m_inv = *inverse(lifted);
    detail::QuadraticHeight h(q.matrix(), r);

    // Lexicographic refinement as h + eps |pi_K m|^2 for small enough eps:
    // small enough once every cell lies inside a cell of h.
    Rational eps = 1;
    for (int attempt = 0; attempt < 40; ++attempt, eps /= 2) {
        RationalMatrix qe = q.matrix();
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) qe(i, j) += eps * proj(i, j);
        auto cells = detail::periodic_envelope(detail::QuadraticHeight(qe, r), opt);
        bool refines = std::all_of(cells.begin(), cells.end(),
                                   [&](const PeriodicCell& c) { return detail::below_everywhere(h, c, kern, m_inv); });
        if (refines) return detail::finish(g, r.period(), std::move(cells));
    }
    throw InputError("semi-Delaunay refinement did not settle");
}

/// Same Delaunay decomposition, i.e. the same open cone of the second Voronoi fan.
inline bool same_voronoi_cone(const QuadraticForm& a, const QuadraticForm& b, const WindowOptions& opt = {}) {
    if (a.g() != b.g()) throw InputError("forms have different dimensions");
    return delaunay(a, opt) == delaunay(b, opt);
}

/// Dimension of the space of forms q' whose lifts make every marking of d
/// co-hyperplanar. The generating form certifies that d is a Delaunay decomposition.
inline std::size_t voronoi_cone_dimension(const PeriodicSubdivision& d, const QuadraticForm& generating,
                                          const WindowOptions& opt = {}) {
    const std::size_t g = d.g;
    if (generating.g() != g) throw InputError("generating form has the wrong dimension");
    if (!(delaunay(generating, opt) == d)) throw InputError("generating form does not produce this subdivision");
    const std::size_t nq = g * (g + 1) / 2;
    const std::size_t vars = nq + d.cells.size() * (g + 1);
    std::vector<RatVector> rows;
    for (std::size_t c = 0; c < d.cells.size(); ++c)
        for (const auto& m : d.cells[c].marking) {
            RatVector row(vars, Rational(0));
            std::size_t k = 0;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = i; j < g; ++j, ++k) row[k] = (i == j ? 1 : 2) * m[i] * m[j];
            const std::size_t off = nq + c * (g + 1);
            for (std::size_t i = 0; i < g; ++i) row[off + i] = -m[i];
            row[off + g] = -1;
            rows.push_back(std::move(row));
        }
    auto sol = kernel(RationalMatrix::from_rows(rows, vars));
    std::vector<RatVector> projected;
    for (const auto& v : sol) projected.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nq));
    if (projected.empty()) return 0;
    return rank(RationalMatrix::from_rows(projected, nq));
}

/// U . d: cells, markings and periods pushed forward by x -> U x.
inline PeriodicSubdivision apply(const IntegerMatrix& u, const PeriodicSubdivision& d) {
    if (u.rows() != d.g || u.cols() != d.g || abs(determinant(u)) != 1) throw InputError("U must be in GL(g, Z)");
    RationalMatrix ur = to_rational(u);
    IntegerMatrix period(d.g, d.g);
    for (std::size_t i = 0; i < d.g; ++i) {
        IntVector v = u * d.period_basis.row(i);
        for (std::size_t j = 0; j < d.g; ++j) period(i, j) = v[j];
    }
    period = hermite_normal_form(period);
    std::vector<PeriodicCell> cells;
    for (const auto& c : d.cells) {
        std::vector<RatVector> vs, ms;
        for (const auto& v : c.vertices) vs.push_back(ur * v);
        for (const auto& m : c.marking) ms.push_back(ur * m);
        cells.push_back(detail::canonical_cell(std::move(vs), std::move(ms), period));
    }
    return detail::finish(d.g, std::move(period), std::move(cells));
}

struct GlEquivalence {
    bool found = false;
    std::optional<IntegerMatrix> witness;  // U with U . d1 == d2
    std::string reason;                    // why the search stopped without a witness
};

namespace detail {

/// Orbit data that U cannot change: cell count, covolume and per-cell
/// (volume, vertex count, marking size).
inline std::vector<std::string> gl_invariants(const PeriodicSubdivision& d) {
    std::vector<std::string> out;
    out.push_back("cells:" + std::to_string(d.cells.size()));
    out.push_back("covolume:" + to_string(abs(Rational(determinant(d.period_basis)))));
    std::vector<std::string> per;
    for (const auto& c : d.cells)
        per.push_back(to_string(euclidean_volume(c.vertices)) + "/" + std::to_string(c.vertices.size()) + "/" +
                      std::to_string(c.marking.size()));
    std::sort(per.begin(), per.end());
    out.insert(out.end(), per.begin(), per.end());
    return out;
}

inline std::vector<IntegerMatrix> gl_generators(std::size_t g) {
    std::vector<IntegerMatrix> gens;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            if (i == j) continue;
            for (int s : {1, -1}) {
                IntegerMatrix t = IntegerMatrix::identity(g);
                t(i, j) = s;
                gens.push_back(t);
            }
            if (i < j) {
                IntegerMatrix p = IntegerMatrix::identity(g);
                p.swap_rows(i, j);
                gens.push_back(p);
            }
        }
    IntegerMatrix flip = IntegerMatrix::identity(g);
    flip(0, 0) = -1;
    gens.push_back(flip);
    return gens;
}

}  // namespace detail

/// Breadth-first search over words of length <= word_bound in transvections,
/// transpositions and a sign flip. A negative answer is inconclusive.
inline GlEquivalence gl_equivalent(const PeriodicSubdivision& a, const PeriodicSubdivision& b, std::size_t word_bound) {
    GlEquivalence out;
    if (a.g != b.g) throw InputError("subdivisions live in different dimensions");
    if (detail::gl_invariants(a) != detail::gl_invariants(b)) {
        out.reason = "invariants differ";
        return out;
    }
    const auto gens = detail::gl_generators(a.g);
    std::set<std::vector<IntVector>> seen;
    std::deque<std::pair<IntegerMatrix, std::size_t>> todo;
    todo.emplace_back(IntegerMatrix::identity(a.g), 0);
    seen.insert(todo.front().first.to_rows());
    while (!todo.empty()) {
        auto [u, depth] = todo.front();
        todo.pop_front();
        if (apply(u, a) == b) {
            out.found = true;
            out.witness = u;
            return out;
        }
        if (depth == word_bound) continue;
        for (const auto& s : gens) {
            IntegerMatrix next = s * u;
            if (seen.insert(next.to_rows()).second) todo.emplace_back(std::move(next), depth + 1);
        }
    }
    out.reason = "no witness up to word length " + std::to_string(word_bound);
    return out;
}

namespace detail {

/// Regions of the central arrangement {n . y = 0}: sign vectors with a witness.
inline std::vector<std::vector<int>> central_regions(const std::vector<RatVector>& normals, std::size_t dim) {
    struct Region {
        std::vector<int> signs;
        RatVector witness;
    };
    std::vector<Region> regions{{{}, RatVector(dim, Rational(0))}};
    for (std::size_t i = 0; i < normals.size(); ++i) {
        std::vector<Region> next;
        for (auto& reg : regions) {
            for (int s : {1, -1}) {
                if (s * sign(dot(normals[i], reg.witness)) > 0) {
                    Region r = reg;
                    r.signs.push_back(s);
                    next.push_back(std::move(r));
                    continue;
                }
                LPProblem lp(dim);
                for (std::size_t j = 0; j < reg.signs.size(); ++j) lp.add_gt(scaled(normals[j], Rational(reg.signs[j])), 0);
                lp.add_gt(scaled(normals[i], Rational(s)), 0);
                if (auto y = lp_feasible(lp)) {
                    Region r{reg.signs, *y};
                    r.signs.push_back(s);
                    next.push_back(std::move(r));
                }
            }
        }
        regions = std::move(next);
    }
    std::vector<std::vector<int>> out;
    for (auto& r : regions) out.push_back(std::move(r.signs));
    return out;
}

inline std::vector<IntVector> lattice_points_of(const std::vector<RatVector>& vertices,
                                                const std::vector<RatVector>& normals, const RatVector& rhs) {
    const std::size_t d = vertices.front().size();
    IntVector lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rational mn = vertices.front()[j], mx = mn;
        for (const auto& v : vertices) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = ceil(mn);
        hi[j] = floor(mx);
        if (lo[j] > hi[j]) return {};
    }
    std::vector<IntVector> out;
    IntVector cur = lo;
    for (;;) {
        RatVector x = to_rational(cur);
        bool inside = true;
        for (std::size_t i = 0; i < normals.size() && inside; ++i)
            if (dot(normals[i], x) < rhs[i]) inside = false;
        if (inside) out.push_back(cur);
        std::size_t i = d;
        for (;;) {
            if (i == 0) return out;
            --i;
            if (cur[i] < hi[i]) {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
        }
    }
}

}  // namespace detail

/// Z^r-periodic subdivision of R^r cut out by the hyperplanes {l_i . x = n}, n in Z.
inline PeriodicSubdivision hyperplane_subdivision(const VectorSystem& l) {
    const std::size_t r = l.r;
    if (r == 0) throw InputError("hyperplane systems need r >= 1");
    // One family per functional up to sign; zero functionals cut nothing.
    std::vector<IntVector> fam;
    for (const auto& v : l.vectors) {
        if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) continue;
        IntVector key = v;
        for (const auto& x : v)
            if (x != 0) {
                if (x < 0) key = scaled(v, Integer(-1));
                break;
            }
        if (std::find(fam.begin(), fam.end(), key) == fam.end()) fam.push_back(key);
    }
    const std::size_t n = fam.size();
    IntegerMatrix lmat = IntegerMatrix::from_rows(fam, r);
    if (n == 0 || rank(lmat) != r) throw InputError("hyperplane normals do not span R^r");

    // Arrangement vertices modulo Z^r: x = L_S^{-1} k over bases S.
    std::set<RatVector> reps;
    {
        std::vector<std::size_t> idx(r);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
            if (depth == r) {
                IntegerMatrix ls = select_rows(lmat, idx);
                if (determinant(ls) == 0) return;
                SNFResult s = smith_normal_form(ls);
                std::vector<Integer> dvals = s.invariant_factors;
                IntVector j(r, Integer(0));
                for (;;) {
                    RatVector y(r);
                    for (std::size_t i = 0; i < r; ++i) y[i] = Rational(j[i]) / Rational(dvals[i]);
                    RatVector x = to_rational(s.right) * y;
                    for (auto& xi : x) xi -= Rational(floor(xi));
                    reps.insert(x);
                    std::size_t i = r;
                    bool more = false;
                    while (i > 0) {
                        --i;
                        if (j[i] + 1 < dvals[i]) {
                            j[i] += 1;
                            for (std::size_t t = i + 1; t < r; ++t) j[t] = 0;
                            more = true;
                            break;
                        }
                    }
                    if (!more) break;
                }
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                idx[depth] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
    }

    // A fixed basis S of families fixes a translation-equivariant centre of each cell.
    std::vector<std::size_t> basis;
    {
        std::vector<RatVector> picked;
        for (std::size_t i = 0; i < n && basis.size() < r; ++i) {
            picked.push_back(to_rational(fam[i]));
            if (rank(RationalMatrix::from_rows(picked)) == picked.size()) basis.push_back(i);
            else picked.pop_back();
        }
    }
    RationalMatrix ls_inv = *inverse(to_rational(select_rows(lmat, basis)));

    std::set<IntVector> seen_slabs;
    std::vector<PeriodicCell> cells;
    for (const auto& x0 : reps) {
        std::vector<std::size_t> through;
        std::vector<RatVector> normals;
        for (std::size_t i = 0; i < n; ++i)
            if (is_integral(Rational(dot(to_rational(fam[i]), x0)))) {
                through.push_back(i);
                normals.push_back(to_rational(fam[i]));
            }
        for (const auto& signs : detail::central_regions(normals, r)) {
            // Cell = {k_i <= l_i . x <= k_i + 1}.
            IntVector k(n);
            for (std::size_t i = 0; i < n; ++i) k[i] = floor(dot(to_rational(fam[i]), x0));
            for (std::size_t t = 0; t < through.size(); ++t)
                if (signs[t] < 0) k[through[t]] -= 1;
            RatVector centre_rhs(r);
            for (std::size_t i = 0; i < r; ++i) centre_rhs[i] = Rational(k[basis[i]]) + Rational(1) / 2;
            RatVector centre = ls_inv * centre_rhs;
            IntVector shift(r);
            for (std::size_t i = 0; i < r; ++i) shift[i] = floor(centre[i]);
            for (std::size_t i = 0; i < n; ++i) k[i] -= dot(fam[i], shift);
            if (!seen_slabs.insert(k).second) continue;

            std::vector<RatVector> ineq;
            RatVector rhs;
            for (std::size_t i = 0; i < n; ++i) {
                ineq.push_back(to_rational(fam[i]));
                rhs.push_back(Rational(k[i]));
                ineq.push_back(to_rational(scaled(fam[i], Integer(-1))));
                rhs.push_back(-Rational(k[i] + 1));
            }
            auto verts = enumerate_vertices(r, ineq, rhs);
            std::vector<RatVector> marking;
            for (const auto& p : detail::lattice_points_of(verts, ineq, rhs)) marking.push_back(to_rational(p));
            cells.push_back(detail::canonical_cell(std::move(verts), std::move(marking), IntegerMatrix::identity(r)));
        }
    }
    return detail::finish(r, IntegerMatrix::identity(r), std::move(cells));
}

/// Vertices 0..n-1 and oriented edges (tail, head); loops and parallel edges allowed.
struct Graph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    Graph() = default;
    Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> es) : vertices(n), edges(std::move(es)) {
        for (auto [u, v] : edges)
            if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    }
};

/// Rows: fundamental cycles of the BFS spanning forest (roots at the smallest
/// vertex of each component, edges scanned in input order), one per non-tree edge.
inline IntegerMatrix cycle_space_basis(const Graph& gr) {
    const std::size_t n = gr.vertices, e = gr.edges.size();
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t i = 0; i < e; ++i) {
        incident[gr.edges[i].first].push_back(i);
        if (gr.edges[i].second != gr.edges[i].first) incident[gr.edges[i].second].push_back(i);
    }
    for (auto& lst : incident) std::sort(lst.begin(), lst.end());
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent_edge(n, none), depth(n, 0);
    std::vector<bool> seen(n, false), tree(e, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::deque<std::size_t> todo{root};
        while (!todo.empty()) {
            std::size_t u = todo.front();
            todo.pop_front();
            for (auto ei : incident[u]) {
                auto [a, b] = gr.edges[ei];
                std::size_t v = a == u ? b : a;
                if (seen[v]) continue;
                seen[v] = true;
                tree[ei] = true;
                parent_edge[v] = ei;
                depth[v] = depth[u] + 1;
                todo.push_back(v);
            }
        }
    }
    auto parent = [&](std::size_t v) {
        auto [a, b] = gr.edges[parent_edge[v]];
        return a == v ? b : a;
    };
    std::vector<IntVector> rows;
    for (std::size_t ei = 0; ei < e; ++ei) {
        if (tree[ei]) continue;
        IntVector c(e, Integer(0));
        c[ei] = 1;
        auto [u, v] = gr.edges[ei];
        // Close the cycle u -> v by walking the tree from v back to u.
        std::size_t x = v, y = u;
        std::vector<std::pair<std::size_t, bool>> down;  // edges walked from the lca towards u
        while (x != y) {
            if (depth[x] >= depth[y]) {
                std::size_t pe = parent_edge[x];
                c[pe] += gr.edges[pe].first == x ? 1 : -1;  // walking x -> parent
                x = parent(x);
            } else {
                std::size_t pe = parent_edge[y];
                down.emplace_back(pe, gr.edges[pe].second == y);  // walking parent -> y
                y = parent(y);
            }
        }
        for (auto [pe, forward] : down) c[pe] += forward ? 1 : -1;
        rows.push_back(std::move(c));
    }
    return IntegerMatrix::from_rows(rows, e);
}

/// H_1(G,Z)-periodic subdivision of H_1(G,R) by the unit cubes of C_1(G,R),
/// in cycle-basis coordinates.
inline PeriodicSubdivision cographic_subdivision(const Graph& gr) {
    IntegerMatrix b = cycle_space_basis(gr);
    if (b.rows() == 0) throw InputError("cographic subdivision needs a graph with a cycle");
    std::vector<IntVector> functionals;
    for (std::size_t j = 0; j < b.cols(); ++j) functionals.push_back(b.col(j));
    PeriodicSubdivision d = hyperplane_subdivision(VectorSystem(b.rows(), functionals));
    if (!d.integral_vertices()) throw std::logic_error("cographic subdivision has a non-lattice vertex");
    return d;
}

}  // namespace polystrata
