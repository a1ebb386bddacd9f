#pragma once

// Hypersimplices, generalized matroid polytopes, thin Schubert cell rank
// functions and unimodular vector systems.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polystrata/polytope.hpp"

namespace polystrata {

/// Subsets of the ground set {0..n-1} as bitmasks; element i is bit i.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxGroundSet = 20;

inline int subset_size(Subset s) { return std::popcount(s); }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }

/// d_I for every I, stored densely by bitmask.
class RankFunction {
public:
    RankFunction() = default;

    RankFunction(std::size_t n, std::vector<int> block_dims, std::vector<int> values)
        : n_(n), block_dims_(std::move(block_dims)), d_(std::move(values)) {
        if (n_ == 0 || n_ > kMaxGroundSet) throw InputError("rank function ground set must have 1..20 elements");
        if (block_dims_.size() != n_) throw InputError("block_dims length must equal n");
        if (d_.size() != (std::size_t(1) << n_)) throw InputError("rank function needs one value per subset");
        for (int b : block_dims_)
            if (b <= 0) throw InputError("block dimensions must be positive");
        if (d_[0] != 0) throw InputError("d(empty set) must be 0");
        r_ = d_[full()];
        for (Subset s = 0; s <= full(); ++s) {
            if (d_[s] < 0) throw InputError("rank values must be nonnegative");
            if (d_[s] > block_sum(s))
                throw InputError("d(" + std::to_string(s) + ") exceeds the total dimension of its blocks");
            for (std::size_t i = 0; i < n_; ++i) {
                Subset t = s | (Subset(1) << i);
                if (d_[s] > d_[t]) throw InputError("rank function is not monotone at " + std::to_string(s));
            }
        }
    }

    std::size_t n() const { return n_; }
    int r() const { return r_; }
    const std::vector<int>& block_dims() const { return block_dims_; }
    int operator()(Subset s) const { return d_.at(s); }
    const std::vector<int>& values() const { return d_; }
    Subset full() const { return static_cast<Subset>((std::size_t(1) << n_) - 1); }

    int block_sum(Subset s) const {
        int total = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (s >> i & 1U) total += block_dims_[i];
        return total;
    }

private:
    std::size_t n_ = 0;
    int r_ = 0;
    std::vector<int> block_dims_;
    std::vector<int> d_;
};

/// Delta(r, n): 0/1 vectors of length n with coordinate sum r.
inline LatticePolytope hypersimplex(int r, int n) {
    if (n <= 0 || n > static_cast<int>(kMaxGroundSet)) throw InputError("hypersimplex: n out of range");
    if (r <= 0 || r >= n) throw InputError("hypersimplex requires 0 < r < n");
    std::vector<IntVector> verts;
    for (Subset s = 0; s < (Subset(1) << n); ++s) {
        if (subset_size(s) != r) continue;
        IntVector v(n, Integer(0));
        for (int i = 0; i < n; ++i)
            if (s >> i & 1U) v[i] = 1;
        verts.push_back(std::move(v));
    }
    return LatticePolytope(verts);
}

struct GeneralizedMatroidPolytope {
    std::size_t n = 0;
    // Inequalities normal . x >= rhs.
    std::vector<RatVector> normals;
    RatVector rhs;
    RatVector equation;  // (1,...,1) . x == r
    Rational equation_rhs;
    bool empty = false;
    std::vector<RatVector> vertices;

    std::optional<LatticePolytope> as_lattice_polytope() const {
        if (empty) return std::nullopt;
        std::vector<IntVector> vs;
        for (const auto& v : vertices) {
            if (!is_integral(v)) return std::nullopt;
            vs.push_back(to_integer(v));
        }
        return LatticePolytope(vs);
    }
};

/// {0 <= x_i <= dim E_i, sum x_i = r, sum_{i in I} x_i >= d_I for all I}.
inline GeneralizedMatroidPolytope generalized_matroid_polytope(const RankFunction& rf) {
    GeneralizedMatroidPolytope out;
    const std::size_t n = rf.n();
    out.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector lo(n, Rational(0)), hi(n, Rational(0));
        lo[i] = 1;
        hi[i] = -1;
        out.normals.push_back(lo);
        out.rhs.push_back(0);
        out.normals.push_back(hi);
        out.rhs.push_back(-rf.block_dims()[i]);
    }
    for (Subset s = 1; s < rf.full(); ++s) {
        if (rf(s) == 0) continue;  // implied by x >= 0
        RatVector a(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1U) a[i] = 1;
        out.normals.push_back(std::move(a));
        out.rhs.push_back(rf(s));
    }
    out.equation.assign(n, Rational(1));
    out.equation_rhs = rf.r();
    out.vertices = enumerate_vertices(n, out.normals, out.rhs, {out.equation}, RatVector{out.equation_rhs});
    out.empty = out.vertices.empty();
    return out;
}

/// First pair (I, J), I < J by bitmask, with d(I & J) + d(I | J) < d(I) + d(J).
inline std::optional<std::pair<Subset, Subset>> check_submodular(const RankFunction& rf) {
    for (Subset i = 0; i <= rf.full(); ++i)
        for (Subset j = i + 1; j <= rf.full(); ++j) {
            if (is_subset(i, j)) continue;
            if (rf(i & j) + rf(i | j) < rf(i) + rf(j)) return std::make_pair(i, j);
        }
    return std::nullopt;
}

/// d(I) = dim(V cap sum_{i in I} E_i) for V spanned by the (independent) basis rows.
inline RankFunction rank_function_of_subspace(const RationalMatrix& basis, const std::vector<int>& block_dims) {
    const std::size_t n = block_dims.size();
    std::size_t ambient = 0;
    for (int b : block_dims) {
        if (b <= 0) throw InputError("block dimensions must be positive");
        ambient += static_cast<std::size_t>(b);
    }
    if (basis.cols() != ambient) throw InputError("basis width must equal the sum of block dimensions");
    const std::size_t k = basis.rows();
    if (rank(basis) != k) throw InputError("subspace basis rows are linearly dependent");

    std::vector<std::size_t> block_start(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) block_start[i + 1] = block_start[i] + static_cast<std::size_t>(block_dims[i]);

    std::vector<int> d(std::size_t(1) << n);
    for (Subset s = 0; s < d.size(); ++s) {
        // V cap E_I = vectors of V vanishing on the complementary coordinates.
        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < n; ++i)
            if (!(s >> i & 1U))
                for (std::size_t c = block_start[i]; c < block_start[i + 1]; ++c) outside.push_back(c);
        std::size_t rk = outside.empty() ? 0 : rank(select_cols(basis, outside));
        d[s] = static_cast<int>(k - rk);
    }
    return RankFunction(n, block_dims, std::move(d));
}

struct VectorSystem {
    std::size_t r = 0;
    std::vector<IntVector> vectors;

    VectorSystem() = default;
    VectorSystem(std::size_t dim, std::vector<IntVector> vs) : r(dim), vectors(std::move(vs)) {
        for (const auto& v : vectors)
            if (v.size() != r) throw InputError("vector system entries must have length r");
    }

    IntegerMatrix as_columns() const {
        IntegerMatrix m(r, vectors.size());
        for (std::size_t j = 0; j < vectors.size(); ++j)
            for (std::size_t i = 0; i < r; ++i) m(i, j) = vectors[j][i];
        return m;
    }
};

struct UnimodularWitness {
    std::vector<std::size_t> subset;
    Integer minor;
};

/// nullopt iff every r x r minor lies in {0, 1, -1}; otherwise the first offending r-subset.
inline std::optional<UnimodularWitness> is_unimodular_system(const VectorSystem& vs) {
    const std::size_t r = vs.r, n = vs.vectors.size();
    if (r == 0 || n < r) return std::nullopt;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    for (;;) {
        RationalMatrix m(r, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < r; ++i) m(i, j) = Rational(vs.vectors[idx[j]][i]);
        Rational det = determinant(m);
        if (abs(det) > 1) return UnimodularWitness{idx, numerator(det)};
        // next r-combination
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return std::nullopt;
}

/// Every edge parallel to some e_i - e_j. P must lie in {0 <= x <= 1, sum x = r}.
inline bool is_matroid_polytope(const LatticePolytope& p) {
    const auto& vs = p.vertices();
    Integer total = 0;
    for (const auto& x : vs.front()) total += x;
    for (const auto& v : vs) {
        Integer s = 0;
        for (const auto& x : v) {
            if (x != 0 && x != 1) throw InputError("matroid polytope test needs 0/1 vertices");
            s += x;
        }
        if (s != total) throw InputError("matroid polytope test needs a constant coordinate sum");
    }
    for (auto [a, b] : polytope_edges(p)) {
        int plus = 0, minus = 0;
        for (std::size_t i = 0; i < vs[a].size(); ++i) {
            Integer diff = vs[a][i] - vs[b][i];
            if (diff == 1) ++plus;
            else if (diff == -1) ++minus;
        }
        if (plus != 1 || minus != 1) return false;
    }
    return true;
}

}  // namespace polystrata
