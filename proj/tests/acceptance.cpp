// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Inputs come from the bundled CLI fixtures where one exists; expected values
// come from the brute-force oracles in oracles.hpp or from small direct checks
// written here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "polystrata/cli.hpp"

using namespace polystrata;
using cli::json;
using oracle::ivec;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

const json& fixture(const std::string& name) {
    const cli::Fixture* f = cli::find_fixture(name);
    if (!f) throw std::runtime_error("missing fixture " + name);
    return f->input;
}

// 1. Regular subdivisions against the lower-facet oracle.

Verdict envelope_oracle() {
    Verdict v;
    std::mt19937 rng(101);
    int compared = 0;
    while (compared < 200) {
        std::size_t dim = 1 + compared % 2;
        std::uniform_int_distribution<long> coord(0, dim == 1 ? 10 : 4);
        std::size_t n = 2 + rng() % 8;
        std::vector<IntVector> pts;
        while (pts.size() < n) {
            IntVector p;
            for (std::size_t i = 0; i < dim; ++i) p.push_back(coord(rng));
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        PointConfiguration c = PointConfiguration::from_integer(pts);
        if (affine_hull(c.points()).dimension != dim) continue;
        long bound = compared % 3 == 0 ? 2 : 20;
        std::uniform_int_distribution<long> hd(-bound, bound);
        HeightFunction h;
        for (std::size_t i = 0; i < n; ++i) h.push_back(Rational(hd(rng)) / Rational(1 + static_cast<long>(rng() % 3)));
        auto expected = oracle::brute_force_lower_facets(c.points(), h);
        auto got = regular_subdivision(c, h).cells;
        v.require(got == std::vector<LabelSet>(expected.begin(), expected.end()),
                  "mismatch on pair " + std::to_string(compared));
        ++compared;
    }
    v.detail = v.pass ? "200 pairs agree" : v.detail;
    return v;
}

// 2. Regular subdivisions of collinear points against the secondary polytope's faces.

Verdict face_bijection() {
    Verdict v;
    for (auto [name, count] : {std::pair<const char*, std::size_t>{"collinear-4", 9}, {"collinear-3", 3}}) {
        PointConfiguration c = json_io::configuration(fixture(name));
        auto entries = enumerate_regular_subdivisions(c);
        auto faces = polytope_faces(secondary_polytope(c).polytope);
        std::set<std::vector<LabelSet>> enumerated;
        std::set<std::vector<std::size_t>> face_sets;
        for (const auto& e : entries) {
            enumerated.insert(e.subdivision.cells);
            face_sets.insert(e.face_vertices);
            v.require(regular_subdivision(c, e.height) == e.subdivision, std::string(name) + ": face normal disagrees");
        }
        // Every subdivision reachable from a small height grid.
        std::set<std::vector<LabelSet>> sampled;
        std::vector<long> h(c.size(), -2);
        for (;;) {
            HeightFunction hf;
            for (long x : h) hf.push_back(Rational(x));
            sampled.insert(regular_subdivision(c, hf).cells);
            std::size_t i = 0;
            while (i < h.size() && h[i] == 2) h[i++] = -2;
            if (i == h.size()) break;
            ++h[i];
        }
        v.require(entries.size() == count, std::string(name) + ": " + std::to_string(entries.size()) + " subdivisions");
        v.require(faces.size() == count, std::string(name) + ": " + std::to_string(faces.size()) + " faces");
        v.require(enumerated.size() == count && face_sets.size() == count, std::string(name) + ": not a bijection");
        v.require(sampled == enumerated, std::string(name) + ": sampled subdivisions differ");
    }
    v.detail = v.pass ? "9 and 3 subdivisions, one per face" : v.detail;
    return v;
}

// 3. The twisted triangulation is not regular and never appears from random heights.

Verdict non_regularity() {
    Verdict v;
    MarkedSubdivision twisted = json_io::subdivision(fixture("nested-triangles"));
    v.require(!is_regular(twisted).regular, "twisted triangulation reported regular");
    std::mt19937 rng(303);
    std::uniform_int_distribution<long> hd(-1000, 1000);
    for (int i = 0; i < 10000 && v.pass; ++i) {
        HeightFunction h;
        for (std::size_t j = 0; j < twisted.base.size(); ++j) h.push_back(Rational(hd(rng)) / Rational(1 + i % 7));
        v.require(!(regular_subdivision(twisted.base, h) == twisted), "random height " + std::to_string(i) + " gave it");
    }
    v.detail = v.pass ? "NOT_REGULAR; 10000 random heights avoid it" : v.detail;
    return v;
}

// 4. Delaunay cell counts, empty paraboloids and equivariance.

// Affine function through g+1 points, by Cramer's rule over cofactor determinants.
std::optional<RatVector> interpolate(const std::vector<IntVector>& pts, const std::vector<Rational>& vals) {
    const std::size_t g = pts.front().size();
    std::vector<IntVector> base;
    for (auto p : pts) {
        p.push_back(1);
        base.push_back(p);
    }
    Integer den = oracle::cofactor_det(base);
    if (den == 0) return std::nullopt;
    Integer l = 1;
    for (const auto& x : vals) l = lcm(l, denominator(x));
    RatVector out(g + 1);
    for (std::size_t k = 0; k <= g; ++k) {
        auto m = base;
        for (std::size_t i = 0; i < m.size(); ++i) m[i][k] = numerator(vals[i] * Rational(l));
        out[k] = Rational(oracle::cofactor_det(m)) / Rational(den * l);
    }
    return out;
}

// Paraboloid through each cell lies weakly below q on a box of lattice points,
// touching exactly at the marking.
bool empty_paraboloid(const QuadraticForm& q, const PeriodicSubdivision& d, long radius) {
    for (const auto& c : d.cells) {
        std::vector<IntVector> pts;
        for (const auto& x : c.marking) pts.push_back(to_integer(x));
        std::optional<RatVector> alpha;
        if (pts.size() < d.g + 1) return false;
        oracle::for_each_subset(pts.size(), d.g + 1, [&](const std::vector<std::size_t>& s) {
            if (alpha) return;
            std::vector<IntVector> sub;
            std::vector<Rational> vals;
            for (auto i : s) {
                sub.push_back(pts[i]);
                vals.push_back(q(pts[i]));
            }
            alpha = interpolate(sub, vals);
        });
        if (!alpha) return false;
        for (const auto& m : oracle::box_points(pts[0] - IntVector(d.g, Integer(radius)), pts[0] + IntVector(d.g, Integer(radius)))) {
            Rational gap = q(m) - alpha->back();
            for (std::size_t i = 0; i < d.g; ++i) gap -= (*alpha)[i] * Rational(m[i]);
            if (gap < 0) return false;
            if ((gap == 0) != std::binary_search(c.marking.begin(), c.marking.end(), to_rational(m))) return false;
        }
    }
    return true;
}

IntegerMatrix random_unimodular(std::mt19937& rng, std::size_t g, int steps) {
    IntegerMatrix u = IntegerMatrix::identity(g);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = rng() % g, j = rng() % g;
        if (i == j) {
            for (std::size_t c = 0; c < g; ++c) u(i, c) = -u(i, c);
        } else {
            long f = rng() % 2 ? 1 : -1;
            for (std::size_t c = 0; c < g; ++c) u(i, c) += f * u(j, c);
        }
    }
    return u;
}

IntegerMatrix integer_inverse(const IntegerMatrix& u) {
    RationalMatrix inv = *inverse(to_rational(u));
    IntegerMatrix out(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = numerator(inv(i, j));
    return out;
}

Verdict delaunay_certification() {
    Verdict v;
    for (auto [name, count] : {std::pair<const char*, std::size_t>{"unit-form-1", 1}, {"identity-form-2", 1}, {"a2-form", 2}}) {
        QuadraticForm q = json_io::form(fixture(name));
        auto d = delaunay(q);
        v.require(d.cells.size() == count, std::string(name) + ": " + std::to_string(d.cells.size()) + " cells");
        v.require(empty_paraboloid(q, d, q.g() == 1 ? 30 : 10), std::string(name) + ": paraboloid not empty");
    }
    QuadraticForm a2 = json_io::form(fixture("a2-form"));
    auto d = delaunay(a2);
    std::mt19937 rng(404);
    for (int t = 0; t < 20; ++t) {
        IntegerMatrix u = random_unimodular(rng, 2, 6);
        v.require(delaunay(a2.pulled_back(u)) == apply(integer_inverse(u), d), "equivariance fails for U #" + std::to_string(t));
    }
    v.detail = v.pass ? "1, 1, 2 cells; paraboloids empty; 20 U equivariant" : v.detail;
    return v;
}

// 5. Voronoi cone dimensions.

Verdict voronoi_dimensions() {
    Verdict v;
    QuadraticForm a2 = json_io::form(fixture("a2-cone-dimension").at("form"));
    QuadraticForm i2 = json_io::form(fixture("identity-form-2"));
    std::size_t da = voronoi_cone_dimension(delaunay(a2), a2), di = voronoi_cone_dimension(delaunay(i2), i2);
    v.require(da == 3, "A2 cone has dimension " + std::to_string(da));
    v.require(di == 2, "I2 cone has dimension " + std::to_string(di));
    v.detail = v.pass ? "A2 -> 3, I2 -> 2" : v.detail;
    return v;
}

// 6. Cographic subdivisions of random connected graphs.

Verdict cographic_unimodularity() {
    Verdict v;
    std::mt19937 rng(606);
    int built = 0;
    while (built < 50 && v.pass) {
        std::size_t n = 2 + rng() % 6;
        std::vector<std::pair<std::size_t, std::size_t>> es;
        for (std::size_t u = 1; u < n; ++u) es.emplace_back(rng() % u, u);
        std::size_t extra = 1 + rng() % std::min<std::size_t>(6, 13 - n);
        for (std::size_t i = 0; i < extra; ++i) es.emplace_back(rng() % n, rng() % n);
        std::shuffle(es.begin(), es.end(), rng);
        Graph gr(n, es);
        IntegerMatrix b = cycle_space_basis(gr);
        const std::size_t r = b.rows();
        std::string tag = "graph " + std::to_string(built);

        // Exhaustive r x r minors of the edge vectors (columns of the basis).
        std::vector<IntVector> cols;
        for (std::size_t e = 0; e < es.size(); ++e) cols.push_back(b.col(e));
        bool minors_ok = true;
        oracle::for_each_subset(es.size(), r, [&](const std::vector<std::size_t>& s) {
            std::vector<IntVector> m(r, IntVector(r));
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < r; ++i) m[i][j] = cols[s[j]][i];
            if (abs(oracle::fraction_free_det(m)) > 1) minors_ok = false;
        });
        v.require(minors_ok, tag + ": a cycle-basis minor exceeds 1");
        v.require(!is_unimodular_system(VectorSystem(r, cols)), tag + ": is_unimodular_system rejects the cycle basis");

        auto sub = cographic_subdivision(gr);
        v.require(sub.integral_vertices(), tag + ": fractional vertex");
        for (const auto& c : sub.cells)
            for (const auto& x : c.vertices) {
                // As an edge vector: integral and conserving flow at every vertex.
                std::vector<Rational> flow(es.size(), Rational(0));
                for (std::size_t e = 0; e < es.size(); ++e)
                    for (std::size_t i = 0; i < r; ++i) flow[e] += x[i] * Rational(b(i, e));
                for (const auto& f : flow) v.require(is_integral(f), tag + ": vertex not in H1(G,Z)");
                for (std::size_t u = 0; u < n; ++u) {
                    Rational net = 0;
                    for (std::size_t e = 0; e < es.size(); ++e) {
                        if (es[e].first == u) net -= flow[e];
                        if (es[e].second == u) net += flow[e];
                    }
                    v.require(net == 0, tag + ": vertex is not a cycle");
                }
            }
        ++built;
    }
    v.detail = v.pass ? "50 graphs: integral cycle vertices, unimodular cycle bases" : v.detail;
    return v;
}

// 7. Gluing cohomology of single cells and of small random complexes.

PolytopalComplex complex_of(std::size_t g, const std::vector<std::vector<IntVector>>& cells) {
    std::vector<CellInput> in;
    for (std::size_t i = 0; i < cells.size(); ++i) in.push_back({"c" + std::to_string(i), cells[i]});
    auto val = validate_complex(g, in);
    if (!val.ok()) throw std::runtime_error("generated complex rejected: " + val.violation->reason);
    return *val.complex;
}

Verdict gluing_sanity() {
    Verdict v;
    std::mt19937 rng(707);
    int singles = 0;
    while (singles < 20) {
        std::size_t g = 1 + singles % 3;
        std::uniform_int_distribution<long> coord(0, 3);
        std::vector<IntVector> pts;
        for (std::size_t i = 0; i < 2 + rng() % 6; ++i) {
            IntVector p;
            for (std::size_t k = 0; k < g; ++k) p.push_back(coord(rng));
            pts.push_back(p);
        }
        LatticePolytope p(pts);
        if (p.vertices().size() < 2) continue;
        auto cx = complex_of(g, {p.vertices()});
        auto lc = cech_lattice_complex(cx);
        auto gc = gluing_cohomology(cx);
        std::string tag = "single cell " + std::to_string(singles);
        v.require(lc.chains.squares_to_zero(), tag + ": boundary squared is nonzero");
        v.require(gc.h1_rank == 0, tag + ": h1 = " + std::to_string(gc.h1_rank));
        v.require(gc.h0_rank == p.dimension() + 1, tag + ": h0 = " + std::to_string(gc.h0_rank));
        ++singles;
    }
    int multi = 0;
    while (multi < 50) {
        // Cells of a random regular subdivision from the lower-facet oracle.
        std::uniform_int_distribution<long> coord(0, 4), height(-6, 6);
        std::vector<IntVector> pts;
        std::size_t n = 5 + rng() % 4;
        while (pts.size() < n) {
            IntVector p = ivec({coord(rng), coord(rng)});
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        std::vector<RatVector> base;
        RatVector h;
        for (const auto& p : pts) {
            base.push_back(to_rational(p));
            h.push_back(Rational(height(rng)));
        }
        if (affine_hull(base).dimension < 2) continue;
        std::vector<std::vector<IntVector>> cells;
        for (const auto& f : oracle::brute_force_lower_facets(base, h)) {
            std::vector<IntVector> cell;
            for (auto i : f) cell.push_back(pts[i]);
            cells.push_back(LatticePolytope(cell).vertices());
        }
        if (cells.size() < 2) continue;
        std::shuffle(cells.begin(), cells.end(), rng);
        cells.resize(std::min<std::size_t>(cells.size(), 2 + rng() % 3));
        auto lc = cech_lattice_complex(complex_of(2, cells));
        std::string tag = "complex " + std::to_string(multi);
        v.require(lc.chains.squares_to_zero(), tag + ": boundary squared is nonzero");
        v.require(homology(lc.chains).euler_characteristic() == lc.chains.euler_characteristic(),
                  tag + ": Euler characteristics differ");
        ++multi;
    }
    v.detail = v.pass ? "20 single cells, 50 complexes" : v.detail;
    return v;
}

// 8. Hypersimplex, subspace rank functions, non-unimodular pair.

Verdict matroid_battery() {
    Verdict v;
    const json& hs = fixture("hypersimplex-2-4");
    LatticePolytope p = hypersimplex(static_cast<int>(hs.at("r").get<long>()), static_cast<int>(hs.at("n").get<long>()));
    v.require(p.vertices().size() == 6, "hypersimplex vertex count");
    v.require(lattice_points(p).size() == 6, "hypersimplex lattice point count");
    v.require(normalized_volume(p) == 4, "hypersimplex volume " + to_string(normalized_volume(p)));
    v.require(!is_idp_polytope(p, 3), "hypersimplex fails IDP at bound 3");

    std::mt19937 rng(808);
    std::uniform_int_distribution<int> e(-2, 2);
    int checked = 0;
    for (int trial = 0; checked < 100; ++trial) {
        std::size_t n = 2 + trial % 5;
        std::vector<int> dims(n, 1);
        if (trial % 3 == 0) dims[0] = 2;
        std::size_t ambient = 0;
        for (int bd : dims) ambient += bd;
        std::size_t k = 1 + static_cast<std::size_t>(trial) % ambient;
        std::vector<RatVector> rows(k, RatVector(ambient));
        for (auto& row : rows)
            for (auto& x : row) x = e(rng);
        if (oracle::rational_rank(rows) != k) continue;
        auto rf = rank_function_of_subspace(RationalMatrix::from_rows(rows), dims);
        // Direct check of d(I & J) + d(I | J) >= d(I) + d(J) over all pairs.
        bool sub_ok = true;
        for (Subset a = 0; a <= rf.full(); ++a)
            for (Subset b = 0; b <= rf.full(); ++b)
                if (rf(a & b) + rf(a | b) < rf(a) + rf(b)) sub_ok = false;
        v.require(sub_ok && !check_submodular(rf), "subspace " + std::to_string(checked) + " not submodular");
        ++checked;
    }

    auto w = is_unimodular_system(json_io::vector_system(fixture("skew-pair")));
    v.require(w && abs(w->minor) == 2, "{e1, e1+2e2} not rejected with minor 2");
    v.detail = v.pass ? "hypersimplex 6/6/4 and IDP; 100 submodular; minor 2 witness" : v.detail;
    return v;
}

// 9. Every fixture through the CLI dispatcher twice.

Verdict determinism() {
    Verdict v;
    for (const auto& f : cli::fixtures()) {
        auto a = cli::run(cli::fixture_request(f));
        auto b = cli::run(cli::fixture_request(f));
        v.require(a.exit_code == cli::kOk, f.name + ": exit code " + std::to_string(a.exit_code));
        v.require(a.report["result"].dump() == b.report["result"].dump(), f.name + ": payloads differ");
        v.require(a.report["input_digest"] == b.report["input_digest"], f.name + ": digests differ");
    }
    v.detail = v.pass ? std::to_string(cli::fixtures().size()) + " fixtures byte-identical" : v.detail;
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double budget_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "envelope matches lower-facet oracle", 60, envelope_oracle},
        {2, "secondary polytope face bijection", 1, face_bijection},
        {3, "non-regularity detection", 30, non_regularity},
        {4, "Delaunay certification", 60, delaunay_certification},
        {5, "Voronoi cone dimensions", 5, voronoi_dimensions},
        {6, "cographic unimodularity", 120, cographic_unimodularity},
        {7, "gluing cohomology sanity", 30, gluing_sanity},
        {8, "matroid battery", 60, matroid_battery},
        {9, "determinism", 30, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (v.pass && secs > c.budget_s) {
            v.pass = false;
            v.detail += "; over the time budget";
        }
        if (!v.pass) ++failed;
        std::printf("criterion %d %-38s %s  %.2fs/%gs  %s\n", c.number, c.name, v.pass ? "PASS" : "FAIL", secs, c.budget_s,
                    v.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
