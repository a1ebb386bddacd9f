#pragma once

// Command dispatch for the polystrata tool. run() never throws for bad input:
// every failure becomes an {"error": {...}} report with a matching exit code.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "polystrata/json_io.hpp"

namespace polystrata::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kInputError = 1, kRefused = 2, kInternalError = 3 };

struct Options {
    long window = 64;                 // largest envelope window, 1..4096
    std::size_t word_bound = 6;       // gl-equiv search depth, 0..12
    std::size_t degree_bound = 3;     // idp cone level, 2..10
    std::size_t max_points = kMaxEnumerationPoints;  // enumeration size limit, 1..12
};

struct Request {
    std::string subcommand;
    json input;
    Options options;
};

struct Outcome {
    int exit_code = kOk;
    json report;  // RunReport on success, {"error": {...}} otherwise
};

struct Fixture {
    std::string name;
    std::string subcommand;
    std::string description;
    json input;
};

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json error_report(const std::string& code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

inline const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = [] {
        const std::string nested = R"([[0,0],[18,0],[0,18],[3,3],[9,3],[3,9]])";
        const std::string a2 = R"({"g":2,"matrix":[["2","-1"],["-1","2"]]})";
        const std::string u24 =
            R"({"n":4,"r":2,"d":{"0":0,"1":0,"2":0,"3":0,"4":0,"5":0,"6":0,"7":1,"8":0,"9":0,"10":0,"11":1,"12":0,"13":1,"14":1,"15":2}})";
        const std::vector<std::array<std::string, 4>> raw = {
            {"snf-3x3", "snf", "3x3 integer matrix with invariant factors 2, 6, 12",
             R"({"matrix":[[2,4,4],[-6,6,12],[10,-4,-16]]})"},
            {"unit-square-hull", "hull", "hull of the unit square with its centre",
             R"({"points":[[0,0],[1,0],[0,1],[1,1],["1/2","1/2"]]})"},
            {"collinear-4-lift", "subdiv", "four collinear points, third point lifted",
             R"({"points":[[0],[1],[2],[3]],"heights":{"2":"1"}})"},
            {"nested-triangles", "regular-check", "nested triangles with the twisted triangulation",
             R"({"points":)" + nested + R"(,"cells":[[3,4,5],[0,1,4],[0,4,3],[1,2,5],[1,5,4],[2,0,3],[2,3,5]]})"},
            {"unit-square", "triangulations", "vertices of the unit square", R"({"points":[[0,0],[1,0],[0,1],[1,1]]})"},
            {"nested-triangles-config", "triangulations", "the six-point nested triangles configuration",
             R"({"points":)" + nested + "}"},
            {"collinear-3", "secondary", "three collinear points", R"({"points":[[0],[1],[2]]})"},
            {"collinear-4", "secondary", "four collinear points", R"({"points":[[0],[1],[2],[3]]})"},
            {"square-split", "strata", "unit square cut along a diagonal",
             R"({"points":[[0,0],[1,0],[0,1],[1,1]],"cells":[[0,1,3],[0,2,3]]})"},
            {"square-pair", "gluing", "two unit squares sharing an edge",
             R"({"g":2,"cells":[{"id":"A","vertices":[[0,0],[1,0],[0,1],[1,1]]},{"id":"B","vertices":[[1,0],[2,0],[1,1],[2,1]]}]})"},
            {"marked-segment", "gluing", "segment [0,2] marked by its endpoints only",
             R"({"g":1,"cells":[{"id":"s","vertices":[[0],[2]]}],"markings":{"s":[[0],[2]]}})"},
            {"tetrahedron-boundary", "pseudomanifold", "boundary of the standard tetrahedron",
             R"({"g":3,"cells":[{"id":"a","vertices":[[0,0,0],[1,0,0],[0,1,0]]},{"id":"b","vertices":[[0,0,0],[1,0,0],[0,0,1]]},)"
             R"({"id":"c","vertices":[[0,0,0],[0,1,0],[0,0,1]]},{"id":"d","vertices":[[1,0,0],[0,1,0],[0,0,1]]}]})"},
            {"uniform-2-4", "matroid-polytope", "rank function of a generic plane in Q^4 (uniform matroid U(2,4))", u24},
            {"uniform-2-4-submodular", "submodular", "submodularity of U(2,4)", u24},
            {"plane-in-q4", "rank-function", "rank function of a plane in Q^4",
             R"({"basis":[[1,0,1,2],[0,1,1,-1]],"block_dims":[1,1,1,1]})"},
            {"skew-pair", "unimodular", "{e1, e1+2e2}, a non-unimodular system", R"({"r":2,"vectors":[[1,0],[1,2]]})"},
            {"hypersimplex-2-4-idp", "idp", "integer decomposition of the hypersimplex (2,4)",
             R"({"vertices":[[1,1,0,0],[1,0,1,0],[1,0,0,1],[0,1,1,0],[0,1,0,1],[0,0,1,1]]})"},
            {"hypersimplex-2-4", "hypersimplex", "the hypersimplex (2,4)", R"({"r":2,"n":4})"},
            {"unit-form-1", "delaunay", "the form [1] on Z", R"({"g":1,"matrix":[["1"]]})"},
            {"identity-form-2", "delaunay", "the identity form on Z^2", R"({"g":2,"matrix":[["1","0"],["0","1"]]})"},
            {"a2-form", "delaunay", "the A2 form [[2,-1],[-1,2]]", a2},
            {"odd-residue", "semi-delaunay", "q = 0 on Z with period 2Z and r(1) = -1",
             R"({"form":{"g":1,"matrix":[["0"]]},"residues":{"period_basis":[[2]],"values":[{"residue":[0],"value":"0"},{"residue":[1],"value":"-1"}]}})"},
            {"a2-cone", "voronoi-cone", "A2 against [[4,-1],[-1,4]]",
             R"({"first":)" + a2 + R"(,"second":{"g":2,"matrix":[["4","-1"],["-1","4"]]}})"},
            {"a2-cone-dimension", "voronoi-dim", "second Voronoi cone of A2", R"({"form":)" + a2 + "}"},
            {"a2-sign-flip", "gl-equiv", "A2 against [[2,1],[1,2]]",
             R"({"first":)" + a2 + R"(,"second":{"g":2,"matrix":[["2","1"],["1","2"]]}})"},
            {"three-directions", "hyperplanes", "lines x, y, x+y in Z", R"({"r":2,"vectors":[[1,0],[0,1],[1,1]]})"},
            {"triangle-graph", "cographic", "cycle graph on three vertices", R"({"vertices":3,"edges":[[0,1],[1,2],[2,0]]})"},
            {"k4", "cographic", "complete graph on four vertices",
             R"({"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]})"},
        };
        std::vector<Fixture> out;
        for (const auto& [name, sub, desc, text] : raw) out.push_back({name, sub, desc, json::parse(text)});
        return out;
    }();
    return all;
}

inline const Fixture* find_fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

namespace detail {

using json_io::encode;

inline json encode_periodic(const PeriodicSubdivision& d) { return json_io::encode(d); }

inline void check_options(const Options& o) {
    if (o.window < 1 || o.window > 4096) throw InputError("--window must be between 1 and 4096");
    if (o.word_bound > 12) throw InputError("--word-bound must be at most 12");
    if (o.degree_bound < 2 || o.degree_bound > 10) throw InputError("--degree-bound must be between 2 and 10");
    if (o.max_points < 1 || o.max_points > kMaxEnumerationPoints)
        throw InputError("--max-points must be between 1 and " + std::to_string(kMaxEnumerationPoints));
}

inline void check_size(const PointConfiguration& c, const Options& o) {
    if (c.size() > o.max_points)
        throw RefusedError("configuration has " + std::to_string(c.size()) + " points; --max-points is " +
                           std::to_string(o.max_points));
}

inline WindowOptions window(const Options& o) {
    WindowOptions w;
    w.initial_window = std::min<long>(2, o.window);
    w.max_window = o.window;
    return w;
}

/// A periodic subdivision, or a form standing for its Delaunay decomposition.
inline PeriodicSubdivision periodic_or_form(const json& j, const Options& o) {
    if (j.is_object() && j.contains("matrix")) return delaunay(json_io::form(j), window(o));
    return json_io::periodic_subdivision(j);
}

inline json cohomology(const GluingCohomology& c) {
    return {{"h0_rank", c.h0_rank},
            {"h1_rank", c.h1_rank},
            {"h0_torsion", encode(c.h0_torsion)},
            {"h1_torsion", encode(c.h1_torsion)},
            {"chain_ranks", c.chain_ranks},
            {"homology_ranks", c.all.ranks},
            {"euler_characteristic", c.all.euler_characteristic()}};
}

using Handler = std::function<json(const json&, const Options&)>;

inline const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"snf",
         [](const json& in, const Options&) {
             SNFResult s = smith_normal_form(json_io::integer_matrix(json_io::field(in, "matrix")));
             return json{{"invariant_factors", encode(s.invariant_factors)},
                         {"rank", s.rank()},
                         {"torsion", encode(s.torsion())},
                         {"left", encode(s.left)},
                         {"right", encode(s.right)},
                         {"diagonal", encode(s.diagonal)}};
         }},
        {"hull",
         [](const json& in, const Options&) {
             auto pts = json_io::rat_rows(json_io::field(in, "points"));
             HullResult h = convex_hull(pts);
             json facets = json::array();
             for (const auto& f : h.facets)
                 facets.push_back({{"normal", encode(f.normal)}, {"offset", encode(f.offset)}, {"incident", f.incident}});
             json eqs = json::array();
             for (std::size_t i = 0; i < h.equation_normals.size(); ++i)
                 eqs.push_back({{"normal", encode(h.equation_normals[i])}, {"rhs", encode(h.equation_rhs[i])}});
             return json{{"dimension", h.dimension}, {"vertices", h.vertices}, {"facets", facets}, {"equations", eqs}};
         }},
        {"subdiv",
         [](const json& in, const Options&) {
             PointConfiguration c = json_io::configuration(in);
             HeightFunction h = json_io::heights(json_io::field(in, "heights"), c.size());
             return json{{"cells", json_io::encode_cells(regular_subdivision(c, h))}};
         }},
        {"regular-check",
         [](const json& in, const Options&) {
             RegularityResult r = is_regular(json_io::subdivision(in));
             json cert = r.certificate ? json_io::encode_heights(*r.certificate) : json(nullptr);
             return json{{"regular", r.regular}, {"certificate", cert}};
         }},
        {"triangulations",
         [](const json& in, const Options& o) {
             PointConfiguration c = json_io::configuration(in);
             check_size(c, o);
             json list = json::array();
             for (const auto& t : enumerate_triangulations(c)) {
                 RegularityResult r = is_regular(t);
                 json entry = {{"cells", json_io::encode_cells(t)}, {"regular", r.regular}};
                 if (c.is_integral()) entry["gkz"] = encode(gkz_vector(t));
                 list.push_back(entry);
             }
             return json{{"count", list.size()}, {"triangulations", list}};
         }},
        {"secondary",
         [](const json& in, const Options& o) {
             PointConfiguration c = json_io::configuration(in);
             check_size(c, o);
             SecondaryPolytope s = secondary_polytope(c);
             const auto& verts = s.polytope.vertices();
             json tris = json::array();
             for (std::size_t i = 0; i < s.triangulations.size(); ++i) {
                 bool vertex = std::binary_search(verts.begin(), verts.end(), s.gkz[i]);
                 tris.push_back({{"cells", json_io::encode_cells(s.triangulations[i])},
                                 {"gkz", encode(s.gkz[i])},
                                 {"vertex", vertex}});
             }
             json subs = json::array();
             for (const auto& e : enumerate_regular_subdivisions(c))
                 subs.push_back({{"cells", json_io::encode_cells(e.subdivision)},
                                 {"face_dimension", e.face_dimension},
                                 {"height", encode(e.height)}});
             return json{{"dimension", s.polytope.dimension()},
                         {"vertices", encode(verts)},
                         {"triangulations", tris},
                         {"regular_subdivisions", subs}};
         }},
        {"strata",
         [](const json& in, const Options& o) {
             MarkedSubdivision sub = json_io::subdivision(in);
             check_size(sub.base, o);
             StratumDimensions s = stratum_dimensions(sub);
             return json{{"secondary_codim", s.secondary_codim},
                         {"face_dimension", s.face_dimension},
                         {"gluing_h1_rank", s.gluing_h1_rank},
                         {"flag", s.flag}};
         }},
        {"gluing",
         [](const json& in, const Options&) {
             PolytopalComplex c = json_io::complex(in);
             if (in.contains("markings")) {
                 PairCohomology p = pair_cohomology(make_marked_complex(c, json_io::markings(in.at("markings"))));
                 json out = cohomology(p.cohomology);
                 out["marked"] = true;
                 out["automorphisms_finite"] = p.automorphisms_finite;
                 return out;
             }
             json out = cohomology(gluing_cohomology(c));
             out["marked"] = false;
             return out;
         }},
        {"pseudomanifold",
         [](const json& in, const Options&) {
             PseudomanifoldReport r = pseudomanifold_check(json_io::complex(in));
             json boundary = json::array();
             for (const auto& b : r.boundary) boundary.push_back(encode(b));
             return json{{"verdict", to_string(r.verdict)}, {"boundary", boundary}, {"witness", r.witness}};
         }},
        {"matroid-polytope",
         [](const json& in, const Options&) {
             if (in.contains("vertices"))
                 return json{{"is_matroid_polytope", is_matroid_polytope(json_io::polytope(in))}};
             GeneralizedMatroidPolytope p = generalized_matroid_polytope(json_io::rank_function(in));
             auto lp = p.as_lattice_polytope();
             json out = {{"empty", p.empty}, {"vertices", encode(p.vertices)}, {"integral", lp.has_value()}};
             if (lp) out["is_matroid_polytope"] = is_matroid_polytope(*lp);
             return out;
         }},
        {"submodular",
         [](const json& in, const Options&) {
             auto v = check_submodular(json_io::rank_function(in));
             json viol = v ? json{{"I", v->first}, {"J", v->second}} : json(nullptr);
             return json{{"submodular", !v.has_value()}, {"violation", viol}};
         }},
        {"rank-function",
         [](const json& in, const Options&) {
             RationalMatrix basis = json_io::rational_matrix(json_io::field(in, "basis"));
             std::vector<int> blocks;
             if (in.contains("block_dims")) {
                 for (const auto& b : in.at("block_dims")) blocks.push_back(static_cast<int>(json_io::count(b, "block dimension")));
             } else {
                 blocks.assign(basis.cols(), 1);
             }
             return json_io::encode(rank_function_of_subspace(basis, blocks));
         }},
        {"unimodular",
         [](const json& in, const Options&) {
             auto w = is_unimodular_system(json_io::vector_system(in));
             json wit = w ? json{{"subset", w->subset}, {"minor", encode(w->minor)}} : json(nullptr);
             return json{{"unimodular", !w.has_value()}, {"witness", wit}};
         }},
        {"idp",
         [](const json& in, const Options& o) {
             LatticePolytope p = json_io::polytope(in);
             auto w = is_idp_polytope(p, o.degree_bound);
             json wit = w ? json{{"level", w->level}, {"point", encode(w->point)}} : json(nullptr);
             return json{{"idp", !w.has_value()},
                         {"degree_bound", o.degree_bound},
                         {"witness", wit},
                         {"lattice_points", lattice_points(p).size()},
                         {"normalized_volume", encode(normalized_volume(p))}};
         }},
        {"hypersimplex",
         [](const json& in, const Options&) {
             long r = static_cast<long>(json_io::count(json_io::field(in, "r"), "r"));
             long n = static_cast<long>(json_io::count(json_io::field(in, "n"), "n"));
             if (n > static_cast<long>(kMaxGroundSet)) throw RefusedError("hypersimplex is limited to n <= 20");
             LatticePolytope p = hypersimplex(static_cast<int>(r), static_cast<int>(n));
             return json{{"vertices", encode(p.vertices())},
                         {"dimension", p.dimension()},
                         {"lattice_points", lattice_points(p).size()},
                         {"normalized_volume", encode(normalized_volume(p))},
                         {"is_matroid_polytope", is_matroid_polytope(p)}};
         }},
        {"delaunay",
         [](const json& in, const Options& o) { return encode_periodic(delaunay(json_io::form(in), window(o))); }},
        {"semi-delaunay",
         [](const json& in, const Options& o) {
             QuadraticForm q = json_io::form(json_io::field(in, "form"));
             ResidueFunction r = in.contains("residues") ? json_io::residue_function(in.at("residues"))
                                                         : ResidueFunction::trivial(q.g());
             return encode_periodic(semi_delaunay(q, r, window(o)));
         }},
        {"voronoi-cone",
         [](const json& in, const Options& o) {
             return json{{"same_cone", same_voronoi_cone(json_io::form(json_io::field(in, "first")),
                                                         json_io::form(json_io::field(in, "second")), window(o))}};
         }},
        {"voronoi-dim",
         [](const json& in, const Options& o) {
             QuadraticForm q = json_io::form(json_io::field(in, "form"));
             PeriodicSubdivision d = in.contains("subdivision") ? json_io::periodic_subdivision(in.at("subdivision"))
                                                                : delaunay(q, window(o));
             return json{{"dimension", voronoi_cone_dimension(d, q, window(o))}, {"cells", d.cells.size()}};
         }},
        {"gl-equiv",
         [](const json& in, const Options& o) {
             PeriodicSubdivision a = periodic_or_form(json_io::field(in, "first"), o);
             PeriodicSubdivision b = periodic_or_form(json_io::field(in, "second"), o);
             GlEquivalence e = gl_equivalent(a, b, o.word_bound);
             json wit = e.witness ? encode(*e.witness) : json(nullptr);
             return json{{"found", e.found}, {"witness", wit}, {"reason", e.reason}, {"word_bound", o.word_bound}};
         }},
        {"hyperplanes",
         [](const json& in, const Options&) {
             VectorSystem vs = json_io::vector_system(in);
             PeriodicSubdivision d = hyperplane_subdivision(vs);
             return json{{"subdivision", encode_periodic(d)},
                         {"integral_vertices", d.integral_vertices()},
                         {"unimodular", !is_unimodular_system(vs).has_value()}};
         }},
        {"cographic",
         [](const json& in, const Options&) {
             Graph gr = json_io::graph(in);
             IntegerMatrix b = cycle_space_basis(gr);
             PeriodicSubdivision d = cographic_subdivision(gr);
             std::vector<IntVector> cols;
             for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(b.col(j));
             return json{{"cycle_basis", encode(b)},
                         {"subdivision", encode_periodic(d)},
                         {"integral_vertices", d.integral_vertices()},
                         {"unimodular", !is_unimodular_system(VectorSystem(b.rows(), cols)).has_value()}};
         }},
        {"fixtures",
         [](const json&, const Options&) {
             json list = json::array();
             for (const auto& f : fixtures())
                 list.push_back({{"name", f.name}, {"subcommand", f.subcommand}, {"description", f.description}});
             return json{{"fixtures", list}};
         }},
    };
    return table;
}

}  // namespace detail

inline std::vector<std::string> subcommands() {
    std::vector<std::string> out;
    for (const auto& [name, h] : detail::handlers()) out.push_back(name);
    return out;
}

inline Outcome run(const Request& req) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        const auto& table = detail::handlers();
        auto it = table.find(req.subcommand);
        if (it == table.end()) {
            out.exit_code = kInputError;
            out.report = error_report("unknown_subcommand", "unknown subcommand \"" + req.subcommand + "\"");
            return out;
        }
        detail::check_options(req.options);
        json result = it->second(req.input, req.options);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        out.report = {{"subcommand", req.subcommand},
                      {"input_digest", fnv1a_hex(req.input.dump())},
                      {"result", result},
                      {"timing_ms", ms.count()},
                      {"version", kVersion}};
    } catch (const InputError& e) {
        out.exit_code = kInputError;
        out.report = error_report("input_error", e.what());
    } catch (const RefusedError& e) {
        out.exit_code = kRefused;
        out.report = error_report("refused", e.what());
    } catch (const json::exception& e) {
        out.exit_code = kInputError;
        out.report = error_report("input_error", e.what());
    } catch (const std::exception& e) {
        out.exit_code = kInternalError;
        out.report = error_report("internal_error", e.what());
    }
    return out;
}

/// The request a fixture stands for, with default options.
inline Request fixture_request(const Fixture& f) { return {f.subcommand, f.input, Options{}}; }

}  // namespace polystrata::cli
