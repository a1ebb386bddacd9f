#pragma once

// JSON encodings. Numbers that carry mathematical values (coordinates, matrix
// entries, heights, volumes, minors) are exact "p/q" strings; counts, ranks,
// dimensions and labels are plain JSON integers. Inputs accept either form for
// values.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "polystrata/complex.hpp"
#include "polystrata/matroid.hpp"
#include "polystrata/periodic.hpp"
#include "polystrata/subdivision.hpp"

namespace polystrata::json_io {

using json = nlohmann::json;

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline json encode(const Rational& q) { return to_string(q); }
inline json encode(const Integer& z) { return to_string(z); }

template <class T>
json encode(const std::vector<T>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(encode(x));
    return out;
}

template <class T>
json encode(const Matrix<T>& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(encode(m.row(i)));
    return out;
}

inline Rational rational(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw InputError("expected an exact number (integer or \"p/q\" string), got " + j.dump());
}

inline Integer integer(const json& j) {
    Rational q = rational(j);
    if (!is_integral(q)) throw InputError("expected an integer, got " + j.dump());
    return numerator(q);
}

inline std::size_t count(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw InputError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

inline RatVector rat_vector(const json& j) {
    if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
    RatVector out;
    for (const auto& x : j) out.push_back(rational(x));
    return out;
}

inline IntVector int_vector(const json& j) {
    if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
    IntVector out;
    for (const auto& x : j) out.push_back(integer(x));
    return out;
}

inline std::vector<RatVector> rat_rows(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("expected a nonempty array of rows");
    std::vector<RatVector> out;
    for (const auto& r : j) out.push_back(rat_vector(r));
    for (const auto& r : out)
        if (r.size() != out.front().size()) throw InputError("rows have different lengths");
    return out;
}

inline std::vector<IntVector> int_rows(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("expected a nonempty array of rows");
    std::vector<IntVector> out;
    for (const auto& r : j) out.push_back(int_vector(r));
    for (const auto& r : out)
        if (r.size() != out.front().size()) throw InputError("rows have different lengths");
    return out;
}

inline IntegerMatrix integer_matrix(const json& j) { return IntegerMatrix::from_rows(int_rows(j)); }
inline RationalMatrix rational_matrix(const json& j) { return RationalMatrix::from_rows(rat_rows(j)); }

inline std::vector<std::size_t> labels(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of labels");
    std::vector<std::size_t> out;
    for (const auto& x : j) out.push_back(count(x, "label"));
    return out;
}

// Point configurations and subdivisions.

inline PointConfiguration configuration(const json& j) { return PointConfiguration(rat_rows(field(j, "points"))); }

/// {"label": "p/q"}; labels missing from the map get height 0.
inline HeightFunction heights(const json& j, std::size_t n) {
    if (!j.is_object()) throw InputError("heights must be an object {\"label\": \"p/q\"}");
    HeightFunction h(n, Rational(0));
    for (const auto& [key, val] : j.items()) {
        std::size_t label = 0;
        try {
            label = std::stoul(key);
        } catch (const std::exception&) {
            throw InputError("height label \"" + key + "\" is not a number");
        }
        if (label >= n) throw InputError("height label " + key + " is out of range");
        h[label] = rational(val);
    }
    return h;
}

inline json encode_heights(const HeightFunction& h) {
    json out = json::object();
    for (std::size_t i = 0; i < h.size(); ++i) out[std::to_string(i)] = encode(h[i]);
    return out;
}

inline MarkedSubdivision subdivision(const json& j) {
    PointConfiguration config = configuration(j);
    std::vector<LabelSet> cells;
    const json& cs = field(j, "cells");
    if (!cs.is_array()) throw InputError("cells must be an array of label arrays");
    for (const auto& c : cs) cells.push_back(labels(c));
    MarkedSubdivision sub(config, cells);
    validate_subdivision(sub);
    return sub;
}

inline json encode_cells(const MarkedSubdivision& sub) {
    json cells = json::array();
    for (const auto& c : sub.cells) cells.push_back(c);
    return cells;
}

// Polytopal complexes.

inline PolytopalComplex complex(const json& j) {
    std::size_t g = count(field(j, "g"), "g");
    std::vector<CellInput> cells;
    const json& cs = field(j, "cells");
    if (!cs.is_array()) throw InputError("cells must be an array");
    for (const auto& c : cs) {
        const json& id = field(c, "id");
        cells.push_back({id.is_string() ? id.get<std::string>() : id.dump(), int_rows(field(c, "vertices"))});
    }
    ComplexValidation v = validate_complex(g, cells);
    if (!v.ok())
        throw InputError("cells " + v.violation->first + " and " + v.violation->second + ": " + v.violation->reason);
    return *v.complex;
}

inline std::map<std::string, std::vector<IntVector>> markings(const json& j) {
    if (!j.is_object()) throw InputError("markings must be an object {\"cell_id\": [[point]...]}");
    std::map<std::string, std::vector<IntVector>> out;
    for (const auto& [id, pts] : j.items()) out[id] = int_rows(pts);
    return out;
}

// Matroids.

inline RankFunction rank_function(const json& j) {
    std::size_t n = count(field(j, "n"), "n");
    if (n == 0 || n > kMaxGroundSet) throw InputError("n must be between 1 and 20");
    std::vector<int> blocks(n, 1);
    if (j.contains("block_dims")) {
        const json& b = j.at("block_dims");
        if (!b.is_array() || b.size() != n) throw InputError("block_dims must have n entries");
        for (std::size_t i = 0; i < n; ++i) blocks[i] = static_cast<int>(count(b[i], "block dimension"));
    }
    const json& d = field(j, "d");
    if (!d.is_object()) throw InputError("d must be an object {\"bitmask\": value}");
    std::vector<int> values(std::size_t(1) << n, -1);
    for (const auto& [key, val] : d.items()) {
        std::size_t mask = 0;
        try {
            mask = std::stoul(key);
        } catch (const std::exception&) {
            throw InputError("subset key \"" + key + "\" is not a decimal bitmask");
        }
        if (mask >= values.size()) throw InputError("subset key " + key + " is out of range");
        values[mask] = static_cast<int>(count(val, "rank value"));
    }
    for (std::size_t s = 0; s < values.size(); ++s)
        if (values[s] < 0) throw InputError("d is missing subset " + std::to_string(s));
    RankFunction rf(n, blocks, values);
    if (j.contains("r") && static_cast<int>(count(j.at("r"), "r")) != rf.r())
        throw InputError("r does not match d of the full set");
    return rf;
}

inline json encode(const RankFunction& rf) {
    json d = json::object();
    for (std::size_t s = 0; s < rf.values().size(); ++s) d[std::to_string(s)] = rf.values()[s];
    return {{"n", rf.n()}, {"r", rf.r()}, {"block_dims", rf.block_dims()}, {"d", d}};
}

inline VectorSystem vector_system(const json& j) {
    std::size_t r = count(field(j, "r"), "r");
    std::vector<IntVector> vs;
    for (const auto& v : field(j, "vectors")) vs.push_back(int_vector(v));
    return VectorSystem(r, vs);
}

inline LatticePolytope polytope(const json& j) { return LatticePolytope(int_rows(field(j, "vertices"))); }

// Periodic objects.

inline QuadraticForm form(const json& j) {
    RationalMatrix m = rational_matrix(field(j, "matrix"));
    if (j.contains("g") && count(j.at("g"), "g") != m.rows()) throw InputError("g does not match the matrix size");
    return QuadraticForm(m);
}

inline json encode(const QuadraticForm& q) { return {{"g", q.g()}, {"matrix", encode(q.matrix())}}; }

/// {"period_basis": [[...]], "values": [{"residue": [...], "value": "p/q"}]}
inline ResidueFunction residue_function(const json& j) {
    IntegerMatrix basis = integer_matrix(field(j, "period_basis"));
    std::map<IntVector, Rational> vals;
    if (j.contains("values")) {
        for (const auto& e : j.at("values")) {
            IntVector res = int_vector(field(e, "residue"));
            if (vals.count(res)) throw InputError("residue listed twice");
            vals[res] = rational(field(e, "value"));
        }
        return ResidueFunction(basis, vals);
    }
    return ResidueFunction::zero(basis);
}

inline Graph graph(const json& j) {
    std::size_t n = count(field(j, "vertices"), "vertices");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw InputError("edges must be pairs [u, v]");
        edges.emplace_back(count(e[0], "edge endpoint"), count(e[1], "edge endpoint"));
    }
    return Graph(n, edges);
}

inline json encode(const PeriodicSubdivision& d) {
    json cells = json::array();
    for (const auto& c : d.cells) cells.push_back({{"vertices", encode(c.vertices)}, {"marking", encode(c.marking)}});
    return {{"g", d.g}, {"period_basis", encode(d.period_basis)}, {"cells", cells}};
}

inline PeriodicSubdivision periodic_subdivision(const json& j) {
    PeriodicSubdivision d;
    d.g = count(field(j, "g"), "g");
    d.period_basis = detail::period_hnf(integer_matrix(field(j, "period_basis")));
    if (d.period_basis.rows() != d.g) throw InputError("period basis does not match g");
    std::vector<PeriodicCell> cells;
    for (const auto& c : field(j, "cells")) {
        auto vs = rat_rows(field(c, "vertices"));
        auto ms = rat_rows(field(c, "marking"));
        for (const auto& v : vs)
            if (v.size() != d.g) throw InputError("cell vertex has the wrong dimension");
        cells.push_back(detail::canonical_cell(vs, ms, d.period_basis));
    }
    return detail::finish(d.g, d.period_basis, std::move(cells));
}

}  // namespace polystrata::json_io
