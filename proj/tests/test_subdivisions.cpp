#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "polystrata/subdivision.hpp"

using namespace polystrata;
using oracle::ivec;
using oracle::rat;

namespace {

PointConfiguration line(std::initializer_list<long> xs) {
    std::vector<IntVector> pts;
    for (long x : xs) pts.push_back(ivec({x}));
    return PointConfiguration::from_integer(pts);
}

PointConfiguration nested_triangles() {
    return PointConfiguration::from_integer(
        {ivec({0, 0}), ivec({18, 0}), ivec({0, 18}), ivec({3, 3}), ivec({9, 3}), ivec({3, 9})});
}

MarkedSubdivision twisted(const PointConfiguration& c) {
    return MarkedSubdivision(c, {{3, 4, 5}, {0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {2, 0, 3}, {2, 3, 5}});
}

std::vector<LabelSet> cells_of(const std::set<std::vector<std::size_t>>& s) { return {s.begin(), s.end()}; }

// Random configuration of 2..max_n distinct points in [0,4]^2 or [0,10].
PointConfiguration random_config(std::mt19937& rng, std::size_t dim, std::size_t max_n) {
    std::uniform_int_distribution<long> coord(0, dim == 1 ? 10 : 4);
    std::size_t n = 2 + rng() % (max_n - 1);
    std::vector<IntVector> pts;
    while (pts.size() < n) {
        IntVector p;
        for (std::size_t i = 0; i < dim; ++i) p.push_back(coord(rng));
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    return PointConfiguration::from_integer(pts);
}

HeightFunction random_heights(std::mt19937& rng, std::size_t n, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    HeightFunction h;
    for (std::size_t i = 0; i < n; ++i) h.push_back(Rational(d(rng)));
    return h;
}

long catalan(long k) {
    long c = 1;
    for (long i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace

TEST(RegularSubdivision, CollinearExamples) {
    auto c = line({0, 1, 2});
    EXPECT_EQ(regular_subdivision(c, rat({0, 0, 0})).cells, (std::vector<LabelSet>{{0, 1, 2}}));
    EXPECT_EQ(regular_subdivision(c, rat({0, -1, 0})).cells, (std::vector<LabelSet>{{0, 1}, {1, 2}}));
    // 0, 1 and 3 lift onto one line below 2, so they form one marked cell.
    EXPECT_EQ(regular_subdivision(line({0, 1, 2, 3}), rat({0, 0, 1, 0})).cells, (std::vector<LabelSet>{{0, 1, 3}}));
    EXPECT_EQ(regular_subdivision(line({0, 1, 2, 3}), rat({0, -1, 1, 0})).cells,
              (std::vector<LabelSet>{{0, 1}, {1, 3}}));
}

TEST(RegularSubdivision, LowerDimensionalConfiguration) {
    // Collinear points in the plane are handled in their affine hull.
    auto c = PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 1}), ivec({2, 2})});
    EXPECT_EQ(regular_subdivision(c, rat({0, -1, 0})).cells, (std::vector<LabelSet>{{0, 1}, {1, 2}}));
    auto single = PointConfiguration::from_integer({ivec({5, 5})});
    EXPECT_EQ(regular_subdivision(single, rat({7})).cells, (std::vector<LabelSet>{{0}}));
    EXPECT_THROW(regular_subdivision(c, rat({0, 1})), InputError);
}

TEST(RegularSubdivision, MatchesLowerFacetOracle) {
    std::mt19937 rng(2024);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t dim = 1 + trial % 2;
        auto c = random_config(rng, dim, 9);
        if (affine_hull(c.points()).dimension != dim) continue;
        auto h = random_heights(rng, c.size(), trial % 3 == 0 ? 2 : 20);
        auto expected = cells_of(oracle::brute_force_lower_facets(c.points(), h));
        EXPECT_EQ(regular_subdivision(c, h).cells, expected);
        ++compared;
    }
    EXPECT_GT(compared, 150);
}

TEST(IsRegular, RoundTripOnRandomHeights) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto c = random_config(rng, 1 + trial % 2, 9);
        auto h = random_heights(rng, c.size(), 20);
        auto sub = regular_subdivision(c, h);
        auto r = is_regular(sub);
        ASSERT_TRUE(r.regular);
        EXPECT_EQ(regular_subdivision(c, *r.certificate), sub);
    }
}

TEST(IsRegular, TrivialSubdivisionHasZeroCertificate) {
    auto c = PointConfiguration::from_integer({ivec({0, 0}), ivec({2, 0}), ivec({0, 2}), ivec({1, 1}), ivec({1, 0})});
    auto r = is_regular(MarkedSubdivision(c, {{0, 1, 2, 3, 4}}));
    ASSERT_TRUE(r.regular);
    for (const auto& x : *r.certificate) EXPECT_EQ(x, 0);
}

TEST(IsRegular, TwistedNestedTrianglesIsNotRegular) {
    auto c = nested_triangles();
    auto t = twisted(c);
    EXPECT_NO_THROW(validate_subdivision(t));
    EXPECT_FALSE(is_regular(t).regular);
}

TEST(IsRegular, RandomHeightsNeverGiveTheTwist) {
    auto c = nested_triangles();
    auto t = twisted(c);
    std::mt19937 rng(5);
    for (int i = 0; i < 500; ++i) EXPECT_FALSE(regular_subdivision(c, random_heights(rng, 6, 50)) == t);
}

TEST(IsRegular, MalformedSubdivisionsThrow) {
    auto c = line({0, 1, 2});
    EXPECT_THROW(is_regular(MarkedSubdivision(c, {{0, 1}})), InputError);          // does not cover
    EXPECT_THROW(is_regular(MarkedSubdivision(c, {{0, 2}, {1, 2}})), InputError);  // overlap
    EXPECT_THROW(is_regular(MarkedSubdivision(c, {{0, 1}, {1, 7}})), InputError);  // bad label
    EXPECT_THROW(is_regular(MarkedSubdivision(c, {{1}, {0, 2}})), InputError);     // degenerate cell
}

TEST(Gkz, CollinearVectors) {
    auto c = line({0, 1, 2});
    EXPECT_EQ(gkz_vector(MarkedSubdivision(c, {{0, 2}})), ivec({2, 0, 2}));
    EXPECT_EQ(gkz_vector(MarkedSubdivision(c, {{0, 1}, {1, 2}})), ivec({1, 2, 1}));
    EXPECT_THROW(gkz_vector(MarkedSubdivision(c, {{0, 1, 2}})), InputError);
}

TEST(Triangulations, SmallCounts) {
    EXPECT_EQ(enumerate_triangulations(line({0, 1, 2, 3})).size(), 4u);
    EXPECT_EQ(enumerate_triangulations(PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 0}), ivec({0, 1})})).size(), 1u);
    auto square = PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 0}), ivec({0, 1}), ivec({1, 1})});
    EXPECT_EQ(enumerate_triangulations(square).size(), 2u);
    auto centered = PointConfiguration::from_integer({ivec({0, 0}), ivec({2, 0}), ivec({0, 2}), ivec({2, 2}), ivec({1, 1})});
    EXPECT_EQ(enumerate_triangulations(centered).size(), 3u);
}

TEST(Triangulations, ConvexPolygonsGiveCatalanNumbers) {
    std::vector<IntVector> hexagon = {ivec({0, 0}), ivec({2, 0}), ivec({4, 1}), ivec({4, 3}), ivec({2, 4}), ivec({0, 2})};
    for (std::size_t n = 3; n <= 6; ++n) {
        std::vector<IntVector> poly(hexagon.begin(), hexagon.begin() + static_cast<std::ptrdiff_t>(n));
        auto c = PointConfiguration::from_integer(poly);
        ASSERT_EQ(convex_hull(c.points()).vertices.size(), n);
        EXPECT_EQ(static_cast<long>(enumerate_triangulations(c).size()), catalan(static_cast<long>(n) - 2));
    }
}

TEST(Triangulations, CollinearPowersOfTwo) {
    for (long n = 2; n <= 7; ++n) {
        std::vector<IntVector> pts;
        for (long x = 0; x < n; ++x) pts.push_back(ivec({x}));
        EXPECT_EQ(enumerate_triangulations(PointConfiguration::from_integer(pts)).size(), std::size_t(1) << (n - 2));
    }
}

TEST(Triangulations, ThreeDimensionalCube) {
    std::vector<IntVector> cube;
    for (long x = 0; x <= 1; ++x)
        for (long y = 0; y <= 1; ++y)
            for (long z = 0; z <= 1; ++z) cube.push_back(ivec({x, y, z}));
    auto ts = enumerate_triangulations(PointConfiguration::from_integer(cube));
    EXPECT_EQ(ts.size(), 74u);
    for (const auto& t : ts) {
        Integer total = 0;
        for (auto x : gkz_vector(t)) total += x;
        EXPECT_EQ(total, 4 * 6);
    }
}

TEST(Triangulations, GkzSumsAndVolumes) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        auto c = random_config(rng, 2, 7);
        std::size_t k = affine_hull(c.points()).dimension;
        std::vector<IntVector> pts;
        for (const auto& p : c.points()) pts.push_back(to_integer(p));
        Integer vol = normalized_volume(pts);
        for (const auto& t : enumerate_triangulations(c)) {
            Integer total = 0;
            for (auto x : gkz_vector(t)) total += x;
            EXPECT_EQ(total, Integer(k + 1) * vol);
        }
    }
}

TEST(Triangulations, RefusesLargeInput) {
    std::vector<IntVector> pts;
    for (long x = 0; x < 13; ++x) pts.push_back(ivec({x}));
    EXPECT_THROW(enumerate_triangulations(PointConfiguration::from_integer(pts)), RefusedError);
}

TEST(SecondaryPolytope, SmallExamples) {
    auto seg = secondary_polytope(line({0, 1, 2}));
    EXPECT_EQ(seg.polytope.vertices(), (std::vector<IntVector>{ivec({1, 2, 1}), ivec({2, 0, 2})}));

    auto sq = secondary_polytope(line({0, 1, 2, 3}));
    EXPECT_EQ(sq.polytope.dimension(), 2u);
    EXPECT_EQ(sq.polytope.vertices().size(), 4u);
    EXPECT_EQ(sq.polytope.hull().facets.size(), 4u);

    auto pt = secondary_polytope(PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 0}), ivec({0, 1})}));
    EXPECT_EQ(pt.polytope.dimension(), 0u);
}

TEST(SecondaryPolytope, RegularVerticesAndTwistedInterior) {
    auto c = nested_triangles();
    auto sec = secondary_polytope(c);
    EXPECT_EQ(sec.polytope.dimension(), 3u);
    bool saw_twist = false;
    for (std::size_t i = 0; i < sec.triangulations.size(); ++i) {
        const auto& t = sec.triangulations[i];
        bool vertex = std::binary_search(sec.polytope.vertices().begin(), sec.polytope.vertices().end(), sec.gkz[i]);
        EXPECT_TRUE(sec.polytope.contains(sec.gkz[i]));
        EXPECT_EQ(vertex, is_regular(t).regular);
        if (t == twisted(c)) {
            saw_twist = true;
            EXPECT_FALSE(vertex);
        }
    }
    EXPECT_TRUE(saw_twist);
}

TEST(RegularSubdivisions, FourCollinearPoints) {
    auto subs = enumerate_regular_subdivisions(line({0, 1, 2, 3}));
    std::set<std::vector<LabelSet>> got;
    for (const auto& e : subs) got.insert(e.subdivision.cells);
    std::set<std::vector<LabelSet>> expected = {
        {{0, 3}},         {{0, 1, 3}},      {{0, 2, 3}},         {{0, 1, 2, 3}},           {{0, 1}, {1, 3}},
        {{0, 2}, {2, 3}}, {{0, 1}, {1, 2, 3}}, {{0, 1, 2}, {2, 3}}, {{0, 1}, {1, 2}, {2, 3}},
    };
    EXPECT_EQ(subs.size(), 9u);
    EXPECT_EQ(got, expected);
}

TEST(RegularSubdivisions, SmallCounts) {
    EXPECT_EQ(enumerate_regular_subdivisions(line({0, 1, 2})).size(), 3u);
    EXPECT_EQ(enumerate_regular_subdivisions(PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 0}), ivec({0, 1})})).size(), 1u);
}

TEST(RegularSubdivisions, FaceBijectionOnRandomConfigurations) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        auto c = random_config(rng, 2, 6);
        auto sec = secondary_polytope(c);
        auto subs = enumerate_regular_subdivisions(c);
        EXPECT_EQ(subs.size(), polytope_faces(sec.polytope).size());
        std::set<std::vector<LabelSet>> distinct;
        for (const auto& e : subs) {
            distinct.insert(e.subdivision.cells);
            EXPECT_TRUE(is_regular(e.subdivision).regular);
        }
        EXPECT_EQ(distinct.size(), subs.size());
        // Every regular triangulation shows up as a vertex.
        for (const auto& t : sec.triangulations)
            if (is_regular(t).regular) EXPECT_TRUE(distinct.count(t.cells));
    }
}

TEST(AllSubdivisions, NestedTrianglesHaveANonRegularOne) {
    auto all = enumerate_all_subdivisions(nested_triangles());
    std::size_t irregular = 0;
    bool twist_flagged = false;
    for (const auto& e : all) {
        if (!e.regular) ++irregular;
        if (e.subdivision == twisted(nested_triangles())) twist_flagged = !e.regular;
    }
    EXPECT_GE(irregular, 1u);
    EXPECT_TRUE(twist_flagged);
    // Regular ones biject with faces of the secondary polytope.
    EXPECT_EQ(all.size() - irregular, enumerate_regular_subdivisions(nested_triangles()).size());
}

TEST(AllSubdivisions, CollinearAndSquareAreAllRegular) {
    auto line4 = enumerate_all_subdivisions(line({0, 1, 2, 3}));
    EXPECT_EQ(line4.size(), 9u);
    for (const auto& e : line4) EXPECT_TRUE(e.regular);

    auto square = enumerate_all_subdivisions(
        PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 0}), ivec({0, 1}), ivec({1, 1})}));
    EXPECT_EQ(square.size(), 3u);
    for (const auto& e : square) EXPECT_TRUE(e.regular);
}

TEST(AllSubdivisions, VolumesAddUp) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 6; ++trial) {
        auto c = random_config(rng, 2, 5);
        std::vector<IntVector> pts;
        for (const auto& p : c.points()) pts.push_back(to_integer(p));
        Integer vol = normalized_volume(pts);
        for (const auto& e : enumerate_all_subdivisions(c)) {
            Integer total = 0;
            for (const auto& cell : e.subdivision.cells) {
                std::vector<IntVector> cp;
                for (auto l : cell) cp.push_back(pts[l]);
                total += normalized_volume(cp);
            }
            EXPECT_EQ(total, vol);
        }
    }
}

TEST(StratumDimensions, Examples) {
    auto c3 = line({0, 1, 2});
    auto trivial = stratum_dimensions(MarkedSubdivision(c3, {{0, 1, 2}}));
    EXPECT_EQ(trivial.secondary_codim, 0u);
    EXPECT_EQ(trivial.gluing_h1_rank, 1u);
    EXPECT_FALSE(trivial.flag);

    auto split = stratum_dimensions(MarkedSubdivision(c3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(split.face_dimension, 0u);
    EXPECT_EQ(split.secondary_codim, 1u);
    EXPECT_EQ(split.gluing_h1_rank, 0u);
    EXPECT_FALSE(split.flag);

    auto square = PointConfiguration::from_integer({ivec({0, 0}), ivec({1, 0}), ivec({0, 1}), ivec({1, 1})});
    auto diag = stratum_dimensions(MarkedSubdivision(square, {{0, 1, 3}, {0, 2, 3}}));
    EXPECT_EQ(diag.secondary_codim, 1u);
    EXPECT_EQ(diag.gluing_h1_rank, 0u);
    EXPECT_FALSE(diag.flag);

    EXPECT_THROW(stratum_dimensions(twisted(nested_triangles())), InputError);
}

TEST(StratumDimensions, MainComponentNeverFlagsForCollinear) {
    // Every subdivision of points on a line is regular and its gluing moduli equal the face dimension.
    for (const auto& e : enumerate_regular_subdivisions(line({0, 1, 2, 3}))) {
        auto s = stratum_dimensions(e.subdivision);
        EXPECT_EQ(s.face_dimension, e.face_dimension);
        EXPECT_EQ(s.gluing_h1_rank, s.face_dimension);
        EXPECT_FALSE(s.flag);
    }
}
