// Small walk through the library: a regular subdivision, the secondary
// polytope of three collinear points, the Delaunay cells of the A2 form, and
// the lattice of cycles of K4.

#include <iostream>

#include "polystrata/polystrata.hpp"

using namespace polystrata;

namespace {

void print_cells(const std::vector<LabelSet>& cells) {
    for (const auto& c : cells) {
        std::cout << "  {";
        for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? "," : "") << c[i];
        std::cout << "}\n";
    }
}

std::ostream& operator<<(std::ostream& os, const RatVector& v) {
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
    return os << ")";
}

}  // namespace

int main() {
    auto square = PointConfiguration::from_integer({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    std::cout << "unit square lifted by (0,0,0,1):\n";
    print_cells(regular_subdivision(square, {0, 0, 0, 1}).cells);

    auto line = PointConfiguration::from_integer({{0}, {1}, {2}});
    std::cout << "\nregular subdivisions of {0,1,2}:\n";
    for (const auto& e : enumerate_regular_subdivisions(line)) {
        std::cout << "face of dimension " << e.face_dimension << ":\n";
        print_cells(e.subdivision.cells);
    }

    QuadraticForm a2(RationalMatrix::from_rows({{2, -1}, {-1, 2}}));
    auto d = delaunay(a2);
    std::cout << "\nDelaunay cells of [[2,-1],[-1,2]] up to translation:\n";
    for (const auto& c : d.cells) {
        std::cout << " ";
        for (const auto& v : c.vertices) std::cout << " " << v;
        std::cout << "\n";
    }
    std::cout << "Voronoi cone dimension: " << voronoi_cone_dimension(d, a2) << "\n";

    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    IntegerMatrix cycles = cycle_space_basis(k4);
    std::cout << "\ncycle basis of K4 (rows over the edges):\n";
    for (std::size_t i = 0; i < cycles.rows(); ++i) std::cout << "  " << to_rational(cycles.row(i)) << "\n";
    auto cube = cographic_subdivision(k4);
    std::cout << cube.cells.size() << " cographic cells per period, integral vertices: "
              << (cube.integral_vertices() ? "yes" : "no") << "\n";
}
