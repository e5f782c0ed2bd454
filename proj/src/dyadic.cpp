#include "varlp/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace varlp {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

DyadicLattice make_enclosing_lattice(const Interval& J, int n_cells_of_J, double shift) {
    if (!J.valid()) throw std::invalid_argument("make_enclosing_lattice: invalid J");
    if (!power_of_two(n_cells_of_J))
        throw std::invalid_argument("make_enclosing_lattice: J cell count must be a power of two");
    double half = 4.0 * J.length(); // |S| = 8 |J|, concentric
    DyadicLattice lat;
    lat.root = Interval{J.mid() - half, J.mid() + half};
    lat.depth = 3;
    int leaves = 8;
    while (leaves < 8 * n_cells_of_J) {
        leaves *= 2;
        lat.depth++;
    }
    lat.shift = shift;
    if (std::abs(shift) >= lat.shift_window())
        throw std::domain_error("make_enclosing_lattice: shift outside the admissible window");
    return lat;
}

GridFunction embed_in_lattice(const GridFunction& f, const DyadicLattice& lat) {
    Grid leaf = lat.leaf_grid();
    int a = leaf.aligned_index(f.grid.span.lo);
    int b = leaf.aligned_index(f.grid.span.hi);
    if (a < 0 || b < 0 || (b - a) != f.size())
        throw std::invalid_argument("embed_in_lattice: grid not aligned with lattice leaves");
    std::vector<double> vals(static_cast<size_t>(leaf.n), 0.0);
    for (int i = 0; i < f.size(); ++i) vals[static_cast<size_t>(a + i)] = f[i];
    return GridFunction(leaf, std::move(vals));
}

} // namespace varlp
