#pragma once

#include <vector>

#include "varlp/grid.hpp"
#include "varlp/interval.hpp"

namespace varlp {

// Binary subdivision lattice D(S) of a root interval S, optionally shifted:
// D(S) - t translates every member by -t; membership for the shifted family
// additionally requires the translated interval to stay inside S.
struct DyadicLattice {
    Interval root{0.0, 1.0};
    int depth = 0;      // leaves = 2^depth
    double shift = 0.0; // t

    int leaves() const { return 1 << depth; }
    double length_at(int d) const { return root.length() / (1 << d); }

    // Unshifted node (d, j), j in [0, 2^d).
    Interval node(int d, int j) const {
        double len = length_at(d);
        return Interval{root.lo + j * len, root.lo + (j + 1) * len};
    }
    // Member of D(S) - t.
    Interval shifted_node(int d, int j) const {
        Interval I = node(d, j);
        return Interval{I.lo - shift, I.hi - shift};
    }

    Grid leaf_grid() const { return Grid(root, leaves()); }

    // Maximum admissible |shift|: the proof's window (-|S|/16, |S|/16).
    double shift_window() const { return root.length() / 16.0; }
};

// Root lattice enclosing J: |S| = 8 |J|, concentric, leaves aligned with a
// 2^k refinement of J's n-cell grid (n must be a power of two).
DyadicLattice make_enclosing_lattice(const Interval& J, int n_cells_of_J, double shift = 0.0);

// Embed f (supported on its own span) as f * chi_span into the lattice leaf
// grid; spans must be leaf aligned.
GridFunction embed_in_lattice(const GridFunction& f, const DyadicLattice& lat);

// Level-k family from the proof of the dyadic estimate: the maximal lattice
// intervals with |I|^{alpha-1} int_I |f| > 2^k and their disjoint shards
// E_j = I_j cap { 2^k < M^{(d)}f <= 2^{k+1} } (as leaf-cell index lists).
struct DyadicDecomposition {
    int level = 0;
    std::vector<Interval> maximal_intervals;
    std::vector<std::vector<int>> shards;
};

} // namespace varlp
