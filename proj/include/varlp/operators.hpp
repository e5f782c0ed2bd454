#pragma once

#include <utility>
#include <vector>

#include "varlp/dyadic.hpp"
#include "varlp/grid.hpp"
#include "varlp/interval.hpp"
#include "varlp/weight.hpp"

namespace varlp {

// M^{(J)}_alpha: sup over grid-aligned subintervals I of J containing the
// point of |I|^{alpha-1} int_I |f|. The grid version evaluates at cell
// midpoints in O(n^2); the point version uses closed containment.
GridFunction maximal_bounded(const GridFunction& f, const Interval& J, double alpha);
double maximal_bounded_at(const GridFunction& f, const Interval& J, double alpha, double x);

// M^{(d),S}_alpha over the lattice; f must live on (a refinement of) the
// leaf grid.
GridFunction maximal_dyadic(const GridFunction& f, const DyadicLattice& lat, double alpha);

DyadicDecomposition level_decomposition(const GridFunction& f, const DyadicLattice& lat,
                                        double alpha, int k);

// K_t: sup over I1 in D(S)-t, I1 inside S, containing x. Requires
// |t| < |S|/16.
GridFunction maximal_shifted(const GridFunction& f, const DyadicLattice& lat, double alpha);

// Mean of K_t over equispaced shifts in the admissible window, standing in
// for the average over the shift set of the sufficiency proof.
GridFunction shift_averaged_maximal(const GridFunction& f, const DyadicLattice& lat,
                                    double alpha, int shift_count = 64);

// Window maximal on the half-line or line: sup_{h>0} h^{alpha-1} *
// int_{(x-h,x+h) cap domain} |f|. Exact over the step class: the supremum
// is attained at a window edge hitting a grid point, the domain boundary,
// or an interior critical point of a linear-in-h segment.
GridFunction maximal_window(const GridFunction& f, DomainKind domain, double alpha);
double maximal_window_at(const GridFunction& f, DomainKind domain, double alpha, double x);

// Finite-interval maximal on R_+ (alpha = 0, intervals not windows); beyond
// the support hull the one-sided scan over grid endpoints is exact.
GridFunction maximal_finite(const GridFunction& f, const Interval& eval_span, int eval_cells);
double maximal_finite_at(const GridFunction& f, double x);

struct HilbertResult {
    std::vector<double> values;
    std::vector<int> shifted_points; // indices moved off a cell boundary
};

// Principal-value Hilbert transform of a step function, exact per cell:
// a cell [a,b] of height c contributes c * ln|(x-a)/(x-b)|.
HilbertResult hilbert(const GridFunction& f, const std::vector<double>& eval_points);
GridFunction hilbert_on_grid(const GridFunction& f, const Grid& eval_grid);

enum class HardyDirection { forward, dual };

// Weighted Hardy transform H_{v,w} f(x) = v(x) int_0^x f w (forward) or
// v(x) int_x^inf f w (dual), evaluated at the midpoints of f's grid.
GridFunction hardy_transform(const GridFunction& f, const Weight& v, const Weight& w,
                             HardyDirection dir);

} // namespace varlp
