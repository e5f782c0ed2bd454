#pragma once

#include <optional>

#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"
#include "varlp/weight.hpp"

namespace varlp {

inline constexpr double kDefaultTol = 1e-9;

// S_p(f) = sum over cells of |f|^{p(mid)} * mu(cell); mu defaults to Lebesgue.
double modular(const GridFunction& f, const ExponentFunction& p, const Interval& J,
               const Weight* mu = nullptr);

// Luxemburg norm: inf{ lambda > 0 : S_p(f/lambda) <= 1 }, bracketing +
// bisection on the decreasing map lambda -> S_p(f/lambda). Relative
// tolerance `tol`; returns 0 for f == 0 and +inf when f carries the
// infinite signal on a cell of positive measure.
double luxemburg_norm(const GridFunction& f, const ExponentFunction& p, const Interval& J,
                      const Weight* mu = nullptr, double tol = kDefaultTol);

// || w f ||_{L^{p(.)}(J)} with w evaluated at cell midpoints. Returns the
// +inf signal when w is infinite on a cell where f != 0.
double weighted_norm(const GridFunction& f, const Weight& w, const ExponentFunction& p,
                     const Interval& J, double tol = kDefaultTol);
double weighted_norm(const GridFunction& f, const GridFunction& w, const ExponentFunction& p,
                     const Interval& J, double tol = kDefaultTol);

// Exact cellwise integral of f*g over J (grids must agree).
double pairing(const GridFunction& f, const GridFunction& g, const Interval& J);

struct HolderCheck {
    double lhs = 0.0;    // integral |f g|
    double rhs = 0.0;    // 2 ||f||_p ||g||_p'
    double ratio = 0.0;
};

HolderCheck holder_check(const GridFunction& f, const GridFunction& g,
                         const ExponentFunction& p, const Interval& J);

// Luxemburg norm of a weight over (lo, hi], hi may be +inf. The part beyond
// `grid_to` (and the whole interval when the exponent is constant on it and
// the weight is piecewise-power) is handled by exact power integrals; the
// rest is a midpoint-sampled grid modular at `resolution` cells.
double weight_lux_norm(const Weight& u, const ExponentFunction& p, double lo, double hi,
                       int resolution = 512, double tol = kDefaultTol);

GridFunction pointwise_product(const GridFunction& f, const Weight& w);
GridFunction abs_value(const GridFunction& f);

} // namespace varlp
