#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "varlp/grid.hpp"
#include "varlp/interval.hpp"

namespace varlp {

// Variable exponent p(.) with 1 < p_- <= p(x) <= p_+ < infinity.
//
// Structured forms keep inf/sup over subintervals exact:
//   constant            p(x) = c
//   affine              p(x) = c0 + c1 x on a bounded interval
//   piecewise constant  values on [b_i, b_{i+1}), last cell closed
//   tabulated           samples on a uniform grid (cellwise constant)
// An optional tail clause declares p == p_c outside the compactum
// ([0,a] on the half-line, [-a,a] on the line).
class ExponentFunction {
public:
    struct Constant { double value; };
    struct Affine { double c0, c1; };
    struct Piecewise {
        std::vector<double> breaks;  // size m+1
        std::vector<double> values;  // size m
    };
    struct Tabulated { GridFunction samples; };
    struct Tail { double a; double p_c; };

    using Form = std::variant<Constant, Affine, Piecewise, Tabulated>;

    static ExponentFunction constant(double p);
    static ExponentFunction constant_on(double p, Domain dom);
    static ExponentFunction affine(double c0, double c1, Interval dom);
    static ExponentFunction piecewise(std::vector<double> breaks, std::vector<double> values);
    static ExponentFunction tabulated(GridFunction samples);

    // Attach a constant tail outside the compactum; the domain becomes
    // unbounded of the given kind. The base form must cover the compactum.
    ExponentFunction with_tail(double a, double p_c, DomainKind kind) const;

    double eval(double x) const;
    std::pair<double, double> inf_sup_on(const Interval& E) const;
    std::pair<double, double> bounds() const;  // over the whole domain

    // Pointwise conjugate p'(x) = p(x)/(p(x)-1). Constant and piecewise
    // forms map exactly; affine and tabulated forms are sampled onto a grid.
    ExponentFunction conjugate(int resolution = 512) const;

    const Domain& domain() const { return domain_; }
    const Form& form() const { return form_; }
    const std::optional<Tail>& tail() const { return tail_; }

    bool is_constant() const { return std::holds_alternative<Constant>(form_) && !tail_; }
    std::optional<double> constant_value() const;
    // Constant value on (cut, inf) when the exponent is constant there.
    std::optional<double> constant_beyond(double cut) const;

    // True when the form has no structural jump (piecewise junctions and the
    // tail junction carry equal values). Tabulated forms count as samples of
    // a continuous function.
    bool structurally_continuous() const;

private:
    ExponentFunction(Form f, Domain d, std::optional<Tail> t);
    void validate() const;
    double eval_base(double x) const;
    std::pair<double, double> base_inf_sup(const Interval& E) const;

    Form form_;
    Domain domain_;
    std::optional<Tail> tail_;
};

struct LogHolderReport {
    bool holds = false;
    double best_c = 0.0;                 // sup |p(x)-p(y)| * (-ln|x-y|), may be +inf
    std::pair<double, double> witness{0.0, 0.0};
};

// Scan all grid-point pairs x,y in J with 0 < |x-y| <= 1/2 for the smallest
// admissible log-Hoelder constant. Structural jumps fail regardless of the
// scanned supremum.
LogHolderReport check_log_holder(const ExponentFunction& p, const Interval& J,
                                 int pair_resolution = 512);

// True iff p is a single constant at every point outside the compactum of
// size a ([0,a] / [-a,a] depending on the domain kind). Exact for
// structured forms.
bool check_constant_outside(const ExponentFunction& p, double a);

inline double conjugate_exponent(double p) { return p / (p - 1.0); }

} // namespace varlp
