#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"
#include "varlp/interval.hpp"

namespace varlp {

enum class Monotonicity { none, increasing, decreasing };

// Nonnegative weight with a structured form. Power pieces c*x^beta keep
// integrals exact, including over cells touching the singularity at 0;
// tabulated weights are step functions (zero outside their span).
// Power forms are functions of |x| (reflection-symmetric), so the same
// weight works on the half-line and on the line; monotonicity metadata
// refers to the positive axis.
class Weight {
public:
    struct PowerPiece { double scale; double exponent; };

    static Weight power(double scale, double exponent,
                        Monotonicity mono = Monotonicity::none);
    // pieces[i] = c_i * x^{beta_i} on [breaks[i], breaks[i+1]); the last
    // breakpoint may be +inf.
    static Weight piecewise_power(std::vector<double> breaks,
                                  std::vector<PowerPiece> pieces,
                                  Monotonicity mono = Monotonicity::none);
    static Weight tabulated(GridFunction values,
                            Monotonicity mono = Monotonicity::none);
    static Weight constant(double c) { return power(c, 0.0, Monotonicity::increasing); }

    double eval(double x) const;

    // Exact integral of w over [x1, x2]; +inf when a singular piece makes it
    // diverge. Exact integral of w^s likewise.
    double integral(double x1, double x2) const { return integral_pow(1.0, x1, x2); }
    double integral_pow(double s, double x1, double x2) const;

    Weight reciprocal() const;
    Weight times_power(double k) const;  // x -> w(x) * x^k
    Weight pow_const(double s) const;    // x -> w(x)^s, exact for power pieces
    std::optional<PowerPiece> power_beyond(double x) const; // pure power on (x, inf)?

    Monotonicity monotonicity() const { return mono_; }
    bool is_tabulated() const { return std::holds_alternative<TabulatedForm>(form_); }

    // Extremum of w over [x/4, 4x] intersected with the weight's domain.
    // Exact for power pieces (monotone per piece) and tabulated cells.
    double window_inf(double x) const { return window_extremum(x, false); }
    double window_sup(double x) const { return window_extremum(x, true); }

private:
    struct PiecewisePowerForm {
        std::vector<double> breaks;
        std::vector<PowerPiece> pieces;
    };
    struct TabulatedForm { GridFunction g; };
    using Form = std::variant<PiecewisePowerForm, TabulatedForm>;

    Weight(Form f, Monotonicity m) : form_(std::move(f)), mono_(m) { validate(); }
    void validate() const;
    double window_extremum(double x, bool sup) const;

    Form form_;
    Monotonicity mono_ = Monotonicity::none;
};

// u(E) = integral of u over E (exact).
double measure_of(const Weight& u, const Interval& E);
double measure_of(const Weight& u, const std::vector<Interval>& E);

struct DoublingScan {
    std::vector<double> xs;
    std::vector<double> rs;
    static DoublingScan make_default(const Interval& J, int nx = 256, int nr = 256);
};

struct DoublingReport {
    bool holds = false;
    double best_b = 0.0;                  // may be +inf
    std::pair<double, double> witness{0.0, 0.0};  // (x, r)
};

// Scan sup over (x, r) of u(I(x-2r,x+2r) cap J) / u(I(x-r,x+r) cap J).
// 0/0 windows are skipped; positive/0 is an immediate failure.
DoublingReport check_doubling(const Weight& u, const Interval& J, const DoublingScan& scan);

// sigma(x) = w(x)^{-p'(x)} sampled cellwise at midpoints; cells where w = 0
// carry the +inf signal.
GridFunction sigma(const Weight& w, const ExponentFunction& p, const Interval& J,
                   int resolution = 512);

// sigma as a Weight: exact power algebra when w is piecewise-power and p is
// constant, otherwise the tabulated midpoint samples above.
Weight sigma_weight(const Weight& w, const ExponentFunction& p, const Interval& J,
                    int resolution = 512);

struct Ineq11Report {
    double best_C = 0.0;   // may be +inf
    Interval witness{0.0, 0.0};
};

// sup over grid subintervals I of J of mu(I)^{r_-(I) - r_+(I)}.
Ineq11Report check_ineq_1_1(const ExponentFunction& r, const Weight& mu,
                            const Interval& J, int resolution = 512);

} // namespace varlp
