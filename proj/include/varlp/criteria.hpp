#pragma once

#include <vector>

#include "varlp/dyadic.hpp"
#include "varlp/exponent.hpp"
#include "varlp/norms.hpp"
#include "varlp/operators.hpp"
#include "varlp/testing_report.hpp"
#include "varlp/weight.hpp"

namespace varlp {

// --- Sawyer-type modular testing condition (bounded interval) -------------
//
// Over every grid subinterval I of J:
//   ratio_I = int_I v^{p(x)} ( M^{(J)}_alpha (sigma chi_I) )^{p(x)} dx
//             / int_I sigma,      sigma = w^{-p'}.
// The denominator uses exact weight integrals, so a non-integrable sigma is
// detected as an exact infinity and the condition fails with that witness.
TestingReport sawyer_modular(const Weight& v, const Weight& w, const ExponentFunction& p,
                             double alpha, const Interval& J, int resolution = 256);
double sawyer_modular_instance(const Weight& v, const Weight& w, const ExponentFunction& p,
                               double alpha, const Interval& J, int resolution,
                               const Interval& I);

// --- Trace condition (fractional maximal with Lebesgue input norm) --------
// sup over grid subintervals I of (1/|I|) int_I v(x)^{p(x)} |I|^{alpha p(x)} dx.
TestingReport trace_condition(const Weight& v, const ExponentFunction& p, double alpha,
                              const Interval& J, int resolution = 256);
double trace_condition_instance(const Weight& v, const ExponentFunction& p, double alpha,
                                const Interval& J, int resolution, const Interval& I);

// --- Sawyer-type norm testing condition (window maximal, unbounded) -------
// ratio_I = || v M^{(domain)}_alpha (sigma chi_I) ||_{L^{p(.)}(N)}
//           / || w^{1-p'} ||_{L^{p(.)}(I)}
// where N = I on the half-line and N = the working window on the line (as
// the statements print it). `window` is the working box for the grid.
TestingReport sawyer_norm(const Weight& v, const Weight& w, const ExponentFunction& p,
                          double alpha, DomainKind domain, const Interval& window,
                          const std::vector<Interval>& I_family, int resolution = 512);
double sawyer_norm_instance(const Weight& v, const Weight& w, const ExponentFunction& p,
                            double alpha, DomainKind domain, const Interval& window,
                            int resolution, const Interval& I);

// --- Hardy transform boundedness conditions D and D' ----------------------
enum class HardyCondition { D, Dprime };
TestingReport hardy_condition(const Weight& v, const Weight& w, const ExponentFunction& p,
                              const ExponentFunction& q, HardyCondition which,
                              const std::vector<double>& t_scan, int resolution = 512);
double hardy_condition_instance(const Weight& v, const Weight& w, const ExponentFunction& p,
                                const ExponentFunction& q, HardyCondition which, double t,
                                int resolution = 512);

// --- Conditions E1 (2.3) and E2 (2.4) --------------------------------------
// E1(t) = || v(x) x^{-1} ||_{L^{p}((t,inf))} || w^{-1} ||_{L^{p'}((0,t))}
// E2(t) = || v ||_{L^{p}((0,t))} || w^{-1}(x) x^{-1} ||_{L^{p'}((0,t))}
// E2 is evaluated as printed (both factors over (0,t)); the (t,inf) variant
// of its second factor is reported alongside under extras["dual_variant"].
enum class ConditionE { E1, E2 };
TestingReport condition_E(const Weight& v, const Weight& w, const ExponentFunction& p,
                          ConditionE which, const std::vector<double>& t_scan,
                          int resolution = 512);
double condition_E_instance(const Weight& v, const Weight& w, const ExponentFunction& p,
                            ConditionE which, double t, int resolution = 512);

// --- Pointwise condition (2.2) ---------------------------------------------
// min over the two disjuncts of sup_x v_+([x/4,4x])/w(x) and
// sup_x v(x)/w_-([x/4,4x]); holds when either is finite.
TestingReport condition_pointwise_22(const Weight& v, const Weight& w,
                                     const std::vector<double>& x_scan);

// --- Monotone implication (2.5): sup_t v(4t)/w(t) --------------------------
TestingReport monotone_implication_25(const Weight& v, const Weight& w,
                                      const std::vector<double>& t_scan);

// --- Dyadic Carleson embedding check ---------------------------------------
struct CarlesonNode { int depth = 0; int index = 0; };
struct CarlesonCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool hypotheses_ok = false;
    double hypothesis_c = 0.0;           // smallest c in (ii)
    double corollary_printed_ratio = 0.0;   // lhs without the outer 1/s power
    double corollary_consistent_ratio = 0.0; // both sides under the 1/s power
};
// g must live on the lattice leaf grid.
CarlesonCheck carleson_embedding_check(const DyadicLattice& lat,
                                       const std::vector<CarlesonNode>& nodes,
                                       const std::vector<double>& a,
                                       const std::vector<double>& b, const Weight& u,
                                       const GridFunction& g, double s);

// --- Lemma A averaged-modular bound ----------------------------------------
// best_c over grid subintervals I and cell midpoints x in I of
//   ((1/mu(I)) int_I |f| dmu)^{r(x)} / ((1/mu(I)) int_I |f|^{r} dmu + 1).
// Caller normalizes f so that ||f||_{L^{r}(J, mu)} <= 1.
TestingReport lemma_A_check(const GridFunction& f, const ExponentFunction& r,
                            const Weight& mu, const Interval& J);
double lemma_A_instance(const GridFunction& f, const ExponentFunction& r, const Weight& mu,
                        const Interval& I);

std::vector<double> log_spaced(double lo, double hi, int count);

} // namespace varlp
