#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varlp/criteria.hpp"
#include "varlp/experiment_config.hpp"
#include "varlp/family.hpp"

namespace varlp {

enum class OperatorId {
    identity,
    maximal_bounded,
    maximal_window,
    maximal_finite,
    hilbert,
    hardy_vw,
    hardy_vw_dual,
};

OperatorId operator_from_name(const std::string& name);
const char* operator_name(OperatorId id);

struct OperatorSpec {
    OperatorId id = OperatorId::identity;
    double alpha = 0.0;
    std::optional<Weight> v_op, w_op; // transform weights for H_{v,w}
};

GridFunction apply_operator(const GridFunction& f, const OperatorSpec& op, const Domain& domain);

struct NormRatioEstimate {
    double sup_ratio = 0.0;
    std::string argmax;
    int evaluated = 0;
    int skipped = 0; // zero or infinite denominators
};

// sup over the family of ||v_norm T f||_{L^{q}(N)} / ||w_norm f||_{L^{p}(N)}
// with N the working box (a lower bound of the operator norm: truncation
// only shrinks the numerator). Analytic power members of H_{v,w} with power
// weights and constant exponents are evaluated in closed form over all of
// R_+, tails included.
NormRatioEstimate estimate_norm_ratio(const OperatorSpec& op, const Weight& v_norm,
                                      const Weight& w_norm, const ExponentFunction& p,
                                      const ExponentFunction& q,
                                      const std::vector<FamilyMember>& family,
                                      const Domain& domain, double tol = kDefaultTol);

struct RefinementRow {
    int resolution = 0;
    double sup_ratio = 0.0;
    std::string argmax;
};

struct VerificationReport {
    std::string theorem;
    std::map<std::string, double> hypotheses; // flags (1/0) and measured constants
    bool hypotheses_ok = true;
    std::vector<TestingReport> criteria;
    double criterion_constant = 0.0;
    bool criterion_finite = true;
    std::vector<RefinementRow> refinement;
    std::string verdict; // CONSISTENT | INCONSISTENT | HYPOTHESIS-VIOLATED
    std::string narrative;
};

// Runs hypothesis checks, the theorem's criterion, and the norm-ratio
// estimate at every configured resolution. CONSISTENT means: finite
// criterion with ratios stable within 10 percent across refinement, or a
// failed criterion with ratio growth >= 2x across it.
VerificationReport verify_theorem(const ExperimentConfig& cfg);

// closed-form ratio for an x^gamma member under H_{v,w} with power weights
// and constant exponents; nullopt when the member is outside that class
std::optional<double> analytic_hardy_ratio(double gamma, const Interval& support,
                                           const Weight& v_op, const Weight& w_op, double p_c,
                                           double q_c);

} // namespace varlp
