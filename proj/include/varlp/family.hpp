#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"
#include "varlp/weight.hpp"

namespace varlp {

enum class FamilyKind { random_steps, power, indicators, extremal, normalized_extremal };

// A deterministic family of test functions, regenerated exactly from
// (kind, seed, count, parameters).
struct TestFamily {
    FamilyKind kind = FamilyKind::random_steps;
    uint64_t seed = 7;
    int count = 8;
    // random-steps
    int min_pieces = 8, max_pieces = 64;
    double value_lo = 1e-2, value_hi = 1e2;
    Interval support{0.0, 1.0};
    // power members x^gamma on the support
    std::vector<double> gammas;
    bool analytic = false; // closed-form member evaluation where available
    // extremal members chi_I sigma (beta-normalized per the necessity proof)
    std::vector<Interval> intervals;

    static const char* kind_name(FamilyKind k);
};

struct FamilyMember {
    std::string id;
    GridFunction f;
    bool analytic = false; // f also described by (gamma, support) in closed form
    double gamma = 0.0;
    Interval support{0.0, 1.0};
};

// Members live on `grid` (zero outside their support). The extremal kinds
// build chi_I w^{-p'} and divide by beta = ||w^{-1}||_{L^{p'}(span)} when
// beta > 1 (always, for the normalized kind).
std::vector<FamilyMember> generate_family(const TestFamily& spec, const Grid& grid,
                                          const Weight& w, const ExponentFunction& p);

} // namespace varlp
