#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>

#include "varlp/interval.hpp"

namespace varlp {

// What attains a reported supremum: an interval, a point, a point pair
// (x,y) or (x,r), or a generated function's id.
struct PointPairWitness { double first = 0.0, second = 0.0; };
using Witness = std::variant<std::monostate, Interval, double, PointPairWitness, std::string>;

// Outcome of one criterion evaluation. `best_constant` is the maximum of
// the per-instance ratio over the scanned family; the witness re-evaluates
// to it. Verdicts: holds / fails / divergent-under-refinement.
struct TestingReport {
    std::string criterion;
    double best_constant = 0.0;
    Witness witness;
    std::map<std::string, double> scan;    // resolution, family sizes, ...
    std::map<std::string, double> extras;  // secondary constants, hypothesis data
    std::string verdict = "holds";

    bool finite() const { return std::isfinite(best_constant); }
};

} // namespace varlp
