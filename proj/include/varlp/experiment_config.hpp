#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varlp/exponent.hpp"
#include "varlp/family.hpp"
#include "varlp/interval.hpp"
#include "varlp/weight.hpp"

namespace varlp {

// Grid function described in a config for the `norm` / `operator` commands.
struct FunctionSpec {
    std::string kind = "constant"; // constant | steps | power | indicator
    double value = 1.0;
    double gamma = 0.0;
    std::vector<double> values;
    Interval support{0.0, 1.0};
};

struct CarlesonSpec {
    int depth = 6;
    double s = 2.0;
    std::string a_rule = "length";  // length | measure
    std::string b_rule = "length";
};

// One experiment: weights, exponent(s), domain, operator, scan densities and
// test families. Loaded strictly from JSON (unknown keys rejected) and
// serialized back losslessly.
struct ExperimentConfig {
    std::string theorem;    // T1.1 C1.1 T1.2 T1.3 TA T2.1 T2.2
    std::string criterion;  // for `check`

    std::optional<ExponentFunction> exponent;
    std::optional<ExponentFunction> exponent_q;
    std::optional<Weight> v;
    std::optional<Weight> w;

    Domain domain{DomainKind::bounded, Interval{0.0, 1.0}};
    double a = 1.0; // compactum size for unbounded domains

    std::string operator_id = "maximal_bounded";
    double alpha = 0.0;

    // scan densities
    int intervals = 256;  // criterion grid resolution
    int t_points = 64;
    int xr_points = 64;
    std::vector<double> x_points, r_points;   // explicit doubling scan
    std::vector<Interval> interval_family;    // sawyer_norm targets

    std::vector<TestFamily> families;
    std::vector<int> resolutions{256, 512};
    uint64_t seed = 7;
    double tol = 1e-9;

    std::optional<FunctionSpec> function;
    std::optional<CarlesonSpec> carleson;

    // canonical dump of the source document (lossless round trip)
    std::string source_json;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

// t-scan for Hardy/E conditions: log-spaced over [1e-3 a, 1e3 a] unless the
// config supplies explicit points.
std::vector<double> default_t_scan(const ExperimentConfig& cfg);

GridFunction materialize(const FunctionSpec& spec, const Grid& grid);

} // namespace varlp
