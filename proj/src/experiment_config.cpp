#include "varlp/experiment_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "varlp/criteria.hpp"

namespace varlp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config error at " + path + ": " + what);
}

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(path, "unknown key '" + it.key() + "'");
}

double number_at(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path, std::string("missing '") + key + "'");
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

double breakpoint_value(const json& x, const std::string& path) {
    if (x.is_string()) {
        if (x.get<std::string>() == "inf") return kInf;
        fail(path, "only the string \"inf\" is accepted here");
    }
    if (!x.is_number()) fail(path, "expected a number or \"inf\"");
    return x.get<double>();
}

Interval interval_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi]");
    Interval I{j.at(0).get<double>(), j.at(1).get<double>()};
    if (!(I.hi > I.lo)) fail(path, "needs hi > lo");
    return I;
}

std::vector<double> doubles_at(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(x.get<double>());
    return out;
}

Monotonicity monotone_from(const std::string& s, const std::string& path) {
    if (s == "none") return Monotonicity::none;
    if (s == "increasing") return Monotonicity::increasing;
    if (s == "decreasing") return Monotonicity::decreasing;
    fail(path, "monotone must be none|increasing|decreasing");
}

Weight parse_weight(const json& j, const std::string& path) {
    expect_keys(j, {"form", "params", "monotone"}, path);
    std::string form = j.at("form").get<std::string>();
    Monotonicity mono = monotone_from(j.value("monotone", "none"), path);
    const json& prm = j.at("params");
    if (form == "power") {
        expect_keys(prm, {"scale", "exponent"}, path + ".params");
        return Weight::power(number_at(prm, "scale", path), number_at(prm, "exponent", path), mono);
    }
    if (form == "piecewise_power") {
        expect_keys(prm, {"breakpoints", "scales", "exponents"}, path + ".params");
        std::vector<double> breaks;
        for (const auto& x : prm.at("breakpoints"))
            breaks.push_back(breakpoint_value(x, path + ".params.breakpoints"));
        auto scales = doubles_at(prm.at("scales"), path);
        auto exps = doubles_at(prm.at("exponents"), path);
        if (scales.size() != exps.size()) fail(path, "scales and exponents differ in length");
        std::vector<Weight::PowerPiece> pieces;
        for (size_t i = 0; i < scales.size(); ++i)
            pieces.push_back(Weight::PowerPiece{scales[i], exps[i]});
        return Weight::piecewise_power(std::move(breaks), std::move(pieces), mono);
    }
    if (form == "tabulated") {
        expect_keys(prm, {"interval", "values"}, path + ".params");
        auto vals = doubles_at(prm.at("values"), path);
        Interval I = interval_at(prm.at("interval"), path + ".params.interval");
        return Weight::tabulated(GridFunction(Grid(I, static_cast<int>(vals.size())), vals), mono);
    }
    fail(path, "form must be power|piecewise_power|tabulated");
}

ExponentFunction parse_exponent(const json& j, const std::string& path, const Domain& dom,
                                double a) {
    expect_keys(j, {"form", "params", "tail"}, path);
    std::string form = j.at("form").get<std::string>();
    const json& prm = j.at("params");
    std::optional<std::pair<double, double>> tail;
    if (j.contains("tail")) {
        expect_keys(j.at("tail"), {"a", "p_c"}, path + ".tail");
        tail = {number_at(j.at("tail"), "a", path), number_at(j.at("tail"), "p_c", path)};
    }

    ExponentFunction base = [&]() -> ExponentFunction {
        if (form == "constant") {
            expect_keys(prm, {"value"}, path + ".params");
            return ExponentFunction::constant(number_at(prm, "value", path));
        }
        if (form == "affine") {
            expect_keys(prm, {"c0", "c1", "interval"}, path + ".params");
            return ExponentFunction::affine(number_at(prm, "c0", path), number_at(prm, "c1", path),
                                            interval_at(prm.at("interval"), path));
        }
        if (form == "piecewise") {
            expect_keys(prm, {"breakpoints", "values"}, path + ".params");
            return ExponentFunction::piecewise(doubles_at(prm.at("breakpoints"), path),
                                               doubles_at(prm.at("values"), path));
        }
        if (form == "tabulated") {
            expect_keys(prm, {"interval", "values"}, path + ".params");
            auto vals = doubles_at(prm.at("values"), path);
            Interval I = interval_at(prm.at("interval"), path);
            return ExponentFunction::tabulated(
                GridFunction(Grid(I, static_cast<int>(vals.size())), vals));
        }
        fail(path, "form must be constant|affine|piecewise|tabulated");
    }();

    if (tail) return base.with_tail(tail->first, tail->second, dom.kind);
    if (dom.kind != DomainKind::bounded && !base.constant_value()) {
        // non-constant exponent on an unbounded domain without a tail clause
        fail(path, "unbounded domains need a tail clause or a constant exponent");
    }
    if (dom.kind != DomainKind::bounded) {
        Interval compactum = dom.kind == DomainKind::halfline ? Interval{0.0, a}
                                                              : Interval{-a, a};
        return ExponentFunction::constant_on(*base.constant_value(),
                                             Domain{dom.kind, compactum});
    }
    return base;
}

FamilyKind family_kind_from(const std::string& s, const std::string& path) {
    if (s == "random-steps") return FamilyKind::random_steps;
    if (s == "power") return FamilyKind::power;
    if (s == "indicators") return FamilyKind::indicators;
    if (s == "extremal") return FamilyKind::extremal;
    if (s == "normalized-extremal") return FamilyKind::normalized_extremal;
    fail(path, "unknown family kind '" + s + "'");
}

TestFamily parse_family(const json& j, const std::string& path) {
    expect_keys(j,
                {"kind", "seed", "count", "pieces", "range", "support", "gammas", "analytic",
                 "intervals"},
                path);
    TestFamily f;
    f.kind = family_kind_from(j.at("kind").get<std::string>(), path);
    if (j.contains("seed")) f.seed = j.at("seed").get<uint64_t>();
    if (j.contains("count")) f.count = j.at("count").get<int>();
    if (j.contains("pieces")) {
        auto p = doubles_at(j.at("pieces"), path);
        if (p.size() != 2) fail(path + ".pieces", "expected [min, max]");
        f.min_pieces = static_cast<int>(p[0]);
        f.max_pieces = static_cast<int>(p[1]);
    }
    if (j.contains("range")) {
        auto r = doubles_at(j.at("range"), path);
        if (r.size() != 2) fail(path + ".range", "expected [lo, hi]");
        f.value_lo = r[0];
        f.value_hi = r[1];
    }
    if (j.contains("support")) f.support = interval_at(j.at("support"), path + ".support");
    if (j.contains("gammas")) f.gammas = doubles_at(j.at("gammas"), path);
    if (j.contains("analytic")) f.analytic = j.at("analytic").get<bool>();
    if (j.contains("intervals"))
        for (const auto& x : j.at("intervals"))
            f.intervals.push_back(interval_at(x, path + ".intervals"));
    return f;
}

FunctionSpec parse_function(const json& j, const std::string& path) {
    expect_keys(j, {"kind", "value", "gamma", "values", "support"}, path);
    FunctionSpec f;
    f.kind = j.at("kind").get<std::string>();
    if (j.contains("value")) f.value = j.at("value").get<double>();
    if (j.contains("gamma")) f.gamma = j.at("gamma").get<double>();
    if (j.contains("values")) f.values = doubles_at(j.at("values"), path);
    if (j.contains("support")) f.support = interval_at(j.at("support"), path + ".support");
    return f;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j = json::parse(text);
    const std::string canonical = j.dump(2);
    expect_keys(j,
                {"theorem", "criterion", "exponent", "exponent_q", "weights", "domain", "operator",
                 "scan", "families", "resolutions", "seed", "tol", "function", "carleson"},
                "$");
    ExperimentConfig cfg;
    if (j.contains("theorem")) cfg.theorem = j.at("theorem").get<std::string>();
    if (j.contains("criterion")) cfg.criterion = j.at("criterion").get<std::string>();

    if (j.contains("domain")) {
        const json& d = j.at("domain");
        expect_keys(d, {"kind", "interval", "a"}, "$.domain");
        std::string kind = d.value("kind", "bounded");
        cfg.domain.kind = kind == "bounded" ? DomainKind::bounded
                        : kind == "halfline" ? DomainKind::halfline
                        : kind == "line" ? DomainKind::line
                                         : (fail("$.domain.kind", "bounded|halfline|line"), DomainKind::bounded);
        if (d.contains("interval")) cfg.domain.box = interval_at(d.at("interval"), "$.domain.interval");
        if (d.contains("a")) cfg.a = d.at("a").get<double>();
    }

    if (j.contains("exponent"))
        cfg.exponent = parse_exponent(j.at("exponent"), "$.exponent", cfg.domain, cfg.a);
    if (j.contains("exponent_q"))
        cfg.exponent_q = parse_exponent(j.at("exponent_q"), "$.exponent_q", cfg.domain, cfg.a);

    if (j.contains("weights")) {
        expect_keys(j.at("weights"), {"v", "w"}, "$.weights");
        if (j.at("weights").contains("v")) cfg.v = parse_weight(j.at("weights").at("v"), "$.weights.v");
        if (j.at("weights").contains("w")) cfg.w = parse_weight(j.at("weights").at("w"), "$.weights.w");
    }

    if (j.contains("operator")) {
        expect_keys(j.at("operator"), {"id", "alpha"}, "$.operator");
        cfg.operator_id = j.at("operator").value("id", "maximal_bounded");
        if (j.at("operator").contains("alpha")) cfg.alpha = j.at("operator").at("alpha").get<double>();
    }

    if (j.contains("scan")) {
        const json& s = j.at("scan");
        expect_keys(s, {"intervals", "t_points", "xr_points", "x_points", "r_points",
                        "interval_family"},
                    "$.scan");
        if (s.contains("intervals")) cfg.intervals = s.at("intervals").get<int>();
        if (s.contains("t_points")) cfg.t_points = s.at("t_points").get<int>();
        if (s.contains("xr_points")) cfg.xr_points = s.at("xr_points").get<int>();
        if (s.contains("x_points")) cfg.x_points = doubles_at(s.at("x_points"), "$.scan.x_points");
        if (s.contains("r_points")) cfg.r_points = doubles_at(s.at("r_points"), "$.scan.r_points");
        if (s.contains("interval_family"))
            for (const auto& x : s.at("interval_family"))
                cfg.interval_family.push_back(interval_at(x, "$.scan.interval_family"));
    }

    if (j.contains("families")) {
        int idx = 0;
        for (const auto& x : j.at("families"))
            cfg.families.push_back(parse_family(x, "$.families[" + std::to_string(idx++) + "]"));
    }
    if (j.contains("resolutions")) {
        cfg.resolutions.clear();
        for (const auto& x : j.at("resolutions")) cfg.resolutions.push_back(x.get<int>());
        if (cfg.resolutions.empty()) fail("$.resolutions", "must not be empty");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("function")) cfg.function = parse_function(j.at("function"), "$.function");
    if (j.contains("carleson")) {
        const json& c = j.at("carleson");
        expect_keys(c, {"depth", "s", "a_rule", "b_rule"}, "$.carleson");
        CarlesonSpec cs;
        if (c.contains("depth")) cs.depth = c.at("depth").get<int>();
        if (c.contains("s")) cs.s = c.at("s").get<double>();
        if (c.contains("a_rule")) cs.a_rule = c.at("a_rule").get<std::string>();
        if (c.contains("b_rule")) cs.b_rule = c.at("b_rule").get<std::string>();
        cfg.carleson = cs;
    }
    cfg.source_json = canonical;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) { return cfg.source_json; }

std::vector<double> default_t_scan(const ExperimentConfig& cfg) {
    return log_spaced(1e-3 * cfg.a, 1e3 * cfg.a, cfg.t_points);
}

GridFunction materialize(const FunctionSpec& spec, const Grid& grid) {
    std::vector<double> vals(static_cast<size_t>(grid.n), 0.0);
    if (spec.kind == "constant") {
        for (auto& v : vals) v = spec.value;
    } else if (spec.kind == "steps") {
        if (spec.values.empty()) throw std::invalid_argument("steps function needs values");
        for (int i = 0; i < grid.n; ++i) {
            size_t k = static_cast<size_t>(i) * spec.values.size() / static_cast<size_t>(grid.n);
            vals[static_cast<size_t>(i)] = spec.values[k];
        }
    } else if (spec.kind == "power") {
        for (int i = 0; i < grid.n; ++i) {
            double x = grid.midpoint(i);
            if (x < spec.support.lo || x > spec.support.hi) continue;
            vals[static_cast<size_t>(i)] = std::pow(x, spec.gamma);
        }
    } else if (spec.kind == "indicator") {
        for (int i = 0; i < grid.n; ++i) {
            double x = grid.midpoint(i);
            if (x >= spec.support.lo && x <= spec.support.hi) vals[static_cast<size_t>(i)] = 1.0;
        }
    } else {
        throw std::invalid_argument("function kind must be constant|steps|power|indicator");
    }
    return GridFunction(grid, std::move(vals));
}

} // namespace varlp
