#include "varlp/report_io.hpp"

#include <sstream>

namespace varlp {

namespace {

nlohmann::json number_or_infinite(double x) {
    if (std::isinf(x)) return "infinite";
    return x;
}

nlohmann::json witness_json(const Witness& w) {
    nlohmann::json j;
    if (std::holds_alternative<std::monostate>(w)) {
        j["type"] = "none";
    } else if (const auto* I = std::get_if<Interval>(&w)) {
        j["type"] = "interval";
        j["lo"] = I->lo;
        j["hi"] = I->hi;
    } else if (const auto* x = std::get_if<double>(&w)) {
        j["type"] = "point";
        j["x"] = *x;
    } else if (const auto* pr = std::get_if<PointPairWitness>(&w)) {
        j["type"] = "pair";
        j["x"] = pr->first;
        j["y"] = pr->second;
    } else {
        j["type"] = "function";
        j["id"] = std::get<std::string>(w);
    }
    return j;
}

Witness witness_from_json(const nlohmann::json& j) {
    std::string type = j.at("type");
    if (type == "none") return std::monostate{};
    if (type == "interval") return Interval{j.at("lo").get<double>(), j.at("hi").get<double>()};
    if (type == "point") return j.at("x").get<double>();
    if (type == "pair") return PointPairWitness{j.at("x").get<double>(), j.at("y").get<double>()};
    return j.at("id").get<std::string>();
}

} // namespace

nlohmann::json testing_report_json(const TestingReport& rep) {
    nlohmann::json j;
    j["criterion"] = rep.criterion;
    j["best_constant"] = number_or_infinite(rep.best_constant);
    j["verdict"] = rep.verdict;
    j["witness"] = witness_json(rep.witness);
    j["scan"] = rep.scan;
    nlohmann::json ex = nlohmann::json::object();
    for (const auto& [k, v] : rep.extras) ex[k] = number_or_infinite(v);
    j["extras"] = ex;
    return j;
}

TestingReport testing_report_from_json(const nlohmann::json& j) {
    TestingReport rep;
    rep.criterion = j.at("criterion");
    rep.best_constant = j.at("best_constant").is_string() ? kInf
                                                          : j.at("best_constant").get<double>();
    rep.verdict = j.at("verdict");
    rep.witness = witness_from_json(j.at("witness"));
    for (auto it = j.at("scan").begin(); it != j.at("scan").end(); ++it)
        rep.scan[it.key()] = it.value().get<double>();
    for (auto it = j.at("extras").begin(); it != j.at("extras").end(); ++it)
        rep.extras[it.key()] = it.value().is_string() ? kInf : it.value().get<double>();
    return rep;
}

nlohmann::json verification_report_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["theorem"] = rep.theorem;
    j["verdict"] = rep.verdict;
    j["narrative"] = rep.narrative;
    nlohmann::json hy = nlohmann::json::object();
    for (const auto& [k, v] : rep.hypotheses) hy[k] = number_or_infinite(v);
    j["hypotheses"] = hy;
    j["hypotheses_ok"] = rep.hypotheses_ok;
    j["criterion_constant"] = number_or_infinite(rep.criterion_constant);
    j["criterion_finite"] = rep.criterion_finite;
    nlohmann::json crits = nlohmann::json::array();
    for (const auto& c : rep.criteria) crits.push_back(testing_report_json(c));
    j["criteria"] = crits;
    nlohmann::json refine = nlohmann::json::array();
    for (const auto& r : rep.refinement) {
        nlohmann::json row;
        row["resolution"] = r.resolution;
        row["sup_ratio"] = number_or_infinite(r.sup_ratio);
        row["argmax"] = r.argmax;
        refine.push_back(row);
    }
    j["refinement"] = refine;
    return j;
}

std::string refinement_csv(const VerificationReport& rep) {
    std::ostringstream os;
    os << "x,value,series\n";
    os.precision(17);
    for (const auto& r : rep.refinement)
        os << r.resolution << "," << r.sup_ratio << "," << rep.theorem << "_sup_ratio\n";
    return os.str();
}

} // namespace varlp
