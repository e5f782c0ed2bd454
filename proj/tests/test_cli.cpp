#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "varlp/experiment_config.hpp"
#include "varlp/report_io.hpp"

#ifndef VARLP_CLI_PATH
#define VARLP_CLI_PATH "varlp"
#endif
#ifndef VARLP_CONFIG_DIR
#define VARLP_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "varlp_cli_out.txt";
    std::string cmd = std::string(VARLP_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string config(const std::string& name) {
    return (fs::path(VARLP_CONFIG_DIR) / name).string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("norm command prints the unit value") {
    auto r = run_cli("norm --config " + config("norm_unit.json"));
    CHECK(r.exit_code == 0);
    CHECK(std::stod(r.stdout_text) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("verify on the bundled baseline returns exit 0 and constant 1") {
    auto r = run_cli("verify --config " + config("t11_baseline.json"));
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j.at("verdict") == "CONSISTENT");
    CHECK(j.at("criterion_constant").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("check on the non-doubling indicator exits 2 with the witness") {
    auto r = run_cli("check --config " + config("doubling_fail_check.json"));
    CHECK(r.exit_code == 2);
    json j = json::parse(r.stdout_text);
    CHECK(j.at("verdict") == "fails");
    CHECK(j.at("witness").at("x").get<double>() == doctest::Approx(0.8));
    CHECK(j.at("witness").at("y").get<double>() == doctest::Approx(0.2));
}

TEST_CASE("schema violations exit 1 with a field diagnostic") {
    fs::path bad = fs::temp_directory_path() / "varlp_bad_config.json";
    std::ofstream(bad) << R"({"exponent": {"form": "constant", "params": {"value": 2.0}},
                             "unknown_key": 1})";
    auto r = run_cli("verify --config " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.stdout_text.find("unknown_key") != std::string::npos);

    auto r2 = run_cli("verify --config /nonexistent/file.json");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("config round-trips losslessly and rejects unknown keys") {
    std::string text = slurp(config("t11_baseline.json"));
    varlp::ExperimentConfig cfg = varlp::parse_config(text);
    std::string out = varlp::config_to_json(cfg);
    varlp::ExperimentConfig cfg2 = varlp::parse_config(out);
    CHECK(varlp::config_to_json(cfg2) == out);
    CHECK(json::parse(out) == json::parse(text));

    CHECK_THROWS_AS(varlp::parse_config(R"({"weights": {"v": {"form": "power",
        "params": {"scale": 1.0, "exponent": 0.0, "extra": 3}}}})"),
                    std::invalid_argument);
}

TEST_CASE("identical seeds give byte-identical artifacts") {
    fs::path outA = fs::temp_directory_path() / "varlp_outA";
    fs::path outB = fs::temp_directory_path() / "varlp_outB";
    fs::remove_all(outA);
    fs::remove_all(outB);
    for (const char* c : {"t11_baseline.json", "t22_monotone.json"}) {
        CHECK(run_cli("verify --config " + config(c) + " --out " + outA.string()).exit_code == 0);
        CHECK(run_cli("verify --config " + config(c) + " --out " + outB.string()).exit_code == 0);
    }
    size_t compared = 0;
    for (const auto& e : fs::directory_iterator(outA)) {
        CHECK(slurp(e.path()) == slurp(outB / e.path().filename()));
        compared++;
    }
    CHECK(compared >= 4); // json + csv per config
}

TEST_CASE("reported witnesses re-evaluate via check") {
    // run the trace criterion standalone and confirm the stored witness
    // reproduces the constant when the config is evaluated again
    fs::path out = fs::temp_directory_path() / "varlp_witness";
    fs::remove_all(out);
    fs::path cfgp = fs::temp_directory_path() / "varlp_trace_check.json";
    std::ofstream(cfgp) << R"({
      "criterion": "trace_condition",
      "exponent": {"form": "constant", "params": {"value": 2.0}},
      "weights": {"v": {"form": "power", "params": {"scale": 1.0, "exponent": 0.0}}},
      "domain": {"kind": "bounded", "interval": [0.0, 1.0]},
      "operator": {"id": "maximal_bounded", "alpha": 0.5},
      "resolutions": [128]
    })";
    auto r1 = run_cli("check --config " + cfgp.string() + " --out " + out.string());
    CHECK(r1.exit_code == 0);
    auto r2 = run_cli("check --config " + cfgp.string());
    json a = json::parse(r1.stdout_text), b = json::parse(r2.stdout_text);
    CHECK(a.at("best_constant") == b.at("best_constant"));
    CHECK(a.at("witness") == b.at("witness"));

    // the written artifact reloads into a TestingReport
    auto rep = varlp::testing_report_from_json(
        json::parse(slurp(out / "check_varlp_trace_check.json")));
    CHECK(rep.criterion == "trace_condition");
    CHECK(rep.best_constant == a.at("best_constant").get<double>());
    CHECK(std::holds_alternative<varlp::Interval>(rep.witness));
}

TEST_CASE("operator command writes plot samples with the schema header") {
    fs::path out = fs::temp_directory_path() / "varlp_samples";
    fs::remove_all(out);
    fs::path cfgp = fs::temp_directory_path() / "varlp_operator.json";
    std::ofstream(cfgp) << R"({
      "exponent": {"form": "constant", "params": {"value": 2.0}},
      "domain": {"kind": "bounded", "interval": [0.0, 1.0]},
      "operator": {"id": "maximal_bounded", "alpha": 0.0},
      "function": {"kind": "indicator", "support": [0.0, 0.5]},
      "resolutions": [64]
    })";
    auto r = run_cli("operator --config " + cfgp.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    std::string csv = slurp(out / "samples.csv");
    CHECK(csv.rfind("x,value,series\n", 0) == 0);
    CHECK(csv.find("maximal_bounded") != std::string::npos);
}

TEST_CASE("resolution and seed overrides are honored") {
    auto r = run_cli("norm --config " + config("norm_unit.json") + " --resolution 64");
    CHECK(r.exit_code == 0);
    CHECK(std::stod(r.stdout_text) == doctest::Approx(1.0).epsilon(1e-8));

    auto a = run_cli("verify --config " + config("t11_baseline.json") + " --seed 99");
    auto b = run_cli("verify --config " + config("t11_baseline.json") + " --seed 99");
    auto c = run_cli("verify --config " + config("t11_baseline.json") + " --seed 100");
    CHECK(a.stdout_text == b.stdout_text);
    CHECK(a.stdout_text != c.stdout_text);
}

TEST_CASE("report aggregates prior artifacts") {
    fs::path out = fs::temp_directory_path() / "varlp_report";
    fs::remove_all(out);
    run_cli("verify --config " + config("t11_baseline.json") + " --out " + out.string());
    run_cli("check --config " + config("doubling_fail_check.json") + " --out " + out.string());
    auto r = run_cli("report --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("T1.1") != std::string::npos);
    CHECK(r.stdout_text.find("check_doubling") != std::string::npos);
    CHECK(fs::exists(out / "report.txt"));
}
