#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ap2/cli.hpp"

using namespace ap2::cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run algebra(const std::string& kind, const std::string& op, std::vector<std::string> operands,
            Mode mode = Mode::Exact) {
    std::ostringstream out, err;
    int code = cmd_algebra(kind, op, operands, mode, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("cli_test_") + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

std::string parabola_json(const std::string& kind) {
    json zero = {{"kind", kind}, {"x", "0"}, {"y", "0"}};
    json one = {{"kind", kind}, {"x", "1"}, {"y", "0"}};
    json doc = {{"kind", kind},
                {"degree", 2},
                {"coeffs", {{"F1", {zero, one}}, {"F2", {zero, zero, one}}}}};
    return doc.dump();
}

}  // namespace

TEST_CASE("algebra arithmetic on the command surface") {
    auto eps2 = algebra("dual", "mul", {"0,1", "0,1"});
    CHECK(eps2.code == kExitOk);
    CHECK(json::parse(eps2.out) == json({{"x", "0"}, {"y", "0"}}));

    auto i2 = algebra("complex", "mul", {"0,1", "0,1"});
    CHECK(i2.code == kExitOk);
    CHECK(json::parse(i2.out) == json({{"x", "-1"}, {"y", "0"}}));

    auto inv = algebra("dual", "inverse", {"2,3"});
    CHECK(inv.code == kExitOk);
    CHECK(json::parse(inv.out) == json({{"x", "1/2"}, {"y", "-3/4"}}));

    auto zd = algebra("double", "zero-divisor", {"1,1"});
    CHECK(zd.code == kExitOk);
    CHECK(json::parse(zd.out) == json({{"zero_divisor", true}}));
}

TEST_CASE("divisor and usage errors map to their exit codes") {
    auto div = algebra("double", "inverse", {"1,1"});
    CHECK(div.code == kExitDivisor);
    CHECK(json::parse(div.err).at("error") == "DivisorError");

    CHECK(algebra("doubble", "mul", {"1,0", "1,0"}).code == kExitUsage);
    CHECK(algebra("double", "frobnicate", {"1,0"}).code == kExitUsage);
    CHECK(algebra("double", "mul", {"1,0"}).code == kExitUsage);
    CHECK(algebra("double", "mul", {"1;0", "1,0"}).code == kExitUsage);
    CHECK(algebra("double", "mul", {"a,b", "1,0"}).code == kExitUsage);
}

TEST_CASE("congruence reports classify and verify, deterministically") {
    RunConfig config;
    config.seed = 42;
    config.samples = 100;

    const std::map<std::string, std::string> expected = {
        {"double", "hyperbolic"}, {"dual", "parabolic"}, {"complex", "elliptic"}};
    for (const auto& [kind, cls] : expected) {
        std::ostringstream out1, out2, err;
        CHECK(cmd_congruence(kind, config, out1, err) == kExitOk);
        CHECK(cmd_congruence(kind, config, out2, err) == kExitOk);
        CHECK(out1.str() == out2.str());  // byte-identical reports
        auto doc = json::parse(out1.str());
        CHECK(doc.at("schema") == "1");
        CHECK(doc.at("class") == cls);
        CHECK(doc.at("samples") == 100);
        CHECK(doc.at("passes") == 100);
        CHECK(doc.at("failures").empty());
        CHECK(doc.at("max_residual") == 0.0);
    }

    // a different seed still passes but yields a different sample set
    RunConfig other = config;
    other.seed = 43;
    std::ostringstream outA, outB, err;
    CHECK(cmd_congruence("double", config, outA, err) == kExitOk);
    CHECK(cmd_congruence("double", other, outB, err) == kExitOk);
    CHECK(outA.str() != outB.str());
}

TEST_CASE("float-mode congruence also verifies") {
    RunConfig config;
    config.mode = Mode::Float;
    config.samples = 50;
    std::ostringstream out, err;
    CHECK(cmd_congruence("double", config, out, err) == kExitOk);
    auto doc = json::parse(out.str());
    CHECK(doc.at("passes") == 50);
}

TEST_CASE("curve analysis classifies all three parabolas") {
    const std::map<std::string, std::string> expected = {
        {"double", "join"}, {"dual", "plane-curve-family"}, {"complex", "no-real-singularities"}};
    for (const auto& [kind, cls] : expected) {
        auto path = write_temp(kind + ".json", parabola_json(kind));
        RunConfig config;
        std::ostringstream out, err;
        CHECK(cmd_curve(path, config, out, err) == kExitOk);
        auto doc = json::parse(out.str());
        CHECK(doc.at("classification") == cls);
        CHECK(doc.at("consistent") == true);
        CHECK(doc.at("degenerate_count") == 0);
        CHECK(doc.at("samples") == 25);
        std::remove(path.c_str());
    }
}

TEST_CASE("curve command rejects malformed input with the usage code") {
    auto path = write_temp("bad.json", "{ not json");
    RunConfig config;
    std::ostringstream out, err;
    CHECK(cmd_curve(path, config, out, err) == kExitUsage);
    std::remove(path.c_str());

    std::ostringstream out2, err2;
    CHECK(cmd_curve("does_not_exist.json", config, out2, err2) == kExitUsage);

    json zero = {{"kind", "dual"}, {"x", "0"}, {"y", "0"}};
    json one = {{"kind", "dual"}, {"x", "1"}, {"y", "0"}};
    json wrong = {{"kind", "dual"},
                  {"degree", 7},
                  {"coeffs", {{"F1", {zero, one}}, {"F2", {zero, zero, one}}}}};
    auto path3 = write_temp("wrongdeg.json", wrong.dump());
    std::ostringstream out3, err3;
    CHECK(cmd_curve(path3, config, out3, err3) == kExitUsage);
    std::remove(path3.c_str());
}

TEST_CASE("join reconstruction round-trips through report files") {
    auto curve_path = write_temp("join_curve.json", parabola_json("double"));
    RunConfig config;
    config.out_path = "cli_test_surface_report.json";
    std::ostringstream out, err;
    REQUIRE(cmd_curve(curve_path, config, out, err) == kExitOk);

    RunConfig jc;
    std::ostringstream jout, jerr;
    CHECK(cmd_join(config.out_path, jc, jout, jerr) == kExitOk);
    auto doc = json::parse(jout.str());
    CHECK(doc.at("pass") == true);
    CHECK(doc.at("missing_focal_points") == 0);
    CHECK(doc.at("max_plucker_distance").get<double>() <= 1e-8);

    // a dual-number report is not a join
    auto dual_path = write_temp("join_dual.json", parabola_json("dual"));
    RunConfig dual_config;
    dual_config.out_path = "cli_test_dual_report.json";
    std::ostringstream dout, derr;
    REQUIRE(cmd_curve(dual_path, dual_config, dout, derr) == kExitOk);
    std::ostringstream jout2, jerr2;
    CHECK(cmd_join(dual_config.out_path, jc, jout2, jerr2) == kExitUsage);

    std::remove(curve_path.c_str());
    std::remove(dual_path.c_str());
    std::remove(config.out_path.c_str());
    std::remove(dual_config.out_path.c_str());
}

TEST_CASE("reports write byte-identically to files") {
    RunConfig config;
    config.samples = 20;
    config.out_path = "cli_test_det_a.json";
    std::ostringstream out, err;
    REQUIRE(cmd_congruence("dual", config, out, err) == kExitOk);
    config.out_path = "cli_test_det_b.json";
    REQUIRE(cmd_congruence("dual", config, out, err) == kExitOk);
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    CHECK(slurp("cli_test_det_a.json") == slurp("cli_test_det_b.json"));
    CHECK(!slurp("cli_test_det_a.json").empty());
    std::remove("cli_test_det_a.json");
    std::remove("cli_test_det_b.json");
}
