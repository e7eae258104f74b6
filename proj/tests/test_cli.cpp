#include "sftlab/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sftlab;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("sftlab_test_" + name);
}

} // namespace

TEST_CASE("help and version") {
    auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("experiment") != std::string::npos);
    auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out == "1.0.0\n");
}

TEST_CASE("zeta prints json") {
    auto r = run({"zeta", "--d", "1", "--alphabet", "2", "--alpha", "0.25", "--jmax", "3"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(0.51099).epsilon(1e-4));
    auto r20 = run({"zeta", "--alpha", "0.25", "--jmax", "20"});
    CHECK(json::parse(r20.out)["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("bad flags are named") {
    auto r = run({"zeta", "--bogus", "3"});
    CHECK(r.code != 0);
    CHECK(r.err.find("--bogus") != std::string::npos);
    auto out_of_range = run({"zeta", "--alpha", "1.5"});
    CHECK(out_of_range.code != 0);
    CHECK(out_of_range.err.find("alpha") != std::string::npos);
    auto none = run({});
    CHECK(none.code != 0);
}

TEST_CASE("module errors map to exit codes") {
    auto r = run({"entropy", "--d", "1", "--n", "4", "--alpha", "0.5", "--seed", "1", "--k", "0"});
    CHECK(r.code != 0);
    auto big = run({"sample", "--d", "3", "--n", "4", "--alpha", "0.5", "--seed", "1"});
    CHECK(big.code == 3);
    CHECK(json::parse(big.err.substr(0, big.err.find('\n')))["error"] == "resource");
}

TEST_CASE("sample, emptiness and entropy share one ensemble") {
    auto path = temp_file("omega.bin");
    auto s = run({"sample", "--d", "1", "--n", "3", "--alpha", "0.6", "--seed", "9", "--trial", "2", "--omega-out", path.string()});
    REQUIRE(s.code == 0);
    auto a = run({"emptiness", "--omega-in", path.string()});
    auto b = run({"emptiness", "--d", "1", "--n", "3", "--alpha", "0.6", "--seed", "9", "--trial", "2"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(json::parse(a.out)["verdict"] == json::parse(b.out)["verdict"]);
    auto e = run({"entropy", "--omega-in", path.string(), "--k", "12"});
    CHECK(e.code == 0);
    CHECK(json::parse(e.out).contains("phi"));
    std::filesystem::remove(path);
}

TEST_CASE("orbit counts as csv") {
    auto r = run({"orbits", "--d", "1", "--alphabet", "2", "--max-size", "6"});
    CHECK(r.out == "j,P_j\n1,2\n2,1\n3,2\n4,3\n5,6\n6,9\n");
}

TEST_CASE("cover reads a pattern file") {
    auto path = temp_file("pattern.txt");
    {
        std::ofstream f(path);
        f << "1 128 2\n";
        for (int i = 0; i < 128; ++i) f << (i % 8 < 3 ? 1 : 0) << (i + 1 < 128 ? " " : "\n");
    }
    auto r = run({"cover", "--in", path.string(), "--n", "32", "--tau", "0.3333333333"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["valid"] == true);
    CHECK(j["bound_holds"] == true);
    CHECK(j["full_cube"] == true);
    std::filesystem::remove(path);
}

TEST_CASE("experiment csv, json and config precedence") {
    auto cfg = temp_file("exp.ini");
    auto js = temp_file("exp.json");
    {
        std::ofstream f(cfg);
        f << "[experiment]\ntrials = 50\nseed = 3\nn = 3\n";
    }
    auto r = run({"--config", cfg.string(), "experiment", "emptiness", "--trials", "30", "--alpha", "0.1,0.7", "--json", js.string()});
    CHECK((r.code == 0 || r.code == 1));
    auto j = json::parse(std::ifstream(js));
    CHECK(j["config"]["trials"] == 30); // flag beats file
    CHECK(j["config"]["seed"] == 3);
    CHECK(j["config"]["n"] == 3);
    CHECK(r.out.rfind("kind,", 0) == 0);
    auto again = run({"--config", cfg.string(), "experiment", "emptiness", "--trials", "30", "--alpha", "0.1,0.7"});
    CHECK(again.out == r.out);
    auto gen = run({"experiment", "emptiness", "--trials", "5", "--n", "3"});
    CHECK(gen.err.find("seed_generated") != std::string::npos);
    std::filesystem::remove(cfg);
    std::filesystem::remove(js);
}
