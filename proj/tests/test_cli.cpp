#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(POLARKIT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(POLARKIT_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("space summaries") {
    auto r = run("space --kind Q --dim 7 --q 3");
    CHECK(r.code == 0);
    CHECK(r.out == "Q(6,3): r=3 theta=28 points=364\n");
    r = run("space --kind W --dim 4 --q 3");
    CHECK(r.out.find("r=2 theta=10 points=40") != std::string::npos);
    r = run("--json space --kind H --dim 5 --q 4");
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["points"] == 165);
    CHECK(j["space"]["kind"] == "H");
    // Q+(3,q) is refused
    CHECK(run("space --kind Q+ --dim 4 --q 3").code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("space --kind X --dim 4 --q 3").code == 2);
    CHECK(run("space --kind W --dim 4").code == 2);
    CHECK(run("space --kind W --dim 4 --q 6").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("orbits from generator files") {
    auto r = run("--json orbits --kind W --dim 4 --q 3 --gens " + data("sl25_w33.json"));
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["sizes"] == json{20, 20});
    for (const auto& o : j["orbits"]) CHECK(o["report"]["tight_i"] == 5);

    r = run("--json orbits --kind W --dim 4 --q 3 --gens " + data("empty_w33.json"));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["num_orbits"] == 40);

    r = run("--json orbits --kind W --dim 4 --q 3 --gens " + data("sp4_3.json"));
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["num_orbits"] == 1);
    CHECK(j["orbits"][0]["report"]["tight_i"] == 10);

    r = run("orbits --kind W --dim 4 --q 3 --gens " + data("sl25_w33.json"));
    CHECK(r.out.find("orbit 0: size 20, h1=8 h2=5 5-tight") != std::string::npos);
}

TEST_CASE("a corrupted generator is rejected") {
    const std::string cmd = std::string(POLARKIT_CLI) + " orbits --kind W --dim 4 --q 3 --gens " +
                            data("sp4_3_corrupted.json") + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(out.find("generator 2 does not preserve the form") != std::string::npos);
    CHECK(run("orbits --kind W --dim 4 --q 3 --gens " + data("missing.json")).code == 2);
    CHECK(run("orbits --kind Q --dim 5 --q 3 --gens " + data("sp4_3.json")).code == 2);
}

TEST_CASE("classify point set files") {
    auto r = run("--json classify --kind W --dim 4 --q 3 --set " + data("line_w33.json"));
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["tight_i"] == 1);
    CHECK(j["h1"] == 4);
    CHECK(j["h2"] == 1);
    r = run("--json classify --kind Q --dim 5 --q 3 --set " + data("elliptic_q43.json"));
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["ovoid_m"] == 1);
    CHECK(j["h1"] == 1);
    CHECK(j["h2"] == 4);
    CHECK(run("classify --kind W --dim 4 --q 3 --set " + data("elliptic_q43.json")).code == 2);
}

TEST_CASE("field reduction") {
    auto r = run("--json reduce --kind Q+ --dim 4 --q 4 --row 2 --small-q 2");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["large_points"] == 25);
    CHECK(j["small_points"] == 135);
    CHECK(j["m1"]["size"] == 75);
    CHECK(j["m1"]["tight_i"] == 5);
    r = run("reduce --kind Q+ --dim 4 --q 4 --row 2 --small-q 2");
    CHECK(r.out.find("complement: 60 points, h1=") != std::string::npos);
    CHECK(run("reduce --kind Q+ --dim 4 --q 4 --row 3 --small-q 2").code == 2);
}

TEST_CASE("constructions") {
    auto r = run("--json construct adjoint-sl3 --q 3");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["sizes"] == json{52, 312});
    r = run("--json construct dlength --kind H --q 4 --t 4");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["classes"][0]["length"] == 2);
    CHECK(j["classes"][0]["report"]["ovoid_m"] == 2);
    CHECK(j["classes"][1]["report"]["ovoid_m"] == 3);
    r = run("construct sl25");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["generators"].size() == 2);
    r = run("construct classical --family Sp --dim 4 --q 3");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["d"] == 4);
    CHECK(run("construct adjoint-sl3").code == 2);
    CHECK(run("construct nothing --q 3").code == 2);
    CHECK(run("construct adjoint-sl3 --q 5").code == 2);
}

TEST_CASE("verify") {
    auto r = run("verify adjoint-sl3-q3");
    CHECK(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(run("verify no-such-target").code == 2);
    r = run("verify --list");
    CHECK(r.out.find("extsq-sp6-q3  (slow)") != std::string::npos);
    // all --fast excludes the slow target
    r = run("--json verify all --fast");
    CHECK(r.code == 0);
    CHECK(r.out.find("extsq-sp6-q3") == std::string::npos);
    // byte-identical across thread counts
    const auto a = run("--threads 1 --json verify fast");
    const auto b = run("--threads 4 --json verify fast --parallel");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // a failing manifest exits 1
    r = run("verify all --manifest " + data("failing_manifest.json"));
    CHECK(r.code == 1);
    CHECK(run("verify all --manifest " + data("missing.json")).code == 2);
}
