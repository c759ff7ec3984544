#include <set>

#include "doctest.h"
#include "json.hpp"
#include "polarkit/error.hpp"
#include "polarkit/verify.hpp"

using namespace polarkit;
using json = nlohmann::json;

TEST_CASE("built-in manifest") {
    const auto& m = builtin_manifest();
    std::set<std::string> ids;
    for (const auto& t : m) {
        CHECK(ids.insert(t.id).second);
        CHECK(json::parse(t.params).is_object());
        CHECK(json::parse(t.expected).is_object());
    }
    CHECK(ids.count("adjoint-sl3-q3") == 1);
    CHECK(ids.count("sl25-W33") == 1);
    const auto slow = select_targets(m, "slow");
    REQUIRE(slow.size() == 1);
    CHECK(slow[0].id == "extsq-sp6-q3");
    CHECK(select_targets(m, "fast").size() + slow.size() == m.size());
    CHECK(select_targets(m, "all").size() == m.size());
    CHECK(select_targets(m, "c2-H34").size() == 1);
    CHECK_THROWS_AS(select_targets(m, "no-such-target"), InvalidArgument);
}

TEST_CASE("fast targets all match and are deterministic") {
    const auto targets = select_targets(builtin_manifest(), "fast");
    const auto one = run_targets(targets, {1, false, false});
    for (const auto& r : one) {
        CAPTURE(r.id);
        CAPTURE(r.computed);
        CHECK(r.match);
        CHECK_FALSE(r.wall_time.has_value());
    }
    const auto many = run_targets(targets, {4, true, false});
    CHECK(reports_jsonl(one) == reports_jsonl(many));
    CHECK(reports_table(one) == reports_table(many));
}

TEST_CASE("mismatches and errors are reported") {
    const auto manifest = parse_manifest(R"([
      {"id": "wrong", "recipe": "space", "params": {"kind": "W", "d": 4, "q": 3}, "expected": {"points": 41}},
      {"id": "right", "recipe": "space", "params": {"kind": "W", "d": 4, "q": 3}, "expected": {"points": 40}},
      {"id": "broken", "recipe": "space", "params": {"kind": "W", "d": 5, "q": 3}, "expected": {"points": 1}},
      {"id": "unknown", "recipe": "nope", "params": {}, "expected": {}}
    ])");
    const auto reports = run_targets(manifest, {1, false, true});
    REQUIRE(reports.size() == 4);
    CHECK_FALSE(reports[0].match);
    CHECK(reports[1].match);
    CHECK_FALSE(reports[2].match);
    CHECK(json::parse(reports[2].computed).contains("error"));
    CHECK_FALSE(reports[3].match);
    for (const auto& r : reports) CHECK(r.wall_time.has_value());
    const auto table = reports_table(reports);
    CHECK(table.find("1/4") != std::string::npos);
    std::size_t lines = 0;
    for (char c : reports_jsonl(reports)) lines += c == '\n';
    CHECK(lines == 4);
}

TEST_CASE("malformed manifests") {
    CHECK_THROWS_AS(parse_manifest("{"), InvalidArgument);
    CHECK_THROWS_AS(parse_manifest(R"([{"recipe": "space"}])"), InvalidArgument);
    CHECK_THROWS_AS(parse_manifest(R"([{"id": "x", "recipe": "space", "budget": "medium"}])"), InvalidArgument);
}
