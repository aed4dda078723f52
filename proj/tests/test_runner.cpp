#include <doctest.h>

#include <string>

#include "norden/cli/runner.hpp"

using namespace norden;
using nlohmann::json;

namespace {

std::string field_of(const json& j) {
  try {
    parse_manifest(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("manifest defaults") {
  Manifest m = parse_manifest(json{{"scene", "example_61"}});
  CHECK(m.n == 1);
  CHECK(m.points == 100);
  CHECK(m.seed == 42);
  CHECK(m.suites == known_suites());
  CHECK(m.tol.algebraic == 1e-12);
  CHECK(m.tol.differential == 1e-9);
  CHECK(m.tol.ricci == 1e-8);
  CHECK_FALSE(m.report.has_value());
  CHECK(parse_manifest(json{{"scene", "controls"}}).suites == std::vector<std::string>{"controls"});
}

TEST_CASE("suite lists keep declaration order and expand all once") {
  Manifest m = parse_manifest(json{{"scene", "example_62"}, {"suites", {"rtl", "frame", "rtl"}}});
  CHECK(m.suites == std::vector<std::string>{"rtl", "frame"});
  Manifest a = parse_manifest(json{{"scene", "example_62"}, {"suites", {"ricci", "all"}}});
  CHECK(a.suites.size() == known_suites().size());
  CHECK(a.suites.front() == "ricci");
  CHECK(parse_manifest(json{{"scene", "example_62"}, {"suites", "frame"}}).suites ==
        std::vector<std::string>{"frame"});
}

TEST_CASE("sampler object and flat keys") {
  Manifest m = parse_manifest(
      json{{"scene", "example_61"}, {"sampler", {{"count", 7}, {"seed", 3}, {"box", 2.5}, {"margin", 0.0}}}});
  CHECK(m.points == 7);
  CHECK(m.seed == 3);
  CHECK(m.box == 2.5);
  CHECK(m.margin == 0.0);
}

TEST_CASE("parse errors name the offending field") {
  CHECK(field_of(json::array()) == "");
  CHECK(field_of(json{{"suites", "frame"}}) == "scene");
  CHECK(field_of(json{{"scene", "example_63"}}) == "scene");
  CHECK(field_of(json{{"scene", "example_62"}, {"pionts", 3}}) == "pionts");
  CHECK(field_of(json{{"scene", "example_62"}, {"points", 0}}) == "points");
  CHECK(field_of(json{{"scene", "example_62"}, {"points", 2.5}}) == "points");
  CHECK(field_of(json{{"scene", "example_62"}, {"seed", -1}}) == "seed");
  CHECK(field_of(json{{"scene", "example_62"}, {"n", 0}}) == "n");
  CHECK(field_of(json{{"scene", "example_62"}, {"gauge", 0}}) == "gauge");
  CHECK(field_of(json{{"scene", "example_62"}, {"margin", -0.5}}) == "margin");
  CHECK(field_of(json{{"scene", "example_62"}, {"suites", {"thm51"}}}) == "suites");
  CHECK(field_of(json{{"scene", "example_62"}, {"suites", json::array()}}) == "suites");
  CHECK(field_of(json{{"scene", "example_62"}, {"suites", 3}}) == "suites");
  CHECK(field_of(json{{"scene", "example_62"}, {"tolerances", {{"differential", -1}}}}) == "tolerances.differential");
  CHECK(field_of(json{{"scene", "example_62"}, {"tolerances", {{"geometric", 1e-9}}}}) == "tolerances.geometric");
  CHECK(field_of(json{{"scene", "example_62"}, {"sampler", {{"count", 0}}}}) == "sampler.count");
  CHECK(field_of(json{{"scene", "example_62"}, {"sampler", {{"size", 5}}}}) == "sampler.size");
  CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.json"), ConfigError);
}

TEST_CASE("reports render byte-identically across runs") {
  Manifest m = parse_manifest(json{{"scene", "example_61"}, {"n", 2}, {"points", 15}, {"seed", 11}});
  std::string a = render_report(run_manifest(m));
  std::string b = render_report(run_manifest(m));
  CHECK(a == b);
  CHECK(a.find("wall") == std::string::npos);
  m.seed = 12;
  CHECK(render_report(run_manifest(m)) != a);
}

TEST_CASE("report document layout") {
  RunResult r = run_manifest(parse_manifest(json{{"scene", "example_62"}, {"suites", {"frame", "example"}}}));
  const auto& d = r.document;
  CHECK(d["engine"]["name"] == "norden");
  CHECK(d["engine"]["version"] == engine_version());
  CHECK(d["fingerprint"]["scene"] == "example_62");
  CHECK(d["fingerprint"]["mode"] == "exact");
  CHECK(d["fingerprint"]["suites"] == json{"frame", "example"});
  REQUIRE(d["checks"].is_array());
  CHECK(d["checks"].size() == r.report.checks().size());
  for (const auto& c : d["checks"]) {
    CHECK(c.contains("id"));
    CHECK(c["exact"] == true);
  }
  CHECK(d["summary"]["status"] == "pass");
  CHECK(r.exit_code == 0);
}

TEST_CASE("exit status follows failures") {
  Manifest m = parse_manifest(json{{"scene", "example_61"},
                                   {"suites", {"frame"}},
                                   {"points", 10},
                                   {"tolerances", {{"differential", 1e-30}}}});
  RunResult r = run_manifest(m);
  CHECK(r.exit_code == 1);
  CHECK(exit_status(r.report) == 1);
  CHECK(r.document["summary"]["status"] == "fail");
}

TEST_CASE("float-only and scene-bound suites skip with a reason") {
  RunResult r = run_manifest(parse_manifest(json{{"scene", "example_62"}, {"suites", {"relations"}}}));
  REQUIRE(r.report.find("relations.mode") != nullptr);
  CHECK(r.report.find("relations.mode")->status == Status::Skipped);
  RunResult c = run_manifest(parse_manifest(json{{"scene", "controls"}, {"suites", {"controls", "frame"}}, {"points", 5}}));
  REQUIRE(c.report.find("frame.scene") != nullptr);
  CHECK(c.report.find("frame.scene")->status == Status::Skipped);
  CHECK(c.exit_code == 0);
}
