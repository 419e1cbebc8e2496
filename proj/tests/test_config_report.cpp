#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>
#include <sqed/config.hpp>
#include <sqed/errors.hpp>
#include <sqed/report.hpp>
#include <sqed/search.hpp>
#include <sqed/zoo.hpp>

using namespace sqed;
using njson = nlohmann::json;

namespace {

std::string minimal_json(const std::string& tweak = "") {
  std::string base = R"({
    "schema": 1,
    "name": "m",
    "values": 4,
    "locations": 4,
    "opcodes": [{"name": "ADD", "expr": "a + b"}]
  })";
  if (tweak.empty()) return base;
  njson j = njson::parse(base);
  njson t = njson::parse(tweak);
  for (auto& [k, v] : t.items()) j[k] = v;
  return j.dump();
}

}  // namespace

TEST_CASE("serialized declarations round-trip byte for byte") {
  for (const std::string& name : builtin_names()) {
    CAPTURE(name);
    ProcessorConfig cfg = build_system(builtin_config(name)).config;
    std::string once = config_to_json(cfg);
    ProcessorConfig back = config_from_json(once);
    CHECK(config_to_json(back) == once);
    CHECK(build_system(back).sys.name() == name);
  }
}

TEST_CASE("a minimal declaration parses with documented defaults") {
  ProcessorConfig c = config_from_json(minimal_json());
  CHECK(c.name == "m");
  CHECK(c.values == 4);
  CHECK(c.history == 1);
  CHECK_FALSE(c.soft_reset);
  CHECK(c.dup_originals.empty());  // low-half split by default
  CHECK(c.search.bound == 2);
  CHECK(c.search.inits.kind == InitEnum::Kind::Exhaustive);
  auto b = build_system(c);
  CHECK(b.dup.dup_of(0) == 2);
}

TEST_CASE("malformed declarations are rejected with context") {
  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(config_from_json(minimal_json(R"({"schema": 2})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(minimal_json(R"({"surprise": true})")),
                  ConfigError);
  CHECK_THROWS_AS(
      config_from_json(minimal_json(
          R"({"opcodes": [{"name": "A", "role": "vector", "expr": "a"}]})")),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(minimal_json(
          R"({"search": {"families": ["standard", "diagonal"]}})")),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(minimal_json(
          R"({"search": {"inits": {"kind": "psychic"}}})")),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(minimal_json(
          R"({"search": {"alphabet": [{"opcode": "XOR", "out": 0, "in1": 0, "in2": 0}]}})")),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json(minimal_json(
          R"({"duplication": {"originals": [0, 1], "duplicates": [2]}})")),
      ConfigError);

  // missing name
  CHECK_THROWS_AS(config_from_json(R"({
    "schema": 1, "values": 4, "locations": 4,
    "opcodes": [{"name": "ADD", "expr": "a + b"}]
  })"),
                  ConfigError);
}

TEST_CASE("file loading names the offender") {
  try {
    load_config_file("/nonexistent/q.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/q.json") !=
          std::string::npos);
  }

  std::string path = "/tmp/sqed_cfg_roundtrip.json";
  {
    std::ofstream out(path);
    out << config_to_json(builtin_config("tiny2"));
  }
  ProcessorConfig c = load_config_file(path);
  CHECK(c.name == "tiny2");
  std::remove(path.c_str());
}

TEST_CASE("builtin names resolve before file paths") {
  CHECK(resolve_config("mulmul4").name == "mulmul4");
  CHECK_THROWS_AS(resolve_config("definitely-not-a-system"), ConfigError);
}

TEST_CASE("search reports are deterministic and fully structured") {
  auto b = build_system(builtin_config("mulmul4"));
  SearchConfig sc;
  sc.bound = 2;
  sc.families = {TestFamily::Standard};
  SearchResult res = bmc_search(b.sys, b.dup, sc);
  RunManifest m = manifest_for("check", b.config, b.sys);

  std::string r1 = search_report_json(b.sys, res, m);
  std::string r2 = search_report_json(b.sys, res, m);
  CHECK(r1 == r2);

  njson j = njson::parse(r1);
  CHECK(j["manifest"]["command"] == "check");
  CHECK(j["manifest"]["system"] == "mulmul4");
  CHECK(j["failure"] == true);
  CHECK(j["stats"]["tests_executed"] == 129);
  CHECK(j["test"]["family"] == "standard");
  CHECK(j["test"]["length"] == 2);
  CHECK(j["verdict"]["pass"] == false);
  CHECK(j["verdict"]["witness"] == njson::array({0, 2}));
  CHECK(j["init"]["arch"] == njson::array({0, 0, 0, 0}));

  // outcome-irrelevant facts stay out of the bytes
  CHECK(r1.find("jobs") == std::string::npos);
  CHECK(r1.find("wall") == std::string::npos);
  CHECK(r1.find("time") == std::string::npos);
}

TEST_CASE("oracle reports carry the verdict and the first trigger") {
  auto b = build_system(builtin_config("mulmul4"));
  auto inits = enumerate_inits(b.sys, InitEnum{});
  OracleResult res = find_bugs(b.sys, b.spec, inits, 2);
  RunManifest m = manifest_for("oracle", b.config, b.sys);
  m.depth = 2;
  njson j = njson::parse(oracle_report_json(b.sys, res, m));
  CHECK(j["buggy"] == true);
  CHECK(j["manifest"]["depth"] == 2);
  CHECK(j["bugs"].size() == 64);
  CHECK(j["bugs"][0]["trigger_count"] == 256);
  CHECK(j["bugs"][0].contains("first_trigger"));
}

TEST_CASE("law reports aggregate pass over every entry") {
  std::vector<LawReport> reps(2);
  reps[0].law = LawId::Eq2;
  reps[0].statement = "first";
  reps[1].law = LawId::Eq3;
  reps[1].statement = "second";
  reps[1].pass = false;
  reps[1].violations = {"it broke"};
  RunManifest m;
  m.command = "laws";
  m.system = "x";
  njson j = njson::parse(laws_report_json(reps, m));
  CHECK(j["pass"] == false);
  REQUIRE(j["laws"].size() == 2);
  CHECK(j["laws"][0]["pass"] == true);
  CHECK(j["laws"][1]["violations"][0] == "it broke");

  std::string text = laws_report_text(reps);
  CHECK(text.find("[PASS] eq2") != std::string::npos);
  CHECK(text.find("[FAIL] eq3") != std::string::npos);
  CHECK(text.find("! it broke") != std::string::npos);
}

TEST_CASE("human search summaries name the disagreement") {
  auto b = build_system(builtin_config("mulmul4"));
  SearchConfig sc;
  sc.bound = 2;
  sc.families = {TestFamily::Standard};
  SearchResult res = bmc_search(b.sys, b.dup, sc);
  std::string text = search_report_text(b.sys, res);
  CHECK(text.find("FAIL standard length 2") != std::string::npos);
  CHECK(text.find("l0 vs l2") != std::string::npos);

  auto clean = build_system(builtin_config("toy4"));
  SearchResult ok = bmc_search(clean.sys, clean.dup, sc);
  CHECK(search_report_text(clean.sys, ok).find("no failing test") !=
        std::string::npos);
}
