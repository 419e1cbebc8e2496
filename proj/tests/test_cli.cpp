#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

using njson = nlohmann::json;

namespace {

std::string g_cli;
std::string g_configs;

struct RunOutput {
  int exit_code = -1;
  std::string out;
};

// Runs the command-line tool with stderr folded into stdout.
RunOutput run(const std::string& args) {
  RunOutput r;
  std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("describe prints the declaration") {
  RunOutput text = run("describe -c toy4");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("toy4") != std::string::npos);

  RunOutput js = run("describe -c toy4 --json");
  CHECK(js.exit_code == 0);
  njson j = njson::parse(js.out);
  CHECK(j["name"] == "toy4");
  CHECK(j["schema"] == 1);
  CHECK(j["opcodes"].size() == 3);  // reset roles live in the two flags
  CHECK(j["soft_reset"] == true);
}

TEST_CASE("describe reads declaration files as well as builtin names") {
  RunOutput r = run("describe -c " + g_configs + "/badspec4.json --json");
  CHECK(r.exit_code == 0);
  CHECK(njson::parse(r.out)["name"] == "badspec4");
}

TEST_CASE("a clean system exits zero from check") {
  RunOutput r = run("check -c toy4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("no failing test") != std::string::npos);
}

TEST_CASE("a found counterexample exits one and is printed") {
  RunOutput r = run("check -c mulmul4");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);

  RunOutput js = run("check -c mulmul4 --json");
  CHECK(js.exit_code == 1);
  njson j = njson::parse(js.out);
  CHECK(j["failure"] == true);
  CHECK(j["test"]["length"] == 2);
  CHECK(j["verdict"]["witness"] == njson::array({0, 2}));
}

TEST_CASE("check options reshape the search") {
  // single-family restriction and an explicit bound
  RunOutput r = run("check -c mulmul4 -f softreset -b 2 --json");
  CHECK(r.exit_code == 1);
  njson j = njson::parse(r.out);
  CHECK(j["test"]["family"] == "softreset");
  CHECK(j["test"]["k"] == 2);
  CHECK(j["manifest"]["families"] == njson::array({"softreset"}));

  // sampled initial states show up in the manifest
  RunOutput s = run("check -c toy4 --init-kind sample --init-count 3 --seed 9 --json");
  CHECK(s.exit_code == 0);
  njson sj = njson::parse(s.out);
  CHECK(sj["manifest"]["inits"]["kind"] == "sample");
  CHECK(sj["manifest"]["inits"]["count"] == 3);
  CHECK(sj["manifest"]["inits"]["seed"] == 9);
}

TEST_CASE("identical requests produce identical bytes whatever the job count") {
  for (const char* sys : {"toy4", "mulmul4", "tiny2x"}) {
    CAPTURE(sys);
    RunOutput a = run(std::string("check -c ") + sys + " --json -j 1");
    RunOutput b = run(std::string("check -c ") + sys + " --json -j 4");
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("the oracle reports contract violations directly") {
  RunOutput clean = run("oracle -c toy4 -d 2");
  CHECK(clean.exit_code == 0);
  CHECK(clean.out.find("no contract violation") != std::string::npos);

  RunOutput buggy = run("oracle -c mulmul4 -d 2 --json");
  CHECK(buggy.exit_code == 1);
  njson j = njson::parse(buggy.out);
  CHECK(j["buggy"] == true);
  CHECK(j["manifest"]["depth"] == 2);
  CHECK(j["bugs"].size() == 64);
}

TEST_CASE("laws run over the corpus and exit by verdict") {
  RunOutput one = run("laws --law cor1");
  CHECK(one.exit_code == 0);
  CHECK(one.out.find("[PASS] cor1") != std::string::npos);

  RunOutput bad = run("laws -c " + g_configs + "/badspec4.json --law lemma2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("[FAIL] lemma2") != std::string::npos);

  RunOutput js = run("laws --law eq4 --law cor1 --json");
  CHECK(js.exit_code == 0);
  njson j = njson::parse(js.out);
  CHECK(j["pass"] == true);
  REQUIRE(j["laws"].size() == 2);
  CHECK(j["laws"][0]["law"] == "eq4");
  CHECK(j["laws"][1]["law"] == "cor1");
}

TEST_CASE("usage problems exit two") {
  CHECK(run("check").exit_code == 2);                  // missing -c
  CHECK(run("check -c /missing.json").exit_code == 2); // unreadable file
  CHECK(run("frobnicate").exit_code == 2);             // unknown command
  CHECK(run("check -c toy4 -f diagonal").exit_code == 2);
  CHECK(run("laws --law lemma9").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
  CHECK(run("check --help").exit_code == 0);
}

int main(int argc, char** argv) {
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) {
      g_cli = argv[++i];
    } else if (std::strcmp(argv[i], "--configs") == 0 && i + 1 < argc) {
      g_configs = argv[++i];
    } else {
      rest.push_back(argv[i]);
    }
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli --cli <binary> --configs <dir>\n");
    return 2;
  }
  doctest::Context ctx;
  ctx.applyCommandLine(static_cast<int>(rest.size()), rest.data());
  return ctx.run();
}
