// Command-line front end: bounded test search, brute-force bug finding,
// claim checking and model description over processor configs.
//
// Exit codes: 0 = clean/pass, 1 = failing test, bug or violated claim,
// 2 = usage or configuration problem, 3 = a budget cut the run short
// before anything conclusive turned up.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqed/config.hpp"
#include "sqed/errors.hpp"
#include "sqed/laws.hpp"
#include "sqed/report.hpp"
#include "sqed/search.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;

struct CommonOpts {
  std::string config;
  bool json = false;
  unsigned jobs = 1;
  std::size_t max_states = sqed::Budget{}.max_states;
  std::size_t max_tests = sqed::Budget{}.max_tests;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_config = true) {
  if (with_config)
    cmd->add_option("-c,--config", o.config,
                    "built-in system name or config file path")
        ->required();
  cmd->add_flag("--json", o.json, "machine-readable report on stdout");
  cmd->add_option("-j,--jobs", o.jobs, "worker threads (results are identical)")
      ->check(CLI::Range(1u, 256u));
  cmd->add_option("--max-states", o.max_states, "state exploration budget");
  cmd->add_option("--max-tests", o.max_tests, "test execution budget");
}

struct CheckOpts {
  CommonOpts common;
  std::uint32_t bound = 0;  // 0 = keep the config's
  std::vector<std::string> families;
  std::uint32_t max_insertions = static_cast<std::uint32_t>(-1);
  std::string init_kind;
  std::size_t init_count = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

// Config search defaults, overridden by whatever flags were given.
void apply_overrides(sqed::ProcessorConfig& cfg, const CheckOpts& o) {
  if (o.bound) cfg.search.bound = o.bound;
  if (!o.families.empty()) {
    cfg.search.families.clear();
    for (const std::string& f : o.families) {
      auto fam = sqed::family_from_name(f);
      if (!fam) throw sqed::ConfigError("unknown test family \"" + f + "\"");
      cfg.search.families.push_back(*fam);
    }
  }
  if (o.max_insertions != static_cast<std::uint32_t>(-1))
    cfg.search.max_insertions = o.max_insertions;
  if (!o.init_kind.empty()) {
    if (o.init_kind == "exhaustive")
      cfg.search.inits.kind = sqed::InitEnum::Kind::Exhaustive;
    else if (o.init_kind == "zero")
      cfg.search.inits.kind = sqed::InitEnum::Kind::ZeroOnly;
    else if (o.init_kind == "sample")
      cfg.search.inits.kind = sqed::InitEnum::Kind::Sample;
    else
      throw sqed::ConfigError("unknown init kind \"" + o.init_kind + "\"");
  }
  if (o.init_count) cfg.search.inits.count = o.init_count;
  if (o.seed_set) cfg.search.inits.seed = o.seed;
}

int run_check(const CheckOpts& o) {
  sqed::ProcessorConfig cfg = sqed::resolve_config(o.common.config);
  apply_overrides(cfg, o);
  sqed::BuiltSystem bs = sqed::build_system(cfg);

  sqed::SearchConfig sc;
  sc.bound = bs.config.search.bound;
  sc.families = bs.config.search.families;
  sc.alphabet = bs.config.search.alphabet;
  sc.inits = bs.config.search.inits;
  sc.max_insertions = bs.config.search.max_insertions;
  sc.budget = sqed::Budget{o.common.max_states, o.common.max_tests};
  sc.jobs = o.common.jobs;
  sqed::SearchResult res = sqed::bmc_search(bs.sys, bs.dup, sc);

  sqed::RunManifest m = sqed::manifest_for("check", bs.config, bs.sys);
  m.max_states = sc.budget.max_states;
  m.max_tests = sc.budget.max_tests;
  if (o.common.json)
    std::cout << sqed::search_report_json(bs.sys, res, m);
  else
    std::cout << sqed::search_report_text(bs.sys, res);
  if (res.failure) return kExitCounterexample;
  return res.complete ? kExitClean : kExitIncomplete;
}

struct OracleOpts {
  CommonOpts common;
  std::uint32_t depth = 2;
  std::string init_kind;
  std::size_t init_count = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_oracle(const OracleOpts& o) {
  sqed::ProcessorConfig cfg = sqed::resolve_config(o.common.config);
  if (!o.init_kind.empty() || o.init_count || o.seed_set) {
    CheckOpts shim;
    shim.init_kind = o.init_kind;
    shim.init_count = o.init_count;
    shim.seed = o.seed;
    shim.seed_set = o.seed_set;
    apply_overrides(cfg, shim);
  }
  sqed::BuiltSystem bs = sqed::build_system(cfg);

  std::vector<sqed::State> inits =
      sqed::enumerate_inits(bs.sys, bs.config.search.inits);
  sqed::Budget budget{o.common.max_states, o.common.max_tests};
  sqed::OracleResult res =
      sqed::find_bugs(bs.sys, bs.spec, inits, o.depth,
                      bs.config.search.alphabet, budget, o.common.jobs);

  sqed::RunManifest m = sqed::manifest_for("oracle", bs.config, bs.sys);
  m.bound = 0;
  m.depth = o.depth;
  m.families.clear();
  m.max_insertions = 0;
  m.max_states = budget.max_states;
  m.max_tests = budget.max_tests;
  if (o.common.json)
    std::cout << sqed::oracle_report_json(bs.sys, res, m);
  else
    std::cout << sqed::oracle_report_text(bs.sys, res);
  if (!res.bugs.empty()) return kExitCounterexample;
  return res.complete ? kExitClean : kExitIncomplete;
}

struct LawsOpts {
  CommonOpts common;
  std::vector<std::string> configs;
  std::vector<std::string> laws;
  sqed::LawBudget budget;
};

int run_laws(const LawsOpts& o) {
  std::vector<sqed::BuiltSystem> corpus;
  std::vector<std::string> names;
  if (o.configs.empty()) {
    for (const auto& cfg : sqed::builtin_corpus()) {
      corpus.push_back(sqed::build_system(cfg));
      names.push_back(cfg.name);
    }
  } else {
    for (const std::string& c : o.configs) {
      corpus.push_back(sqed::build_system(sqed::resolve_config(c)));
      names.push_back(corpus.back().config.name);
    }
  }

  std::vector<sqed::LawId> ids;
  if (o.laws.empty()) {
    ids = sqed::all_laws();
  } else {
    for (const std::string& l : o.laws) {
      auto id = sqed::law_from_name(l);
      if (!id) throw sqed::ConfigError("unknown law \"" + l + "\"");
      ids.push_back(*id);
    }
  }

  sqed::LawBudget budget = o.budget;
  budget.max_states = o.common.max_states;
  budget.max_tests = o.common.max_tests;
  budget.jobs = o.common.jobs;

  std::vector<sqed::LawReport> reports;
  for (sqed::LawId id : ids)
    reports.push_back(sqed::check_law(id, corpus, budget));

  sqed::RunManifest m;
  m.command = "laws";
  {
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : ",") + n;
    m.system = joined;
  }
  m.init_kind = "per-system";
  m.max_states = budget.max_states;
  m.max_tests = budget.max_tests;
  if (o.common.json)
    std::cout << sqed::laws_report_json(reports, m);
  else
    std::cout << sqed::laws_report_text(reports);

  bool pass = true, complete = true;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    complete = complete && r.complete;
  }
  if (!pass) return kExitCounterexample;
  return complete ? kExitClean : kExitIncomplete;
}

int run_describe(const CommonOpts& o) {
  sqed::ProcessorConfig cfg = sqed::resolve_config(o.config);
  sqed::BuiltSystem bs = sqed::build_system(cfg);
  if (o.json) {
    std::cout << sqed::config_to_json(bs.config);
    return kExitClean;
  }
  std::cout << bs.sys.name() << ": " << bs.sys.values() << " values, "
            << bs.sys.locations() << " locations, "
            << bs.sys.narch_count() << " window states\n";
  std::cout << "opcodes:";
  for (const auto& info : bs.sys.opcodes()) std::cout << " " << info.name;
  std::cout << "\n";
  std::cout << "originals:";
  for (auto l : bs.dup.originals())
    std::cout << " l" << l << "->l" << bs.dup.dup_of(l);
  std::cout << "\n";
  std::cout << "regular instructions: " << sqed::regular_alphabet(bs.sys).size()
            << ", original side: "
            << sqed::original_alphabet(bs.sys, bs.dup).size()
            << ", insertions: " << sqed::nop_alphabet(bs.sys).size() << "\n";
  std::cout << "declared bugs: " << bs.config.bugs.size() << "\n";
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded search for self-checking processor tests"};
  app.require_subcommand(1);

  CheckOpts check;
  CLI::App* c = app.add_subcommand("check", "hunt for a failing test");
  add_common(c, check.common);
  c->add_option("-b,--bound", check.bound, "length cap for the original half");
  c->add_option("-f,--family", check.families,
                "test family (standard, extended, interleaved, softreset, "
                "hardreset); repeatable");
  c->add_option("--max-insertions", check.max_insertions,
                "extra no-change instructions in extended tests");
  c->add_option("--init-kind", check.init_kind,
                "initial states: exhaustive, zero or sample");
  c->add_option("--init-count", check.init_count, "sample size");
  c->add_option("--seed", check.seed, "sample seed")
      ->each([&check](const std::string&) { check.seed_set = true; });

  OracleOpts oracle;
  CLI::App* d = app.add_subcommand(
      "oracle", "brute-force contract check over reachable states");
  add_common(d, oracle.common);
  d->add_option("-d,--depth", oracle.depth, "reachability depth");
  d->add_option("--init-kind", oracle.init_kind,
                "initial states: exhaustive, zero or sample");
  d->add_option("--init-count", oracle.init_count, "sample size");
  d->add_option("--seed", oracle.seed, "sample seed")
      ->each([&oracle](const std::string&) { oracle.seed_set = true; });

  LawsOpts laws;
  CLI::App* l =
      app.add_subcommand("laws", "check the theory's claims on a corpus");
  add_common(l, laws.common, false);
  l->add_option("-c,--config", laws.configs,
                "corpus member (name or path); repeatable, default all "
                "built-ins");
  l->add_option("--law", laws.laws, "claim to check; repeatable, default all");
  l->add_option("--reach-depth", laws.budget.reach_depth,
                "state sweep depth for frame and congruence checks");
  l->add_option("--test-bound", laws.budget.test_bound,
                "standard-test length cap");
  l->add_option("--oracle-depth", laws.budget.oracle_depth,
                "bug search depth");
  l->add_option("--hard-reset-bound", laws.budget.hard_reset_bound,
                "bug-prefix cap for the reset equivalence");
  l->add_option("--connector-depth", laws.budget.connector_depth,
                "connector search depth for targeted tests");

  CommonOpts describe;
  CLI::App* s = app.add_subcommand("describe", "print a model summary");
  add_common(s, describe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c) return run_check(check);
    if (*d) return run_oracle(oracle);
    if (*l) return run_laws(laws);
    if (*s) return run_describe(describe);
  } catch (const sqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sqed::ResourceError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitIncomplete;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
