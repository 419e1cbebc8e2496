#include "sqed/report.hpp"

#include <sstream>

#include <json.hpp>

namespace sqed {

namespace {

using ojson = nlohmann::ordered_json;

const char* init_kind_string(InitEnum::Kind k) {
  switch (k) {
    case InitEnum::Kind::Exhaustive:
      return "exhaustive";
    case InitEnum::Kind::ZeroOnly:
      return "zero";
    case InitEnum::Kind::Sample:
      return "sample";
  }
  return "?";
}

ojson manifest_json(const RunManifest& m) {
  ojson o;
  o["command"] = m.command;
  o["system"] = m.system;
  if (m.bound) o["bound"] = m.bound;
  if (m.command == "oracle") o["depth"] = m.depth;
  if (!m.families.empty()) o["families"] = m.families;
  o["alphabet"] = m.alphabet.empty() ? ojson("all") : ojson(m.alphabet);
  ojson in;
  in["kind"] = m.init_kind;
  if (m.init_kind == "sample") {
    in["count"] = m.init_count;
    in["seed"] = m.init_seed;
  }
  o["inits"] = std::move(in);
  if (m.max_insertions) o["max_insertions"] = m.max_insertions;
  ojson budget;
  budget["max_states"] = m.max_states;
  budget["max_tests"] = m.max_tests;
  o["budget"] = std::move(budget);
  return o;
}

ojson state_json(const State& s) {
  ojson o;
  o["arch"] = s.arch;
  o["narch"] = s.narch;
  return o;
}

ojson instr_list(const TransitionSystem& sys, const InstrSeq& seq) {
  ojson arr = ojson::array();
  for (const Instruction& i : seq) arr.push_back(sys.instr_to_string(i));
  return arr;
}

ojson verdict_json(const Verdict& v) {
  ojson o;
  o["pass"] = v.pass;
  ojson mm = ojson::array();
  for (const auto& [a, b] : v.mismatches) mm.push_back(ojson::array({a, b}));
  o["mismatches"] = std::move(mm);
  if (v.witness)
    o["witness"] = ojson::array({v.witness->first, v.witness->second});
  return o;
}

std::string render(const ojson& o) { return o.dump(2) + "\n"; }

}  // namespace

RunManifest manifest_for(const std::string& command,
                         const ProcessorConfig& cfg,
                         const TransitionSystem& sys) {
  RunManifest m;
  m.command = command;
  m.system = cfg.name;
  m.bound = cfg.search.bound;
  for (TestFamily f : cfg.search.families)
    m.families.push_back(family_name(f));
  for (const Instruction& i : cfg.search.alphabet)
    m.alphabet.push_back(sys.instr_to_string(i));
  m.init_kind = init_kind_string(cfg.search.inits.kind);
  m.init_count = cfg.search.inits.count;
  m.init_seed = cfg.search.inits.seed;
  m.max_insertions = cfg.search.max_insertions;
  Budget b;
  m.max_states = b.max_states;
  m.max_tests = b.max_tests;
  return m;
}

std::string search_report_json(const TransitionSystem& sys,
                               const SearchResult& res,
                               const RunManifest& manifest) {
  ojson o;
  o["manifest"] = manifest_json(manifest);
  o["failure"] = res.failure;
  o["complete"] = res.complete;
  ojson stats;
  stats["tests_executed"] = res.stats.tests_executed;
  stats["states_visited"] = res.stats.states_visited;
  stats["initial_states"] = res.stats.inits;
  o["stats"] = std::move(stats);
  if (res.failure) {
    ojson t;
    t["family"] = family_name(res.test.family);
    t["length"] = res.test.instrs.size();
    t["instructions"] = instr_list(sys, res.test.instrs);
    if (res.test.meta.k) t["k"] = res.test.meta.k;
    if (res.test.meta.case_kind)
      t["case"] = std::string(1, res.test.meta.case_kind);
    if (res.test.meta.expect)
      t["expect"] = ojson::array(
          {res.test.meta.expect->first, res.test.meta.expect->second});
    if (!res.test.meta.note.empty()) t["note"] = res.test.meta.note;
    o["test"] = std::move(t);
    o["verdict"] = verdict_json(res.verdict);
    o["init"] = state_json(res.init);
  }
  return render(o);
}

std::string oracle_report_json(const TransitionSystem& sys,
                               const OracleResult& res,
                               const RunManifest& manifest) {
  ojson o;
  o["manifest"] = manifest_json(manifest);
  o["buggy"] = !res.bugs.empty();
  o["complete"] = res.complete;
  ojson stats;
  stats["states_visited"] = res.states_visited;
  stats["checks"] = res.checks;
  o["stats"] = std::move(stats);
  ojson bugs = ojson::array();
  for (const Bug& b : res.bugs) {
    ojson e;
    e["instruction"] = sys.instr_to_string(b.instr);
    e["trigger_count"] = b.triggers.size();
    if (!b.triggers.empty()) e["first_trigger"] = state_json(b.triggers.front());
    bugs.push_back(std::move(e));
  }
  o["bugs"] = std::move(bugs);
  return render(o);
}

std::string laws_report_json(const std::vector<LawReport>& reports,
                             const RunManifest& manifest) {
  ojson o;
  o["manifest"] = manifest_json(manifest);
  bool all = true;
  ojson arr = ojson::array();
  for (const LawReport& r : reports) {
    all = all && r.pass;
    ojson e;
    e["law"] = law_name(r.law);
    e["statement"] = r.statement;
    e["pass"] = r.pass;
    e["complete"] = r.complete;
    e["systems"] = r.systems;
    e["instances"] = r.instances;
    e["violations"] = r.violations;
    e["notes"] = r.notes;
    arr.push_back(std::move(e));
  }
  o["pass"] = all;
  o["laws"] = std::move(arr);
  return render(o);
}

std::string search_report_text(const TransitionSystem& sys,
                               const SearchResult& res) {
  std::ostringstream os;
  if (!res.failure) {
    os << "no failing test";
    if (!res.complete) os << " (budget cut the search short)";
    os << "; " << res.stats.tests_executed << " runs over "
       << res.stats.inits << " initial states\n";
    return os.str();
  }
  os << "FAIL " << family_name(res.test.family) << " length "
     << res.test.instrs.size() << ": " << sys.seq_to_string(res.test.instrs)
     << "\n";
  if (res.verdict.witness)
    os << "  disagreement l" << res.verdict.witness->first << " vs l"
       << res.verdict.witness->second << " after " << res.stats.tests_executed
       << " runs\n";
  os << "  from " << res.init.arch.size() << "-location state [";
  for (std::size_t i = 0; i < res.init.arch.size(); ++i)
    os << (i ? " " : "") << res.init.arch[i];
  os << "]\n";
  return os.str();
}

std::string oracle_report_text(const TransitionSystem& sys,
                               const OracleResult& res) {
  std::ostringstream os;
  if (res.bugs.empty()) {
    os << "no contract violation";
    if (!res.complete) os << " (budget cut exploration short)";
    os << "; " << res.checks << " checks over " << res.states_visited
       << " states\n";
    return os.str();
  }
  os << res.bugs.size() << " violating instruction(s); first: "
     << sys.instr_to_string(res.bugs.front().instr) << " with "
     << res.bugs.front().triggers.size() << " trigger state(s)\n";
  return os.str();
}

std::string laws_report_text(const std::vector<LawReport>& reports) {
  std::ostringstream os;
  for (const LawReport& r : reports) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << law_name(r.law) << ": "
       << r.statement << " (" << r.instances << " checks, " << r.systems
       << " systems)\n";
    for (const auto& v : r.violations) os << "       ! " << v << "\n";
    for (const auto& n : r.notes) os << "       - " << n << "\n";
  }
  return os.str();
}

}  // namespace sqed
