#include "sqed/laws.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sqed/errors.hpp"
#include "sqed/oracle.hpp"
#include "sqed/search.hpp"

namespace sqed {

const char* law_name(LawId id) {
  switch (id) {
    case LawId::Eq2:
      return "eq2";
    case LawId::Eq3:
      return "eq3";
    case LawId::Eq4:
      return "eq4";
    case LawId::Cor1:
      return "cor1";
    case LawId::Lemma1:
      return "lemma1";
    case LawId::Lemma2:
      return "lemma2";
    case LawId::Prop1:
      return "prop1";
    case LawId::Lemma3:
      return "lemma3";
    case LawId::Lemma4A:
      return "lemma4a";
    case LawId::Lemma4B:
      return "lemma4b";
    case LawId::Lemma5:
      return "lemma5";
    case LawId::Thm1:
      return "thm1";
    case LawId::Thm2:
      return "thm2";
  }
  return "?";
}

const char* law_statement(LawId id) {
  switch (id) {
    case LawId::Eq2:
      return "conforming original instructions leave duplicate locations untouched";
    case LawId::Eq3:
      return "conforming duplicate instructions leave original locations untouched";
    case LawId::Eq4:
      return "conforming runs of one opcode compute one function of the operand values";
    case LawId::Cor1:
      return "an instruction and its duplicate compute the same opcode function";
    case LawId::Lemma1:
      return "mirrored states stay mirrored across an original/duplicate instruction pair";
    case LawId::Lemma2:
      return "on a conforming machine every standard test from a consistent start ends consistent";
    case LawId::Prop1:
      return "the bug finder and the direct conformance sweep agree";
    case LawId::Lemma3:
      return "every failing test exhibits a contract violation on its own trace";
    case LawId::Lemma4A:
      return "a duplicate-side wrong-value bug admits a targeted failing test";
    case LawId::Lemma4B:
      return "a duplicate-side clobbering bug admits a targeted failing test";
    case LawId::Lemma5:
      return "a soft-reset test built on a minimal bug prefix fails";
    case LawId::Thm1:
      return "failing tests are sound, and covered bugs admit failing tests";
    case LawId::Thm2:
      return "single-instruction correctness plus passing hard-reset tests equals bounded correctness";
  }
  return "?";
}

std::optional<LawId> law_from_name(const std::string& name) {
  for (LawId id : all_laws())
    if (name == law_name(id)) return id;
  return std::nullopt;
}

std::vector<LawId> all_laws() {
  return {LawId::Eq2,    LawId::Eq3,    LawId::Eq4,     LawId::Cor1,
          LawId::Lemma1, LawId::Lemma2, LawId::Prop1,   LawId::Lemma3,
          LawId::Lemma4A, LawId::Lemma4B, LawId::Lemma5, LawId::Thm1,
          LawId::Thm2};
}

namespace {

constexpr std::size_t kMaxViolationMessages = 16;

void violate(LawReport& rep, const std::string& msg) {
  rep.pass = false;
  if (rep.violations.size() >= kMaxViolationMessages) return;
  if (std::find(rep.violations.begin(), rep.violations.end(), msg) !=
      rep.violations.end())
    return;
  rep.violations.push_back(msg);
}

void note(LawReport& rep, const std::string& msg) { rep.notes.push_back(msg); }

std::string state_str(const State& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.arch.size(); ++i)
    os << (i ? " " : "") << s.arch[i];
  os << " |" << s.narch << "]";
  return os.str();
}

// True when exhaustive enumeration of `digits` positions over `base` values
// stays under `cap`.
bool small_space(std::uint64_t base, std::uint32_t digits, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < digits; ++i) {
    total *= base;
    if (total > cap) return false;
  }
  return true;
}

// Shared per-system material: a tractable regular alphabet split by side,
// plus initial-state pools. Big systems fall back to their configured
// search alphabet and to seeded samples, which the report notes.
struct LawCtx {
  InstrSeq originals;
  InstrSeq duplicates;
  InstrSeq regulars;       // side-pure: originals plus their images
  InstrSeq machine_instrs; // everything regular, mixed-side included
  std::vector<State> raw_inits;
  std::vector<State> cons_inits;
  InitEnum cons_how;  // enumeration used for cons_inits, for reuse downstream
  bool restricted = false;
};

LawCtx make_ctx(const BuiltSystem& bs) {
  LawCtx c;
  InstrSeq full = regular_alphabet(bs.sys);
  if (full.size() <= 4096) {
    c.originals = original_alphabet(bs.sys, bs.dup);
  } else {
    c.originals = bs.config.search.alphabet;
    c.restricted = true;
  }
  c.duplicates = dup_seq(bs.dup, c.originals);
  c.regulars = c.originals;
  c.regulars.insert(c.regulars.end(), c.duplicates.begin(), c.duplicates.end());
  std::sort(c.regulars.begin(), c.regulars.end());
  c.machine_instrs = c.restricted ? c.regulars : std::move(full);

  InitEnum raw_how;
  if (!small_space(bs.sys.values(), bs.sys.locations(), 4096))
    raw_how = InitEnum{InitEnum::Kind::Sample, 4, 11};
  c.raw_inits = enumerate_inits(bs.sys, raw_how);

  if (!small_space(bs.sys.values(), bs.sys.locations() / 2, 4096)) {
    c.cons_how = bs.config.search.inits;
    if (c.cons_how.kind != InitEnum::Kind::Sample)
      c.cons_how = InitEnum{InitEnum::Kind::Sample, 4, 7};
  }
  c.cons_inits = enumerate_consistent_inits(bs.sys, bs.dup, c.cons_how);
  return c;
}

// States reachable from the context's raw initial pool under its regular
// alphabet. Used by the frame/congruence sweeps.
std::vector<State> ctx_states(const BuiltSystem& bs, const LawCtx& c,
                              const LawBudget& b, LawReport& rep) {
  Reach r = reach_bfs(bs.sys, c.raw_inits, c.regulars, b.reach_depth,
                      b.max_states);
  if (!r.complete) {
    rep.complete = false;
    note(rep, bs.sys.name() + ": state sweep cut off at " +
                  std::to_string(r.nodes.size()) + " states");
  }
  std::vector<State> out;
  out.reserve(r.nodes.size());
  for (auto& n : r.nodes) out.push_back(n.state);
  return out;
}

void check_frame_side(LawId id, const std::vector<BuiltSystem>& corpus,
                      const LawBudget& b, LawReport& rep) {
  const bool original_side = id == LawId::Eq2;
  for (const auto& bs : corpus) {
    LawCtx c = make_ctx(bs);
    if (c.originals.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    if (c.restricted)
      note(rep, bs.sys.name() + ": restricted to the configured alphabet");
    ++rep.systems;
    const InstrSeq& side = original_side ? c.originals : c.duplicates;
    for (const State& s : ctx_states(bs, c, b, rep)) {
      for (const Instruction& i : side) {
        State s2 = bs.sys.step(s, i);
        if (!spec_holds(bs.spec, bs.sys, s, i, s2)) continue;
        ++rep.instances;
        for (Location o : bs.dup.originals()) {
          Location guarded = original_side ? bs.dup.dup_of(o) : o;
          if (s.arch[guarded] != s2.arch[guarded])
            violate(rep, bs.sys.name() + ": " + bs.sys.instr_to_string(i) +
                             " moved l" + std::to_string(guarded) + " in " +
                             state_str(s));
        }
      }
    }
  }
}

void check_congruence(LawId id, const std::vector<BuiltSystem>& corpus,
                      const LawBudget& b, LawReport& rep) {
  for (const auto& bs : corpus) {
    LawCtx c = make_ctx(bs);
    if (c.originals.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    ++rep.systems;
    std::vector<State> states = ctx_states(bs, c, b, rep);
    if (id == LawId::Eq4) {
      // One output value per (opcode, operand values) among conforming runs.
      std::map<std::tuple<OpcodeId, Value, Value>, Value> seen;
      for (const State& s : states) {
        for (const Instruction& i : c.regulars) {
          State s2 = bs.sys.step(s, i);
          if (!spec_holds(bs.spec, bs.sys, s, i, s2)) continue;
          ++rep.instances;
          auto key = std::make_tuple(i.op, s.arch[i.in[0]], s.arch[i.in[1]]);
          auto [it, fresh] = seen.emplace(key, s2.arch[i.out]);
          if (!fresh && it->second != s2.arch[i.out])
            violate(rep, bs.sys.name() + ": opcode " +
                             bs.sys.opcode(i.op).name +
                             " produced two results for equal operands");
        }
      }
    } else {
      // Cor1: outputs seen through an original instruction match the ones
      // seen through its duplicate, keyed by operand values.
      for (std::size_t oi = 0; oi < c.originals.size(); ++oi) {
        const Instruction& io = c.originals[oi];
        const Instruction& id_ = c.duplicates[oi];
        std::map<std::pair<Value, Value>, Value> via_orig, via_dup;
        for (const State& s : states) {
          State s2 = bs.sys.step(s, io);
          if (spec_holds(bs.spec, bs.sys, s, io, s2))
            via_orig[{s.arch[io.in[0]], s.arch[io.in[1]]}] = s2.arch[io.out];
          State t2 = bs.sys.step(s, id_);
          if (spec_holds(bs.spec, bs.sys, s, id_, t2))
            via_dup[{s.arch[id_.in[0]], s.arch[id_.in[1]]}] = t2.arch[id_.out];
        }
        for (const auto& [key, val] : via_orig) {
          auto it = via_dup.find(key);
          if (it == via_dup.end()) continue;
          ++rep.instances;
          if (it->second != val)
            violate(rep, bs.sys.name() + ": " + bs.sys.instr_to_string(io) +
                             " and its duplicate disagree on operands (" +
                             std::to_string(key.first) + ", " +
                             std::to_string(key.second) + ")");
        }
      }
    }
  }
}

void check_lemma1(const std::vector<BuiltSystem>& corpus, const LawBudget& b,
                  LawReport& rep) {
  for (const auto& bs : corpus) {
    LawCtx c = make_ctx(bs);
    if (c.originals.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    ++rep.systems;
    std::vector<State> states = ctx_states(bs, c, b, rep);
    // Bucket states by what the instruction pair reads: the original-side
    // image for s, the duplicate-side image for t.
    auto orig_sig = [&](const State& s) {
      std::vector<Value> sig;
      for (Location o : bs.dup.originals()) sig.push_back(s.arch[o]);
      return sig;
    };
    auto dup_sig = [&](const State& s) {
      std::vector<Value> sig;
      for (Location o : bs.dup.originals()) sig.push_back(s.arch[bs.dup.dup_of(o)]);
      return sig;
    };
    std::map<std::vector<Value>, std::vector<std::size_t>> left, right;
    for (std::size_t i = 0; i < states.size(); ++i) {
      left[orig_sig(states[i])].push_back(i);
      right[dup_sig(states[i])].push_back(i);
    }
    bool capped = false;
    for (const auto& [sig, ls] : left) {
      auto it = right.find(sig);
      if (it == right.end()) continue;
      for (std::size_t li : ls) {
        for (std::size_t ri : it->second) {
          for (std::size_t ii = 0; ii < c.originals.size(); ++ii) {
            if (rep.instances >= b.max_tests) {
              capped = true;
              break;
            }
            const State& s = states[li];
            const State& t = states[ri];
            const Instruction& io = c.originals[ii];
            const Instruction& idp = c.duplicates[ii];
            State s2 = bs.sys.step(s, io);
            State t2 = bs.sys.step(t, idp);
            if (!spec_holds(bs.spec, bs.sys, s, io, s2) ||
                !spec_holds(bs.spec, bs.sys, t, idp, t2))
              continue;
            ++rep.instances;
            for (Location o : bs.dup.originals())
              if (s2.arch[o] != t2.arch[bs.dup.dup_of(o)]) {
                violate(rep, bs.sys.name() + ": mirror broken by " +
                                 bs.sys.instr_to_string(io) + " / " +
                                 bs.sys.instr_to_string(idp));
                break;
              }
          }
          if (capped) break;
        }
        if (capped) break;
      }
      if (capped) break;
    }
    if (capped) {
      rep.complete = false;
      note(rep, bs.sys.name() + ": mirror pairs capped by budget");
    }
  }
}

void check_lemma2(const std::vector<BuiltSystem>& corpus, const LawBudget& b,
                  LawReport& rep) {
  for (const auto& bs : corpus) {
    LawCtx c = make_ctx(bs);
    if (c.originals.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    ++rep.systems;
    std::size_t skipped = 0;
    bool budget_cut = false;
    for (std::uint32_t len = 1; len <= b.test_bound && !budget_cut; ++len) {
      std::vector<std::size_t> idx(len, 0);
      bool more = true;
      while (more && !budget_cut) {
        InstrSeq seq(len);
        for (std::uint32_t j = 0; j < len; ++j) seq[j] = c.originals[idx[j]];
        QedTest t = make_standard_test(bs.dup, seq);
        for (const State& s0 : c.cons_inits) {
          if (rep.instances + skipped >= b.max_tests) {
            budget_cut = true;
            break;
          }
          Path p = bs.sys.run(s0, t.instrs);
          bool conforming = true;
          for (std::size_t j = 0; j < p.instrs.size() && conforming; ++j)
            conforming = spec_holds(bs.spec, bs.sys, p.states[j], p.instrs[j],
                                    p.states[j + 1]);
          if (!conforming) {
            if (bs.reference())
              violate(rep, bs.sys.name() +
                               ": declared conforming but a standard test "
                               "trace breaks the contract: " +
                               bs.sys.seq_to_string(t.instrs));
            ++skipped;
            continue;
          }
          ++rep.instances;
          const std::size_t n = seq.size();
          const State& fin = p.final_state();
          for (Location o : bs.dup.originals()) {
            Location d = bs.dup.dup_of(o);
            if (p.states[0].arch[d] != p.states[n].arch[d])
              violate(rep, bs.sys.name() + ": original half moved l" +
                               std::to_string(d) + " in " +
                               bs.sys.seq_to_string(t.instrs));
            if (p.states[n].arch[o] != fin.arch[o])
              violate(rep, bs.sys.name() + ": duplicate half moved l" +
                               std::to_string(o) + " in " +
                               bs.sys.seq_to_string(t.instrs));
          }
          if (!qed_consistent(bs.dup, fin))
            violate(rep, bs.sys.name() + ": conforming trace ended split: " +
                             bs.sys.seq_to_string(t.instrs));
        }
        // next original half, rightmost digit fastest
        more = false;
        for (std::uint32_t j = len; j-- > 0;) {
          if (++idx[j] < c.originals.size()) {
            more = true;
            break;
          }
          idx[j] = 0;
        }
      }
    }
    if (skipped && !bs.reference())
      note(rep, bs.sys.name() + ": " + std::to_string(skipped) +
                    " traces hit the injected bug and were exempt");
    if (budget_cut) {
      rep.complete = false;
      note(rep, bs.sys.name() + ": test budget cut the sweep");
    }
  }
}

void check_prop1(const std::vector<BuiltSystem>& corpus, const LawBudget& b,
                 LawReport& rep) {
  for (const auto& bs : corpus) {
    LawCtx c = make_ctx(bs);
    if (c.regulars.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    ++rep.systems;
    Budget budget{b.max_states, b.max_tests};
    OracleResult found =
        find_bugs(bs.sys, bs.spec, c.raw_inits, b.oracle_depth,
                  c.machine_instrs, budget, b.jobs);
    CorrectnessResult swept =
        bounded_correct(bs.sys, bs.spec, c.raw_inits, b.oracle_depth,
                        c.machine_instrs, budget);
    if (!found.complete || !swept.complete) {
      rep.complete = false;
      note(rep, bs.sys.name() + ": state budget cut exploration, skipped");
      continue;
    }
    ++rep.instances;
    if (found.bugs.empty() != swept.correct)
      violate(rep, bs.sys.name() + ": bug finder says " +
                       (found.bugs.empty() ? "clean" : "buggy") +
                       " but the sweep says " +
                       (swept.correct ? "clean" : "buggy"));
  }
}

// Initial states occurring on a trace; every segment between resets starts
// at one of these, so they are exactly what a confirming bug search needs.
std::vector<State> trace_entry_points(const TransitionSystem& sys,
                                      const Path& trace) {
  std::vector<State> pts;
  for (const State& s : trace.states)
    if (sys.is_initial(s)) pts.push_back(s);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void check_lemma3(const std::vector<BuiltSystem>& corpus, const LawBudget& b,
                  LawReport& rep) {
  for (const auto& bs : corpus) {
    ++rep.systems;
    SearchConfig cfg;
    cfg.bound = bs.config.search.bound;
    cfg.families = bs.config.search.families;
    cfg.alphabet = bs.config.search.alphabet;
    cfg.inits = bs.config.search.inits;
    cfg.max_insertions = bs.config.search.max_insertions;
    cfg.budget = Budget{b.max_states, b.max_tests};
    cfg.jobs = b.jobs;
    SearchResult res = bmc_search(bs.sys, bs.dup, cfg);
    ++rep.instances;
    if (!res.failure) {
      if (!bs.reference() && res.complete)
        note(rep, bs.sys.name() + ": injected bug not exposed at bound " +
                      std::to_string(cfg.bound));
      if (!res.complete) {
        rep.complete = false;
        note(rep, bs.sys.name() + ": search budget cut, verdict partial");
      }
      continue;
    }
    if (bs.reference()) {
      violate(rep, bs.sys.name() + ": conforming machine failed " +
                       bs.sys.seq_to_string(res.test.instrs));
      continue;
    }
    // The failing trace must contain a concrete contract violation.
    const Path& tr = res.verdict.trace;
    std::optional<std::size_t> vstep;
    for (std::size_t j = 0; j < tr.instrs.size(); ++j) {
      const Instruction& i = tr.instrs[j];
      if (bs.sys.opcode(i.op).role != OpcodeRole::Regular) continue;
      if (!bs.spec.covers(i.op)) continue;
      if (!spec_holds(bs.spec, bs.sys, tr.states[j], i, tr.states[j + 1])) {
        vstep = j;
        break;
      }
    }
    ++rep.instances;
    if (!vstep) {
      violate(rep, bs.sys.name() + ": failing test " +
                       bs.sys.seq_to_string(res.test.instrs) +
                       " has a fully conforming trace (spurious failure)");
      continue;
    }
    // And the independent bug finder must confirm that exact violation.
    InstrSeq confirm_alpha;
    for (const Instruction& i : res.test.instrs)
      if (bs.sys.opcode(i.op).role == OpcodeRole::Regular &&
          bs.spec.covers(i.op))
        confirm_alpha.push_back(i);
    std::sort(confirm_alpha.begin(), confirm_alpha.end());
    confirm_alpha.erase(
        std::unique(confirm_alpha.begin(), confirm_alpha.end()),
        confirm_alpha.end());
    OracleResult orc = find_bugs(
        bs.sys, bs.spec, trace_entry_points(bs.sys, tr),
        static_cast<std::uint32_t>(res.test.instrs.size()), confirm_alpha,
        Budget{b.max_states, b.max_tests}, b.jobs);
    ++rep.instances;
    bool confirmed = false;
    for (const Bug& bug : orc.bugs) {
      if (!(bug.instr == tr.instrs[*vstep])) continue;
      confirmed = std::binary_search(bug.triggers.begin(), bug.triggers.end(),
                                     tr.states[*vstep]);
      if (confirmed) break;
    }
    if (!confirmed)
      violate(rep, bs.sys.name() +
                       ": bug finder did not confirm the violation behind " +
                       bs.sys.seq_to_string(res.test.instrs));
  }
}

void check_lemma4(LawId id, const std::vector<BuiltSystem>& corpus,
                  const LawBudget& b, LawReport& rep) {
  const char want = id == LawId::Lemma4A ? 'A' : 'B';
  std::size_t constructed = 0;
  for (const auto& bs : corpus) {
    if (bs.reference()) continue;
    LawCtx c = make_ctx(bs);
    if (c.regulars.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    OracleResult orc =
        find_bugs(bs.sys, bs.spec, c.raw_inits, b.oracle_depth, c.regulars,
                  Budget{b.max_states, b.max_tests}, b.jobs);
    bool exercised = false;
    std::size_t attempts = 0;
    for (const Bug& bug : orc.bugs) {
      if (classify_instr(bs.dup, bug.instr) != InstrClass::Duplicate) continue;
      if (attempts >= 4) break;  // a few bugs per system are plenty
      ++attempts;
      QedTest t;
      try {
        t = build_bug_specific_test(bs.sys, bs.spec, bs.dup, bug,
                                    b.connector_depth, c.cons_how);
      } catch (const ConstructionError&) {
        continue;
      }
      if (t.meta.case_kind != want) continue;
      exercised = true;
      ++constructed;
      ++rep.instances;
      Verdict v = run_qed_test(bs.sys, bs.dup, t, *t.meta.required_init);
      if (v.pass) {
        violate(rep, bs.sys.name() + ": targeted test passed: " +
                         bs.sys.seq_to_string(t.instrs));
        continue;
      }
      if (std::find(v.mismatches.begin(), v.mismatches.end(), *t.meta.expect) ==
          v.mismatches.end())
        violate(rep, bs.sys.name() + ": predicted pair (l" +
                         std::to_string(t.meta.expect->first) + ", l" +
                         std::to_string(t.meta.expect->second) +
                         ") did not disagree in " +
                         bs.sys.seq_to_string(t.instrs));
    }
    if (exercised) ++rep.systems;
    else
      note(rep, bs.sys.name() + ": no qualifying construction of this case");
  }
  if (constructed == 0)
    violate(rep, std::string("no corpus system admitted a case-") + want +
                     " construction; the claim was never exercised");
}

void check_lemma5(const std::vector<BuiltSystem>& corpus, const LawBudget& b,
                  LawReport& rep) {
  std::size_t constructed = 0;
  for (const auto& bs : corpus) {
    if (bs.reference()) continue;
    if (!bs.sys.role_opcode(OpcodeRole::SoftReset)) {
      note(rep, bs.sys.name() + ": no soft reset, skipped");
      continue;
    }
    LawCtx c = make_ctx(bs);
    if (c.originals.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    SingleInstrResult si = single_instruction_correct(bs.sys, bs.spec,
                                                      c.raw_inits,
                                                      c.machine_instrs);
    if (!si.correct) {
      note(rep, bs.sys.name() + ": bug fires on length-1 runs, outside this claim");
      continue;
    }
    // Shortest all-original prefix whose last step breaks the contract while
    // leaving duplicate locations alone. Breadth-first, so the first hit is
    // a minimal bug prefix.
    Reach r = reach_bfs(bs.sys, c.cons_inits, c.originals,
                        b.hard_reset_bound > 0 ? b.hard_reset_bound - 1 : 0,
                        b.max_states);
    bool done = false;
    for (std::size_t ni = 0; ni < r.nodes.size() && !done; ++ni) {
      if (r.nodes[ni].depth < 1) continue;  // k >= 2 takes one setup step
      for (const Instruction& i : c.originals) {
        const State& s = r.nodes[ni].state;
        State s2 = bs.sys.step(s, i);
        if (spec_holds(bs.spec, bs.sys, s, i, s2)) continue;
        bool preserved = true;
        for (Location o : bs.dup.originals())
          if (s.arch[bs.dup.dup_of(o)] != s2.arch[bs.dup.dup_of(o)]) {
            preserved = false;
            break;
          }
        if (!preserved) continue;
        InstrSeq prefix = reach_prefix(r, ni);
        prefix.push_back(i);
        const State& s0 = r.nodes[reach_root(r, ni)].state;
        QedTest t = build_soft_reset_test(bs.sys, bs.dup, prefix, s0);
        ++rep.instances;
        ++constructed;
        Verdict v = run_qed_test(bs.sys, bs.dup, t, s0);
        if (v.pass)
          violate(rep, bs.sys.name() + ": soft-reset test passed: " +
                           bs.sys.seq_to_string(t.instrs));
        done = true;
        break;
      }
    }
    if (done) ++rep.systems;
    else
      note(rep, bs.sys.name() +
                    ": no duplicate-preserving bug prefix within bounds");
  }
  if (constructed == 0)
    violate(rep, "no corpus system admitted a soft-reset construction; "
                 "the claim was never exercised");
}

void check_thm2(const std::vector<BuiltSystem>& corpus, const LawBudget& b,
                LawReport& rep) {
  for (const auto& bs : corpus) {
    if (!bs.sys.role_opcode(OpcodeRole::SoftReset) ||
        !bs.sys.role_opcode(OpcodeRole::HardReset)) {
      note(rep, bs.sys.name() + ": missing a reset instruction, skipped");
      continue;
    }
    LawCtx c = make_ctx(bs);
    if (c.machine_instrs.empty()) {
      note(rep, bs.sys.name() + ": no tractable alphabet, skipped");
      continue;
    }
    if (c.restricted)
      note(rep, bs.sys.name() + ": equivalence over the configured alphabet");
    Reach r = reach_bfs(bs.sys, c.raw_inits, c.machine_instrs,
                        b.hard_reset_bound - 1, b.max_states);
    if (!r.complete) {
      rep.complete = false;
      note(rep, bs.sys.name() + ": state budget cut exploration, skipped");
      continue;
    }
    ++rep.systems;

    // Both sides range over the same states: everything within the prefix
    // bound of the initial pool, plus the initial state of each reached
    // architectural assignment (a hard reset can land on any of them).
    std::vector<State> si_inits = c.raw_inits;
    for (const auto& n : r.nodes)
      si_inits.push_back(bs.sys.initial_state(n.state.arch));
    std::sort(si_inits.begin(), si_inits.end());
    si_inits.erase(std::unique(si_inits.begin(), si_inits.end()),
                   si_inits.end());
    std::vector<State> domain = si_inits;
    for (const auto& n : r.nodes) domain.push_back(n.state);
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

    SingleInstrResult si = single_instruction_correct(bs.sys, bs.spec,
                                                      si_inits,
                                                      c.machine_instrs);

    bool hr_failed = false;
    std::string hr_what;
    for (std::size_t ni = 0; ni < r.nodes.size() && !hr_failed; ++ni) {
      if (r.nodes[ni].depth < 1) continue;
      InstrSeq prefix = reach_prefix(r, ni);
      prefix.push_back(Instruction{});
      const State& mu = r.nodes[reach_root(r, ni)].state;
      for (const Instruction& i : c.machine_instrs) {
        prefix.back() = i;
        QedTest t = build_hard_reset_test(bs.sys, prefix, mu);
        ++rep.instances;
        Verdict v = check_hard_reset_test(bs.sys, t, mu);
        if (!v.pass) {
          hr_failed = true;
          hr_what = bs.sys.seq_to_string(t.instrs);
          break;
        }
      }
    }

    OracleResult orc =
        find_bugs(bs.sys, bs.spec, domain, 0, c.machine_instrs,
                  Budget{b.max_states, b.max_tests}, b.jobs);
    ++rep.instances;
    bool lhs = si.correct && !hr_failed;
    bool rhs = orc.bugs.empty();
    if (lhs != rhs) {
      std::string left = si.correct
                             ? (hr_failed ? "a hard-reset test failed (" +
                                                hr_what + ")"
                                          : "every hard-reset test passed")
                             : "a single instruction already misbehaves";
      violate(rep, bs.sys.name() + ": " + left + " but the sweep says " +
                       (rhs ? "clean" : "buggy"));
    }
  }
}

}  // namespace

LawReport check_law(LawId id, const std::vector<BuiltSystem>& corpus,
                    const LawBudget& budget) {
  LawReport rep;
  rep.law = id;
  rep.statement = law_statement(id);
  switch (id) {
    case LawId::Eq2:
    case LawId::Eq3:
      check_frame_side(id, corpus, budget, rep);
      break;
    case LawId::Eq4:
    case LawId::Cor1:
      check_congruence(id, corpus, budget, rep);
      break;
    case LawId::Lemma1:
      check_lemma1(corpus, budget, rep);
      break;
    case LawId::Lemma2:
      check_lemma2(corpus, budget, rep);
      break;
    case LawId::Prop1:
      check_prop1(corpus, budget, rep);
      break;
    case LawId::Lemma3:
      check_lemma3(corpus, budget, rep);
      break;
    case LawId::Lemma4A:
    case LawId::Lemma4B:
      check_lemma4(id, corpus, budget, rep);
      break;
    case LawId::Lemma5:
      check_lemma5(corpus, budget, rep);
      break;
    case LawId::Thm1: {
      // Soundness and targeted completeness bundled: reuse the three
      // underlying checks and merge their outcomes.
      for (LawId part : {LawId::Lemma3, LawId::Lemma4A, LawId::Lemma4B}) {
        LawReport sub = check_law(part, corpus, budget);
        rep.instances += sub.instances;
        rep.systems = std::max(rep.systems, sub.systems);
        rep.complete = rep.complete && sub.complete;
        for (const auto& v : sub.violations)
          violate(rep, std::string(law_name(part)) + ": " + v);
        for (const auto& n : sub.notes)
          note(rep, std::string(law_name(part)) + ": " + n);
      }
      break;
    }
    case LawId::Thm2:
      check_thm2(corpus, budget, rep);
      break;
  }
  return rep;
}

std::vector<LawReport> check_all_laws(const std::vector<BuiltSystem>& corpus,
                                      const LawBudget& budget) {
  std::vector<LawReport> out;
  for (LawId id : all_laws()) out.push_back(check_law(id, corpus, budget));
  return out;
}

}  // namespace sqed
