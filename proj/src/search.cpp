#include "sqed/search.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "sqed/errors.hpp"
#include "sqed/parallel.hpp"
#include "sqed/spec.hpp"
#include "sqed/zoo.hpp"

namespace sqed {

namespace {

// Visits A^len in lexicographic order, handing out blocks of at most
// block_size sequences. The visitor returns false to stop early; the
// function returns false when the walk was cut short (stop or cap).
template <typename Fn>
bool blocked_sequences(const InstrSeq& alphabet, std::uint32_t len,
                       std::size_t block_size, std::size_t cap, Fn visit) {
  std::vector<std::size_t> idx(len, 0);
  std::vector<InstrSeq> block;
  block.reserve(block_size);
  std::size_t produced = 0;
  bool more = true;
  while (more) {
    InstrSeq seq(len);
    for (std::uint32_t j = 0; j < len; ++j) seq[j] = alphabet[idx[j]];
    block.push_back(std::move(seq));
    if (++produced > cap) return false;
    // odometer, rightmost digit fastest
    more = false;
    for (std::uint32_t j = len; j-- > 0;) {
      if (++idx[j] < alphabet.size()) {
        more = true;
        break;
      }
      idx[j] = 0;
    }
    if (block.size() == block_size || !more) {
      if (!visit(block)) return false;
      block.clear();
    }
  }
  return true;
}

// All order-preserving merges of k originals with their k duplicates where
// duplicate j never precedes original j. Encoded as bitstrings, false =
// take next original.
void ballot_patterns(std::uint32_t k, std::vector<std::vector<bool>>& out) {
  std::vector<bool> cur(2 * k);
  auto rec = [&](auto&& self, std::uint32_t o, std::uint32_t d) -> void {
    if (o + d == 2 * k) {
      out.push_back(cur);
      return;
    }
    if (o < k) {
      cur[o + d] = false;
      self(self, o + 1, d);
    }
    if (d < o) {
      cur[o + d] = true;
      self(self, o, d + 1);
    }
  };
  rec(rec, 0, 0);
}

struct GridHit {
  std::size_t test_idx = 0;
  std::size_t init_idx = 0;
  Verdict verdict;
};

// Runs every candidate against every initial state, first failure in
// (candidate, init) order wins. Workers fill per-candidate slots, so the
// outcome and the canonical execution count do not depend on jobs.
std::optional<GridHit> run_grid(const TransitionSystem& sys, const DupMap& m,
                                const std::vector<QedTest>& candidates,
                                const std::vector<State>& inits, unsigned jobs,
                                std::size_t& executed) {
  struct Slot {
    bool failed = false;
    std::size_t init_idx = 0;
    Verdict verdict;
  };
  std::vector<Slot> slots(candidates.size());
  StopIndex stop;
  parallel_for(
      candidates.size(), jobs,
      [&](std::size_t ti) {
        for (std::size_t ii = 0; ii < inits.size(); ++ii) {
          Verdict v = run_qed_test(sys, m, candidates[ti], inits[ii]);
          if (!v.pass) {
            slots[ti] = Slot{true, ii, std::move(v)};
            stop.propose(ti);
            return;
          }
        }
      },
      &stop);
  for (std::size_t ti = 0; ti < candidates.size(); ++ti) {
    if (slots[ti].failed) {
      executed += ti * inits.size() + slots[ti].init_idx + 1;
      return GridHit{ti, slots[ti].init_idx, std::move(slots[ti].verdict)};
    }
  }
  executed += candidates.size() * inits.size();
  return std::nullopt;
}

struct FamilyOutcome {
  bool failure = false;
  QedTest test;
  Verdict verdict;
  State init;
  std::size_t fail_len = 0;    // failing test length, for cross-family merge
  std::size_t fail_order = 0;  // enumeration position within the family
  std::size_t executed = 0;
  std::size_t states_visited = 0;
  bool complete = true;
};

constexpr std::size_t kBlock = 4096;

// Standard and soft-reset families share the walk over original halves.
template <typename MakeTest>
FamilyOutcome sequence_family(const TransitionSystem& sys, const DupMap& m,
                              const InstrSeq& alphabet,
                              const std::vector<State>& inits,
                              std::uint32_t bound, const Budget& budget,
                              unsigned jobs, MakeTest make) {
  FamilyOutcome out;
  std::size_t order = 0;
  for (std::uint32_t len = 1; len <= bound && !out.failure; ++len) {
    bool walked = blocked_sequences(
        alphabet, len, kBlock, budget.max_tests, [&](std::vector<InstrSeq>& block) {
          if (out.executed >= budget.max_tests) return false;
          std::vector<QedTest> cands;
          cands.reserve(block.size());
          for (auto& seq : block) cands.push_back(make(seq));
          auto hit = run_grid(sys, m, cands, inits, jobs, out.executed);
          if (hit) {
            out.failure = true;
            out.test = cands[hit->test_idx];
            out.verdict = std::move(hit->verdict);
            out.init = inits[hit->init_idx];
            out.fail_len = out.test.instrs.size();
            out.fail_order = order + hit->test_idx;
            return false;
          }
          order += cands.size();
          return true;
        });
    if (!walked && !out.failure) {
      out.complete = false;
      break;
    }
  }
  return out;
}

// Every way to grow `base` with exactly `extra` instructions drawn from
// `fillers`, inserted at arbitrary positions. Deduplicated by the caller.
void insertions(const InstrSeq& base, const InstrSeq& fillers,
                std::uint32_t extra, std::set<InstrSeq>& sink,
                std::size_t cap) {
  if (extra == 0) {
    sink.insert(base);
    return;
  }
  for (std::size_t pos = 0; pos <= base.size(); ++pos) {
    for (const auto& f : fillers) {
      if (sink.size() >= cap) return;
      InstrSeq next = base;
      next.insert(next.begin() + static_cast<std::ptrdiff_t>(pos), f);
      insertions(next, fillers, extra - 1, sink, cap);
    }
  }
}

FamilyOutcome extended_family(const TransitionSystem& sys, const DupMap& m,
                              const InstrSeq& alphabet,
                              const std::vector<State>& inits,
                              const SearchConfig& cfg) {
  FamilyOutcome out;
  InstrSeq fillers = nop_alphabet(sys);
  if (fillers.empty())
    throw DomainError("extended family needs at least one no-change instruction");
  std::size_t order = 0;
  std::uint32_t max_total = 2 * cfg.bound + cfg.max_insertions;
  for (std::uint32_t total = 2; total <= max_total && !out.failure; ++total) {
    // All sequences of this exact length, across every compatible split into
    // a standard core plus inserted no-change instructions.
    std::set<InstrSeq> klass;
    bool capped = false;
    for (std::uint32_t blen = 1; blen <= cfg.bound; ++blen) {
      if (2 * blen > total) break;
      std::uint32_t extra = total - 2 * blen;
      if (extra > cfg.max_insertions) continue;
      capped = !blocked_sequences(
          alphabet, blen, kBlock, cfg.budget.max_tests,
          [&](std::vector<InstrSeq>& block) {
            for (auto& seq : block) {
              InstrSeq core = seq;
              InstrSeq dupped = dup_seq(m, seq);
              core.insert(core.end(), dupped.begin(), dupped.end());
              insertions(core, fillers, extra, klass, cfg.budget.max_tests);
              if (klass.size() >= cfg.budget.max_tests) return false;
            }
            return true;
          });
      if (capped) break;
    }
    std::vector<QedTest> cands;
    cands.reserve(klass.size());
    for (const auto& seq : klass)
      cands.push_back(QedTest{TestFamily::Extended, seq, {}});
    auto hit = run_grid(sys, m, cands, inits, cfg.jobs, out.executed);
    if (hit) {
      out.failure = true;
      out.test = cands[hit->test_idx];
      out.verdict = std::move(hit->verdict);
      out.init = inits[hit->init_idx];
      out.fail_len = out.test.instrs.size();
      out.fail_order = order + hit->test_idx;
      return out;
    }
    order += cands.size();
    if (capped || out.executed >= cfg.budget.max_tests) {
      out.complete = false;
      return out;
    }
  }
  return out;
}

FamilyOutcome interleaved_family(const TransitionSystem& sys, const DupMap& m,
                                 const InstrSeq& alphabet,
                                 const std::vector<State>& inits,
                                 const SearchConfig& cfg) {
  FamilyOutcome out;
  std::size_t order = 0;
  for (std::uint32_t len = 1; len <= cfg.bound && !out.failure; ++len) {
    std::vector<std::vector<bool>> patterns;
    ballot_patterns(len, patterns);
    std::vector<InstrSeq> klass;
    bool walked = blocked_sequences(
        alphabet, len, kBlock, cfg.budget.max_tests,
        [&](std::vector<InstrSeq>& block) {
          for (auto& seq : block) {
            InstrSeq dupped = dup_seq(m, seq);
            for (const auto& pat : patterns) {
              InstrSeq merged;
              merged.reserve(2 * len);
              std::size_t o = 0, d = 0;
              for (bool take_dup : pat)
                merged.push_back(take_dup ? dupped[d++] : seq[o++]);
              klass.push_back(std::move(merged));
            }
            if (klass.size() >= cfg.budget.max_tests) return false;
          }
          return true;
        });
    std::sort(klass.begin(), klass.end());
    klass.erase(std::unique(klass.begin(), klass.end()), klass.end());
    std::vector<QedTest> cands;
    cands.reserve(klass.size());
    for (auto& seq : klass)
      cands.push_back(QedTest{TestFamily::Interleaved, std::move(seq), {}});
    auto hit = run_grid(sys, m, cands, inits, cfg.jobs, out.executed);
    if (hit) {
      out.failure = true;
      out.test = cands[hit->test_idx];
      out.verdict = std::move(hit->verdict);
      out.init = inits[hit->init_idx];
      out.fail_len = out.test.instrs.size();
      out.fail_order = order + hit->test_idx;
      return out;
    }
    order += cands.size();
    if (!walked || out.executed >= cfg.budget.max_tests) {
      out.complete = false;
      return out;
    }
  }
  return out;
}

FamilyOutcome hard_reset_family(const TransitionSystem& sys,
                                const InstrSeq& alphabet,
                                const std::vector<State>& inits,
                                const SearchConfig& cfg) {
  FamilyOutcome out;
  if (cfg.bound < 2) return out;
  Reach reach =
      reach_bfs(sys, inits, alphabet, cfg.bound - 1, cfg.budget.max_states);
  out.states_visited = reach.nodes.size();
  if (!reach.complete) out.complete = false;

  // A candidate is (reached state, final instruction). The verdict depends
  // only on that pair: the middle of the test replays the canonical prefix
  // deterministically, so alternative prefixes to the same state are
  // redundant. Nodes come out of the BFS shortest-first.
  std::vector<std::size_t> eligible;
  for (std::size_t n = 0; n < reach.nodes.size(); ++n)
    if (reach.nodes[n].depth >= 1) eligible.push_back(n);

  struct Slot {
    bool failed = false;
    Verdict verdict;
  };
  std::size_t total = eligible.size() * alphabet.size();
  std::size_t offset = 0;
  while (offset < total && !out.failure) {
    std::size_t chunk = std::min<std::size_t>(kBlock, total - offset);
    if (out.executed + chunk > cfg.budget.max_tests) {
      chunk = cfg.budget.max_tests > out.executed
                  ? cfg.budget.max_tests - out.executed
                  : 0;
      if (chunk == 0) {
        out.complete = false;
        break;
      }
    }
    std::vector<Slot> slots(chunk);
    StopIndex stop;
    parallel_for(
        chunk, cfg.jobs,
        [&](std::size_t i) {
          std::size_t flat = offset + i;
          std::size_t node = eligible[flat / alphabet.size()];
          const Instruction& last = alphabet[flat % alphabet.size()];
          InstrSeq prefix = reach_prefix(reach, node);
          prefix.push_back(last);
          const State& mu = reach.nodes[reach_root(reach, node)].state;
          QedTest t = build_hard_reset_test(sys, prefix, mu);
          Verdict v = check_hard_reset_test(sys, t, mu);
          if (!v.pass) {
            slots[i] = Slot{true, std::move(v)};
            stop.propose(i);
          }
        },
        &stop);
    bool found = false;
    for (std::size_t i = 0; i < chunk; ++i) {
      if (slots[i].failed) {
        std::size_t flat = offset + i;
        std::size_t node = eligible[flat / alphabet.size()];
        InstrSeq prefix = reach_prefix(reach, node);
        prefix.push_back(alphabet[flat % alphabet.size()]);
        const State& mu = reach.nodes[reach_root(reach, node)].state;
        out.failure = true;
        out.test = build_hard_reset_test(sys, prefix, mu);
        out.verdict = std::move(slots[i].verdict);
        out.init = mu;
        out.fail_len = out.test.instrs.size();
        out.fail_order = flat;
        out.executed += i + 1;
        found = true;
        break;
      }
    }
    if (!found) out.executed += chunk;
    offset += chunk;
  }
  return out;
}

InstrSeq family_alphabet(const TransitionSystem& sys, const DupMap& m,
                         TestFamily fam, const InstrSeq& requested) {
  if (!requested.empty()) return requested;
  if (fam == TestFamily::HardReset) return regular_alphabet(sys);
  return original_alphabet(sys, m);
}

}  // namespace

SearchResult bmc_search(const TransitionSystem& sys, const DupMap& m,
                        const SearchConfig& cfg) {
  if (cfg.bound == 0) throw ConfigError("search bound must be positive");
  std::vector<TestFamily> fams;
  for (TestFamily f : cfg.families)
    if (std::find(fams.begin(), fams.end(), f) == fams.end()) fams.push_back(f);
  if (fams.empty()) throw ConfigError("no test family selected");

  std::vector<State> dup_inits;  // consistent starts, duplication families
  std::vector<State> raw_inits;  // hard-reset family
  auto need_dup = [&]() -> const std::vector<State>& {
    if (dup_inits.empty()) {
      dup_inits = enumerate_consistent_inits(sys, m, cfg.inits);
      if (dup_inits.empty()) throw DomainError("no consistent initial states");
    }
    return dup_inits;
  };
  auto need_raw = [&]() -> const std::vector<State>& {
    if (raw_inits.empty()) {
      raw_inits = enumerate_inits(sys, cfg.inits);
      if (raw_inits.empty()) throw DomainError("no initial states");
    }
    return raw_inits;
  };

  SearchResult res;
  std::size_t best_fam_pos = 0;
  std::optional<std::pair<std::size_t, std::size_t>> best;  // (len, fam pos)
  std::vector<FamilyOutcome> outcomes;
  for (std::size_t fi = 0; fi < fams.size(); ++fi) {
    TestFamily fam = fams[fi];
    InstrSeq alpha = family_alphabet(sys, m, fam, cfg.alphabet);
    if (alpha.empty()) throw DomainError("empty search alphabet");
    FamilyOutcome oc;
    switch (fam) {
      case TestFamily::Standard:
        oc = sequence_family(sys, m, alpha, need_dup(), cfg.bound, cfg.budget,
                             cfg.jobs, [&](const InstrSeq& seq) {
                               return make_standard_test(m, seq);
                             });
        break;
      case TestFamily::Extended:
        oc = extended_family(sys, m, alpha, need_dup(), cfg);
        break;
      case TestFamily::Interleaved:
        oc = interleaved_family(sys, m, alpha, need_dup(), cfg);
        break;
      case TestFamily::SoftReset:
        oc = sequence_family(sys, m, alpha, need_dup(), cfg.bound, cfg.budget,
                             cfg.jobs, [&](const InstrSeq& seq) {
                               return build_soft_reset_seq_test(sys, m, seq);
                             });
        break;
      case TestFamily::HardReset:
        oc = hard_reset_family(sys, alpha, need_raw(), cfg);
        break;
    }
    res.stats.tests_executed += oc.executed;
    res.stats.states_visited += oc.states_visited;
    if (!oc.complete) res.complete = false;
    if (oc.failure) {
      std::pair<std::size_t, std::size_t> key{oc.fail_len, fi};
      if (!best || key < *best) {
        best = key;
        best_fam_pos = outcomes.size();
      }
    }
    outcomes.push_back(std::move(oc));
  }
  res.stats.inits =
      std::max(dup_inits.size(), raw_inits.size());
  if (best) {
    FamilyOutcome& oc = outcomes[best_fam_pos];
    res.failure = true;
    res.test = std::move(oc.test);
    res.verdict = std::move(oc.verdict);
    res.init = std::move(oc.init);
  }
  return res;
}

QedTest build_hard_reset_test(const TransitionSystem& sys,
                              const InstrSeq& prefix, const State& mu) {
  if (prefix.size() < 2)
    throw ConstructionError("hard-reset tests need a prefix of length >= 2");
  sys.validate_state(mu);
  if (!sys.is_initial(mu))
    throw ConstructionError("hard-reset target must be an initial state");
  Instruction reset_to_mu = hard_reset_instr(sys, mu);
  Instruction soft = soft_reset_instr(sys);
  std::size_t k = prefix.size();
  QedTest t;
  t.family = TestFamily::HardReset;
  t.instrs.reserve(2 * k + 2);
  t.instrs.insert(t.instrs.end(), prefix.begin(), prefix.end());
  t.instrs.push_back(reset_to_mu);
  t.instrs.insert(t.instrs.end(), prefix.begin(), prefix.end() - 1);
  t.instrs.push_back(soft);
  t.instrs.push_back(prefix.back());
  t.meta.k = static_cast<std::uint32_t>(k);
  t.meta.required_init = mu;
  return t;
}

Verdict check_hard_reset_test(const TransitionSystem& sys, const QedTest& t,
                              const State& mu) {
  return run_hard_reset_test(sys, t, mu);
}

QedTest build_soft_reset_seq_test(const TransitionSystem& sys, const DupMap& m,
                                  const InstrSeq& prefix) {
  if (prefix.empty())
    throw ConstructionError("soft-reset tests need a nonempty prefix");
  for (const auto& i : prefix)
    if (classify_instr(m, i) != InstrClass::Original)
      throw ConstructionError("soft-reset prefix must use original instructions");
  Instruction soft = soft_reset_instr(sys);
  QedTest t;
  t.family = TestFamily::SoftReset;
  t.instrs.reserve(3 * prefix.size());
  t.instrs.insert(t.instrs.end(), prefix.begin(), prefix.end());
  for (const auto& i : prefix) {
    t.instrs.push_back(soft);
    t.instrs.push_back(dup_instr(m, i));
  }
  t.meta.k = static_cast<std::uint32_t>(prefix.size());
  return t;
}

QedTest build_soft_reset_test(const TransitionSystem& sys, const DupMap& m,
                              const InstrSeq& prefix, const State& s0) {
  if (prefix.size() < 2)
    throw ConstructionError("soft-reset tests need a bug prefix of length >= 2");
  QedTest t = build_soft_reset_seq_test(sys, m, prefix);
  sys.validate_state(s0);
  if (!qed_consistent(m, s0))
    throw ConstructionError("soft-reset tests start from a consistent state");
  // The suspected bug must leave duplicate locations alone, otherwise the
  // replayed duplicates start from corrupted inputs and the verdict proves
  // nothing. Check it on the actual trace.
  Path p = sys.run(s0, prefix);
  const State& before = p.states[prefix.size() - 1];
  const State& after = p.states[prefix.size()];
  for (Location o : m.originals()) {
    Location l = m.dup_of(o);
    if (before.arch[l] != after.arch[l])
      throw ConstructionError(
          "bug prefix corrupts duplicate location l" + std::to_string(l) +
          "; pick a partition keeping it original-side");
  }
  return t;
}

QedTest build_bug_specific_test(const TransitionSystem& sys,
                                const SpecRelation& spec, const DupMap& m,
                                const Bug& bug, std::uint32_t connector_depth,
                                const InitEnum& inits,
                                std::size_t max_candidates) {
  const Instruction& ib = bug.instr;
  if (classify_instr(m, ib) != InstrClass::Duplicate)
    throw ConstructionError(
        "bug instruction is not duplicate-side under this partition; "
        "rerun with a partition that makes it one");
  Instruction i1{ib.op, m.orig_of(ib.out),
                 {m.orig_of(ib.in[0]), m.orig_of(ib.in[1])}};

  // Connector instructions: original regular instructions, plus the
  // no-change instructions that classify as original. Reset machinery stays
  // out; the first half of a standard test has no business resetting.
  InstrSeq alpha = original_alphabet(sys, m);
  for (const auto& n : nop_alphabet(sys)) {
    if (sys.opcode(n.op).role == OpcodeRole::SoftReset) continue;
    if (classify_instr(m, n) != InstrClass::Original) continue;
    if (std::find(alpha.begin(), alpha.end(), n) == alpha.end())
      alpha.push_back(n);
  }
  std::sort(alpha.begin(), alpha.end());

  std::vector<State> starts = enumerate_consistent_inits(sys, m, inits);
  std::size_t tried = 0;

  for (std::uint32_t clen = 0; clen <= connector_depth; ++clen) {
    bool more = true;
    std::vector<std::size_t> idx(clen, 0);
    while (more) {
      InstrSeq connector(clen);
      for (std::uint32_t j = 0; j < clen; ++j) connector[j] = alpha[idx[j]];
      for (const State& s0 : starts) {
        if (++tried > max_candidates)
          throw ConstructionError("bug-specific search exceeded its budget");
        InstrSeq first_half;
        first_half.push_back(i1);
        first_half.insert(first_half.end(), connector.begin(),
                          connector.end());
        Path fp = sys.run(s0, first_half);
        // The opening instruction itself must behave; a bug firing on it
        // wrecks the reference value the test compares against.
        if (!spec.covers(i1.op) ||
            !spec_holds(spec, sys, fp.states[0], i1, fp.states[1]))
          continue;
        const State& sn = fp.final_state();
        State after_bug = sys.step(sn, ib);
        if (spec_holds(spec, sys, sn, ib, after_bug)) continue;  // no trigger

        ViolationKind kind = classify_violation(spec, sys, sn, ib, after_bug);
        char case_kind;
        Location lx, ly;
        if (kind == ViolationKind::TypeA || kind == ViolationKind::Both) {
          case_kind = 'A';
          lx = i1.out;
          ly = ib.out;
        } else {
          // Pure value corruption elsewhere: pick a clobbered location that
          // is duplicate-side and whose original twin is not the opening
          // instruction's output.
          case_kind = 'B';
          std::optional<Location> pick;
          for (Location l = 0; l < sys.locations(); ++l) {
            if (l == ib.out) continue;
            if (sn.arch[l] == after_bug.arch[l]) continue;
            if (!m.is_duplicate(l)) continue;
            if (m.orig_of(l) == i1.out) continue;
            pick = l;
            break;
          }
          if (!pick) continue;
          ly = *pick;
          lx = m.orig_of(ly);
        }

        QedTest t = make_standard_test(m, first_half);
        Path full = sys.run(s0, t.instrs);
        std::size_t n = first_half.size();
        const auto& st = full.states;
        // Value-preservation side conditions; each one keeps a comparison
        // operand alive across the trace.
        bool ok = st[n + 1].arch[ly] == st[2 * n].arch[ly] &&
                  st[1].arch[lx] == st[2 * n].arch[lx];
        if (ok && case_kind == 'A')
          ok = st[0].arch[ib.in[0]] == st[n].arch[ib.in[0]] &&
               st[0].arch[ib.in[1]] == st[n].arch[ib.in[1]];
        if (ok && case_kind == 'B') ok = st[1].arch[ly] == st[n].arch[ly];
        if (!ok) continue;

        t.meta.k = static_cast<std::uint32_t>(n);
        t.meta.case_kind = case_kind;
        t.meta.expect = {std::min(lx, ly), std::max(lx, ly)};
        t.meta.required_init = s0;
        for (const auto& c : connector)
          if (sys.is_nop_instr(c)) {
            t.meta.note = "connector padded with no-change instructions";
            break;
          }
        return t;
      }
      more = false;
      for (std::uint32_t j = clen; j-- > 0;) {
        if (++idx[j] < alpha.size()) {
          more = true;
          break;
        }
        idx[j] = 0;
      }
      if (clen == 0) break;
    }
  }
  throw ConstructionError(
      "no connector reaches a trigger within depth " +
      std::to_string(connector_depth) +
      " while keeping the compared values intact");
}

}  // namespace sqed
