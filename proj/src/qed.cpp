#include "sqed/qed.hpp"

#include <algorithm>

#include "sqed/errors.hpp"

namespace sqed {

const char* family_name(TestFamily f) {
  switch (f) {
    case TestFamily::Standard:
      return "standard";
    case TestFamily::Extended:
      return "extended";
    case TestFamily::Interleaved:
      return "interleaved";
    case TestFamily::SoftReset:
      return "softreset";
    case TestFamily::HardReset:
      return "hardreset";
  }
  return "?";
}

std::optional<TestFamily> family_from_name(const std::string& name) {
  for (TestFamily f :
       {TestFamily::Standard, TestFamily::Extended, TestFamily::Interleaved,
        TestFamily::SoftReset, TestFamily::HardReset})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

bool qed_consistent(const DupMap& m, const State& s) {
  for (Location l : m.originals())
    if (s.arch[l] != s.arch[m.dup_of(l)]) return false;
  return true;
}

QedTest make_standard_test(const DupMap& m, const InstrSeq& originals) {
  if (originals.empty())
    throw DomainError("a test needs at least one original instruction");
  for (const Instruction& i : originals)
    if (classify_instr(m, i) != InstrClass::Original)
      throw DomainError("non-original instruction in test body");
  QedTest t;
  t.family = TestFamily::Standard;
  t.instrs = originals;
  InstrSeq dup = dup_seq(m, originals);
  t.instrs.insert(t.instrs.end(), dup.begin(), dup.end());
  return t;
}

namespace {

Verdict judge_consistency(const DupMap& m, Path trace) {
  Verdict v;
  const State& fin = trace.final_state();
  for (Location l : m.originals()) {
    Location d = m.dup_of(l);
    if (fin.arch[l] != fin.arch[d]) v.mismatches.emplace_back(l, d);
  }
  v.pass = v.mismatches.empty();
  if (!v.pass) v.witness = v.mismatches.front();
  v.trace = std::move(trace);
  return v;
}

Verdict judge_hard_reset(std::size_t k, Path trace) {
  Verdict v;
  const State& after_bug = trace.states[k];
  const State& fin = trace.final_state();
  for (Location l = 0; l < after_bug.arch.size(); ++l)
    if (after_bug.arch[l] != fin.arch[l]) v.mismatches.emplace_back(l, l);
  v.pass = v.mismatches.empty();
  if (!v.pass) v.witness = v.mismatches.front();
  v.trace = std::move(trace);
  return v;
}

}  // namespace

Verdict run_hard_reset_test(const TransitionSystem& sys, const QedTest& t,
                            const State& s0) {
  if (t.family != TestFamily::HardReset)
    throw DomainError("not a hard-reset test");
  sys.validate_state(s0);
  if (!sys.is_initial(s0))
    throw DomainError("QED tests start from initial states (narch = n0)");
  if (t.meta.required_init && !(s0 == *t.meta.required_init))
    throw DomainError(
        "hard-reset test must start from its recorded initial state");
  std::size_t k = t.meta.k;
  if (k < 2 || t.instrs.size() != 2 * k + 2)
    throw DomainError("hard-reset test shape requires length 2k+2 with k >= 2");
  return judge_hard_reset(k, sys.run(s0, t.instrs));
}

Verdict run_qed_test(const TransitionSystem& sys, const DupMap& m,
                     const QedTest& t, const State& s0) {
  if (t.family == TestFamily::HardReset) return run_hard_reset_test(sys, t, s0);
  sys.validate_state(s0);
  if (!sys.is_initial(s0))
    throw DomainError("QED tests start from initial states (narch = n0)");
  if (!qed_consistent(m, s0))
    throw DomainError("initial state is not QED-consistent");
  return judge_consistency(m, sys.run(s0, t.instrs));
}

namespace {

std::optional<InstrClass> classify_opt(const DupMap& m, const Instruction& i) {
  try {
    return classify_instr(m, i);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

bool is_standard(const DupMap& m, const InstrSeq& seq) {
  if (seq.empty() || seq.size() % 2 != 0) return false;
  const std::size_t n = seq.size() / 2;
  for (std::size_t j = 0; j < n; ++j)
    if (classify_opt(m, seq[j]) != InstrClass::Original) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (!(seq[n + j] == dup_instr(m, seq[j]))) return false;
  return true;
}

bool is_interleaved(const DupMap& m, const InstrSeq& seq) {
  InstrSeq orig, dup;
  std::vector<std::size_t> opos, dpos;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    auto cls = classify_opt(m, seq[p]);
    if (!cls) return false;
    switch (*cls) {
      case InstrClass::Original:
        orig.push_back(seq[p]);
        opos.push_back(p);
        break;
      case InstrClass::Duplicate:
        dup.push_back(seq[p]);
        dpos.push_back(p);
        break;
      case InstrClass::Mixed:
        return false;
    }
  }
  if (orig.empty() || orig.size() != dup.size()) return false;
  if (!(dup_seq(m, orig) == dup)) return false;
  for (std::size_t j = 0; j < orig.size(); ++j)
    if (dpos[j] < opos[j]) return false;
  return true;
}

// Insertions must be architecture-preserving; everything else must line up
// as a standard test. Splitting is ambiguous when the core itself contains
// NOP-set members, so optional positions are backtracked.
bool is_extended(const TransitionSystem& sys, const DupMap& m,
                 const InstrSeq& seq) {
  std::vector<std::size_t> optional_pos;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    bool nop = false;
    try {
      nop = sys.is_nop_instr(seq[p]);
    } catch (const DomainError&) {
      return false;
    }
    if (nop)
      optional_pos.push_back(p);
    else if (sys.opcode(seq[p].op).role != OpcodeRole::Regular)
      return false;  // reset machinery is not standard-test material
  }
  if (optional_pos.size() > 20)
    throw DomainError("too many removable instructions to decide membership");
  const std::size_t subsets = static_cast<std::size_t>(1) << optional_pos.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    InstrSeq core;
    std::size_t oi = 0;
    for (std::size_t p = 0; p < seq.size(); ++p) {
      if (oi < optional_pos.size() && optional_pos[oi] == p) {
        if (mask & (static_cast<std::size_t>(1) << oi)) core.push_back(seq[p]);
        ++oi;
      } else {
        core.push_back(seq[p]);
      }
    }
    if (is_standard(m, core)) return true;
  }
  return false;
}

bool is_soft_reset_shape(const TransitionSystem& sys, const DupMap& m,
                         const InstrSeq& seq) {
  if (seq.empty() || seq.size() % 3 != 0) return false;
  const std::size_t k = seq.size() / 3;
  for (std::size_t j = 0; j < k; ++j)
    if (classify_opt(m, seq[j]) != InstrClass::Original) return false;
  for (std::size_t j = 0; j < k; ++j) {
    const Instruction& r = seq[k + 2 * j];
    const Instruction& d = seq[k + 2 * j + 1];
    if (sys.opcode(r.op).role != OpcodeRole::SoftReset) return false;
    if (!(d == dup_instr(m, seq[j]))) return false;
  }
  return true;
}

bool is_hard_reset_shape(const TransitionSystem& sys, const InstrSeq& seq) {
  if (seq.size() < 6 || seq.size() % 2 != 0) return false;
  const std::size_t k = (seq.size() - 2) / 2;
  if (sys.opcode(seq[k].op).role != OpcodeRole::HardReset) return false;
  if (sys.opcode(seq[2 * k].op).role != OpcodeRole::SoftReset) return false;
  for (std::size_t j = 0; j + 1 < k; ++j)
    if (!(seq[k + 1 + j] == seq[j])) return false;
  if (!(seq[2 * k + 1] == seq[k - 1])) return false;
  for (std::size_t j = 0; j < k; ++j)
    if (sys.opcode(seq[j].op).role == OpcodeRole::HardReset) return false;
  return true;
}

}  // namespace

bool is_qed_test(const TransitionSystem& sys, const DupMap& m,
                 const InstrSeq& seq, TestFamily family) {
  // Hard-reset instructions carry a table index, not a location, so only the
  // hard-reset family may contain them.
  if (family != TestFamily::HardReset)
    for (const Instruction& i : seq)
      if (i.op < sys.opcodes().size() &&
          sys.opcode(i.op).role == OpcodeRole::HardReset)
        return false;
  switch (family) {
    case TestFamily::Standard:
      return is_standard(m, seq);
    case TestFamily::Extended:
      return is_extended(sys, m, seq);
    case TestFamily::Interleaved:
      return is_interleaved(m, seq);
    case TestFamily::SoftReset:
      return is_soft_reset_shape(sys, m, seq);
    case TestFamily::HardReset:
      return is_hard_reset_shape(sys, seq);
  }
  return false;
}

}  // namespace sqed
