#include "sqed/oracle.hpp"

#include <algorithm>
#include <map>

#include "sqed/errors.hpp"
#include "sqed/parallel.hpp"

namespace sqed {

namespace {

InstrSeq oracle_alphabet(const TransitionSystem& sys, const SpecRelation& spec,
                         const InstrSeq& requested) {
  InstrSeq out = requested.empty() ? regular_alphabet(sys) : requested;
  for (const Instruction& i : out) {
    if (sys.opcode(i.op).role != OpcodeRole::Regular || !spec.covers(i.op))
      throw DomainError("oracle alphabet must be regular-role, got " +
                        sys.instr_to_string(i));
    sys.validate_instr(i);
  }
  return out;
}

}  // namespace

OracleResult find_bugs(const TransitionSystem& sys, const SpecRelation& spec,
                       const std::vector<State>& inits, std::uint32_t depth,
                       const InstrSeq& alphabet, Budget budget, unsigned jobs) {
  const InstrSeq alpha = oracle_alphabet(sys, spec, alphabet);
  Reach reach = reach_bfs(sys, inits, alpha, depth, budget.max_states);

  OracleResult res;
  res.complete = reach.complete;
  res.states_visited = reach.size();
  res.checks = reach.size() * alpha.size();

  // Per-instruction trigger lists; instruction index gives a deterministic
  // merge no matter how many jobs ran.
  std::vector<std::vector<State>> triggers(alpha.size());
  parallel_for(alpha.size(), jobs, [&](std::size_t ai) {
    const Instruction& i = alpha[ai];
    std::vector<State>& mine = triggers[ai];
    for (const auto& node : reach.nodes) {
      State s2 = sys.step(node.state, i);
      if (!spec_holds(spec, sys, node.state, i, s2)) mine.push_back(node.state);
    }
  });

  std::map<Instruction, std::vector<State>> grouped;
  for (std::size_t ai = 0; ai < alpha.size(); ++ai) {
    if (triggers[ai].empty()) continue;
    auto& dst = grouped[alpha[ai]];
    dst.insert(dst.end(), triggers[ai].begin(), triggers[ai].end());
  }
  for (auto& [instr, trig] : grouped) {
    std::sort(trig.begin(), trig.end());
    trig.erase(std::unique(trig.begin(), trig.end()), trig.end());
    res.bugs.push_back(Bug{instr, std::move(trig)});
  }
  return res;
}

SingleInstrResult single_instruction_correct(const TransitionSystem& sys,
                                             const SpecRelation& spec,
                                             const std::vector<State>& inits,
                                             const InstrSeq& alphabet) {
  const InstrSeq alpha = oracle_alphabet(sys, spec, alphabet);
  SingleInstrResult res;
  for (const State& s : inits) {
    if (!sys.is_initial(s))
      throw DomainError("single-instruction sweep takes initial states only");
    for (const Instruction& i : alpha) {
      if (!spec_holds(spec, sys, s, i, sys.step(s, i))) {
        res.correct = false;
        res.instr = i;
        res.state = s;
        return res;
      }
    }
  }
  return res;
}

CorrectnessResult bounded_correct(const TransitionSystem& sys,
                                  const SpecRelation& spec,
                                  const std::vector<State>& inits,
                                  std::uint32_t depth, const InstrSeq& alphabet,
                                  Budget budget) {
  const InstrSeq alpha = oracle_alphabet(sys, spec, alphabet);
  Reach reach = reach_bfs(sys, inits, alpha, depth, budget.max_states);
  CorrectnessResult res;
  res.complete = reach.complete;
  for (const auto& node : reach.nodes) {
    for (const Instruction& i : alpha) {
      if (!spec_holds(spec, sys, node.state, i, sys.step(node.state, i))) {
        res.correct = false;
        res.instr = i;
        res.state = node.state;
        return res;
      }
    }
  }
  return res;
}

}  // namespace sqed
