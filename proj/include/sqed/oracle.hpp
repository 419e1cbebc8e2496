#ifndef SQED_ORACLE_HPP
#define SQED_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sqed/spec.hpp"
#include "sqed/ts.hpp"
#include "sqed/types.hpp"

namespace sqed {

struct Budget {
  std::size_t max_states = 1u << 20;
  std::size_t max_tests = 50'000'000;
};

// An instruction together with every explored state where executing it
// breaks the contract. Triggers are sorted and deduplicated.
struct Bug {
  Instruction instr;
  std::vector<State> triggers;
};

struct OracleResult {
  std::vector<Bug> bugs;        // ordered by instruction
  bool complete = true;         // false when the state budget was hit
  std::size_t states_visited = 0;
  std::size_t checks = 0;
};

// Ground truth by brute force: walk every state reachable from `inits`
// within `depth` steps of `alphabet`, execute every instruction of
// `alphabet` there, and record contract violations. Never consults QED
// machinery. `alphabet` must be regular-role; defaults to the full
// regular alphabet when empty.
OracleResult find_bugs(const TransitionSystem& sys, const SpecRelation& spec,
                       const std::vector<State>& inits, std::uint32_t depth,
                       const InstrSeq& alphabet = {}, Budget budget = {},
                       unsigned jobs = 1);

struct SingleInstrResult {
  bool correct = true;
  std::optional<Instruction> instr;  // first violating instruction
  std::optional<State> state;        // initial state it violates from
};

// Contract conformance of every alphabet instruction from every given
// initial state (depth-0 slice of correctness).
SingleInstrResult single_instruction_correct(const TransitionSystem& sys,
                                             const SpecRelation& spec,
                                             const std::vector<State>& inits,
                                             const InstrSeq& alphabet = {});

struct CorrectnessResult {
  bool correct = true;
  bool complete = true;
  std::optional<Instruction> instr;
  std::optional<State> state;
};

// Direct sweep: conformance at every reachable state within `depth`.
// Kept separate from find_bugs so the two can cross-check each other.
CorrectnessResult bounded_correct(const TransitionSystem& sys,
                                  const SpecRelation& spec,
                                  const std::vector<State>& inits,
                                  std::uint32_t depth,
                                  const InstrSeq& alphabet = {},
                                  Budget budget = {});

}  // namespace sqed

#endif
