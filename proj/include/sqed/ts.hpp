#ifndef SQED_TS_HPP
#define SQED_TS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sqed/errors.hpp"
#include "sqed/types.hpp"

namespace sqed {

struct OpcodeInfo {
  std::string name;
  OpcodeRole role = OpcodeRole::Regular;
  // True iff the opcode's result equals its first operand for every operand
  // pair. Lets structural checks recognize self-moves as NOP-set members.
  bool copies_first = false;
};

// Append-only intern table for hard-reset targets. Hard-reset instructions
// carry an index into this table in their `out` field; the family is
// conceptually indexed by initial states, which do not fit in location fields.
class ResetTargets {
 public:
  std::uint32_t intern(const State& target);
  // nullptr when the index was never handed out.
  const State* lookup(std::uint32_t index) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::unique_ptr<State>> targets_;
  std::map<State, std::uint32_t> index_;
};

struct Path {
  std::vector<State> states;  // states.size() == instrs.size() + 1
  InstrSeq instrs;

  const State& initial() const { return states.front(); }
  const State& final_state() const { return states.back(); }
};

// Finite deterministic processor model. The architectural part is a total
// assignment L -> V; the non-architectural part is an index into an
// enumerated finite set whose element 0 is the reset point n0.
class TransitionSystem {
 public:
  using Delta = std::function<State(const State&, const Instruction&)>;

  TransitionSystem(std::string name, std::uint32_t values,
                   std::uint32_t locations, std::uint32_t narch_count,
                   std::vector<OpcodeInfo> opcodes, Delta delta);

  const std::string& name() const { return name_; }
  std::uint32_t values() const { return values_; }
  std::uint32_t locations() const { return locations_; }
  std::uint32_t narch_count() const { return narch_count_; }

  const std::vector<OpcodeInfo>& opcodes() const { return opcodes_; }
  const OpcodeInfo& opcode(OpcodeId id) const;
  std::optional<OpcodeId> find_opcode(const std::string& name) const;
  std::optional<OpcodeId> role_opcode(OpcodeRole role) const;

  bool is_initial(const State& s) const { return s.narch == 0; }
  State initial_state(ArchState arch) const;

  // Executes one instruction. Rejects malformed states and instructions;
  // defined on every well-formed (state, instruction) pair.
  State step(const State& s, const Instruction& i) const;
  Path run(const State& s0, const InstrSeq& seq) const;

  // True iff executing i preserves the architectural part from every state.
  bool is_nop_instr(const Instruction& i) const;

  std::uint32_t intern_reset_target(const State& target) const;
  const State* reset_target(std::uint32_t index) const;

  void validate_state(const State& s) const;
  void validate_instr(const Instruction& i) const;

  std::string instr_to_string(const Instruction& i) const;
  std::string seq_to_string(const InstrSeq& seq) const;

 private:
  std::string name_;
  std::uint32_t values_;
  std::uint32_t locations_;
  std::uint32_t narch_count_;
  std::vector<OpcodeInfo> opcodes_;
  Delta delta_;
  std::shared_ptr<ResetTargets> resets_;
};

// Every (opcode, out, in1, in2) combination over regular-role opcodes,
// in instruction order.
InstrSeq regular_alphabet(const TransitionSystem& sys);

struct Reach {
  struct Node {
    State state;
    std::uint32_t depth = 0;
    // Index of the predecessor node, -1 for an initial state.
    std::int32_t pred = -1;
    Instruction via;
  };
  std::vector<Node> nodes;  // BFS order; deterministic for fixed inputs
  bool complete = true;     // false when the state budget cut exploration off

  std::size_t size() const { return nodes.size(); }
};

// Breadth-first closure of `inits` under `alphabet`, cut at `depth` steps.
// Stops early with complete=false past `max_states`.
Reach reach_bfs(const TransitionSystem& sys, const std::vector<State>& inits,
                const InstrSeq& alphabet, std::uint32_t depth,
                std::size_t max_states);

// Shortest instruction sequence recorded for nodes[idx].
InstrSeq reach_prefix(const Reach& r, std::size_t idx);

// Root node index for nodes[idx] (the initial state its prefix starts from).
std::size_t reach_root(const Reach& r, std::size_t idx);

// The states of reach_bfs in BFS order. Throws ResourceError carrying the
// partial count when the budget cuts exploration off.
std::vector<State> enumerate_reachable(const TransitionSystem& sys,
                                       const std::vector<State>& inits,
                                       const InstrSeq& alphabet,
                                       std::uint32_t depth,
                                       std::size_t max_states);

}  // namespace sqed

#endif
