#ifndef SQED_ZOO_HPP
#define SQED_ZOO_HPP

#include <optional>
#include <string>
#include <vector>

#include "sqed/dup.hpp"
#include "sqed/inits.hpp"
#include "sqed/qed.hpp"
#include "sqed/spec.hpp"
#include "sqed/ts.hpp"

namespace sqed {

struct OpcodeDecl {
  std::string name;
  OpcodeRole role = OpcodeRole::Regular;
  std::string expr;       // regular-role result as a function of a, b
  std::string spec_expr;  // contract override; empty means same as expr
};

// When an injection fires: the executing opcode matches, the most recent
// window entries match `history` (oldest first), and any location
// constraints hold.
struct TriggerPattern {
  std::vector<std::string> history;
  std::string opcode;
  std::optional<Location> out, in1, in2;
};

struct BugEffect {
  bool type_a = false;
  std::uint32_t delta_v = 1;  // added to the intended result, mod |V|
  bool type_b = false;
  Location bad = 0;  // overwritten location; skipped if it equals the output
  Value write = 0;
};

struct BugInjection {
  TriggerPattern trigger;
  BugEffect effect;
};

struct SearchDefaults {
  std::uint32_t bound = 2;
  std::vector<TestFamily> families = {TestFamily::Standard};
  InstrSeq alphabet;  // empty = every original regular instruction
  InitEnum inits;
  std::uint32_t max_insertions = 2;  // Extended family
};

struct ProcessorConfig {
  std::string name;
  std::uint32_t values = 8;
  std::uint32_t locations = 0;
  std::uint32_t history = 1;  // opcode-history window length
  std::vector<OpcodeDecl> opcodes;
  bool soft_reset = false;
  bool hard_reset = false;
  // Parallel arrays defining the location split; empty = low half originals.
  std::vector<Location> dup_originals;
  std::vector<Location> dup_duplicates;
  std::vector<BugInjection> bugs;
  SearchDefaults search;
};

struct BuiltSystem {
  TransitionSystem sys;
  SpecRelation spec;
  DupMap dup;
  ProcessorConfig config;  // validated and normalized

  bool reference() const { return config.bugs.empty(); }
};

// Validates the declaration and assembles the executable model. The
// transition function applies the declared opcode semantics, then every
// matching injection, then advances the opcode-history window. Reset roles
// bypass all of that: soft reset clears the window, hard reset jumps to the
// interned target.
BuiltSystem build_system(const ProcessorConfig& cfg);

Instruction soft_reset_instr(const TransitionSystem& sys);
Instruction hard_reset_instr(const TransitionSystem& sys, const State& target);

// Architecture-preserving instructions available as insertions: one
// canonical instruction per nop-role opcode, the soft reset if present, and
// every self-move of an uninjected copying opcode.
InstrSeq nop_alphabet(const TransitionSystem& sys);

// Original regular instructions under the partition, in instruction order.
InstrSeq original_alphabet(const TransitionSystem& sys, const DupMap& m);

// Built-in corpus. Names: toy4, mulmul4, stomp4, both4, movadd4, si4,
// deep4, tiny2, tiny2x, ridecore-lite.
std::vector<std::string> builtin_names();
ProcessorConfig builtin_config(const std::string& name);
std::vector<ProcessorConfig> builtin_corpus();

}  // namespace sqed

#endif
