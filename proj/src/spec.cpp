#include "sqed/spec.hpp"

#include <string>

#include "sqed/errors.hpp"

namespace sqed {

SpecRelation::SpecRelation(std::uint32_t values, std::vector<OpcodeFn> fns)
    : values_(values), fns_(std::move(fns)) {
  if (values_ < 2) throw ConfigError("contract needs at least two values");
}

Value SpecRelation::apply(OpcodeId op, Value a, Value b) const {
  if (!covers(op))
    throw DomainError("opcode id " + std::to_string(op) +
                      " has no contract function");
  Value v = fns_[op](a, b);
  if (v >= values_)
    throw DomainError("contract function for opcode " + std::to_string(op) +
                      " produced out-of-range value " + std::to_string(v));
  return v;
}

bool spec_holds(const SpecRelation& spec, const TransitionSystem& sys,
                const State& s, const Instruction& i, const State& s2) {
  sys.validate_state(s);
  sys.validate_state(s2);
  sys.validate_instr(i);
  if (sys.opcode(i.op).role != OpcodeRole::Regular || !spec.covers(i.op))
    throw DomainError("contract is only defined for regular opcodes, got " +
                      sys.instr_to_string(i));
  const Value want = spec.apply(i.op, s.arch[i.in[0]], s.arch[i.in[1]]);
  for (Location l = 0; l < sys.locations(); ++l) {
    if (l == i.out) {
      if (s2.arch[l] != want) return false;
    } else if (s2.arch[l] != s.arch[l]) {
      return false;
    }
  }
  return true;
}

ViolationKind classify_violation(const SpecRelation& spec,
                                 const TransitionSystem& sys, const State& s,
                                 const Instruction& i, const State& s2) {
  if (spec_holds(spec, sys, s, i, s2))
    throw DomainError("transition conforms to the contract; nothing to classify");
  const Value want = spec.apply(i.op, s.arch[i.in[0]], s.arch[i.in[1]]);
  const bool wrong_out = s2.arch[i.out] != want;
  bool stomped = false;
  for (Location l = 0; l < sys.locations(); ++l)
    if (l != i.out && s2.arch[l] != s.arch[l]) {
      stomped = true;
      break;
    }
  if (wrong_out && stomped) return ViolationKind::Both;
  return wrong_out ? ViolationKind::TypeA : ViolationKind::TypeB;
}

}  // namespace sqed
