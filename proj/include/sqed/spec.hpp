#ifndef SQED_SPEC_HPP
#define SQED_SPEC_HPP

#include <functional>
#include <vector>

#include "sqed/ts.hpp"
#include "sqed/types.hpp"

namespace sqed {

// Intended result of a regular opcode as a function of its two operand values.
using OpcodeFn = std::function<Value(Value, Value)>;

// The abstract instruction-set contract: executing i from s must write
// f_op(inputs) to out and leave every other location unchanged. Only the
// architectural part is constrained; narch is free.
class SpecRelation {
 public:
  SpecRelation(std::uint32_t values, std::vector<OpcodeFn> regular_fns);

  std::uint32_t values() const { return values_; }
  bool covers(OpcodeId op) const {
    return op < fns_.size() && fns_[op] != nullptr;
  }
  Value apply(OpcodeId op, Value a, Value b) const;

 private:
  std::uint32_t values_;
  std::vector<OpcodeFn> fns_;  // indexed by OpcodeId; null for non-regular
};

// Whether the concrete transition s -> s2 under i satisfies the contract.
// i must be covered (regular-role); reset and NOP machinery is outside the
// contract's domain.
bool spec_holds(const SpecRelation& spec, const TransitionSystem& sys,
                const State& s, const Instruction& i, const State& s2);

enum class ViolationKind { TypeA, TypeB, Both };

// Classifies a violating transition: TypeA = wrong value at the output,
// TypeB = some non-output location changed. Rejects conforming transitions.
ViolationKind classify_violation(const SpecRelation& spec,
                                 const TransitionSystem& sys, const State& s,
                                 const Instruction& i, const State& s2);

}  // namespace sqed

#endif
