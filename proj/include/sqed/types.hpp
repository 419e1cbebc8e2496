#ifndef SQED_TYPES_HPP
#define SQED_TYPES_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

namespace sqed {

// Architectural values are residues mod |V|; locations and opcodes are
// dense indices into the owning system's tables.
using Value = std::uint32_t;
using Location = std::uint32_t;
using OpcodeId = std::uint32_t;

enum class OpcodeRole { Regular, Nop, SoftReset, HardReset };

// One instruction: two source locations, one destination.
// For hard-reset-role opcodes `out` is an index into the system's
// reset-target table instead of a location (see TransitionSystem).
struct Instruction {
  OpcodeId op = 0;
  Location out = 0;
  std::array<Location, 2> in = {0, 0};

  friend bool operator==(const Instruction& a, const Instruction& b) {
    return a.op == b.op && a.out == b.out && a.in == b.in;
  }
  friend bool operator!=(const Instruction& a, const Instruction& b) {
    return !(a == b);
  }
  // Total order used by every deterministic enumeration.
  friend bool operator<(const Instruction& a, const Instruction& b) {
    return std::tie(a.op, a.out, a.in[0], a.in[1]) <
           std::tie(b.op, b.out, b.in[0], b.in[1]);
  }
};

using InstrSeq = std::vector<Instruction>;

// Total assignment of values to locations.
using ArchState = std::vector<Value>;

// narch is an index into the system's enumerated non-architectural set;
// index 0 is the initial element n0.
struct State {
  ArchState arch;
  std::uint32_t narch = 0;

  friend bool operator==(const State& a, const State& b) {
    return a.narch == b.narch && a.arch == b.arch;
  }
  friend bool operator!=(const State& a, const State& b) { return !(a == b); }
  friend bool operator<(const State& a, const State& b) {
    if (a.narch != b.narch) return a.narch < b.narch;
    return a.arch < b.arch;
  }
};

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(s.narch);
    for (Value v : s.arch) mix(v);
    return h;
  }
};

}  // namespace sqed

#endif
