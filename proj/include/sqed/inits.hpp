#ifndef SQED_INITS_HPP
#define SQED_INITS_HPP

#include <cstdint>
#include <vector>

#include "sqed/dup.hpp"
#include "sqed/ts.hpp"

namespace sqed {

// How a search or sweep picks its initial states. Sampling is seeded and
// reproducible; exhaustive enumeration is lexicographic by location values.
struct InitEnum {
  enum class Kind { Exhaustive, ZeroOnly, Sample };
  Kind kind = Kind::Exhaustive;
  std::size_t count = 16;    // Sample only
  std::uint64_t seed = 1;    // Sample only
};

// All initial states (every architectural assignment, narch = n0), or the
// all-zero one, or a deterministic sample. Exhaustive enumeration refuses to
// produce more than `max_count` states (ResourceError).
std::vector<State> enumerate_inits(const TransitionSystem& sys,
                                   const InitEnum& how,
                                   std::size_t max_count = 1u << 20);

// Same strategies restricted to QED-consistent states: values are chosen
// freely on the originals and mirrored onto the duplicates.
std::vector<State> enumerate_consistent_inits(const TransitionSystem& sys,
                                              const DupMap& m,
                                              const InitEnum& how,
                                              std::size_t max_count = 1u << 20);

}  // namespace sqed

#endif
