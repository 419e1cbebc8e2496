#ifndef SQED_DUP_HPP
#define SQED_DUP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sqed/types.hpp"

namespace sqed {

enum class InstrClass { Original, Duplicate, Mixed };

// Equal-size split of the location set into originals and duplicates with a
// fixed bijection between the halves. Immutable once built.
class DupMap {
 public:
  // `originals` lists O_L; `pairs[k]` maps originals[k] to its duplicate.
  // Rejects overlaps, gaps, repeated targets and size mismatches.
  static DupMap make(std::uint32_t locations,
                     const std::vector<Location>& originals,
                     const std::vector<Location>& duplicates);

  std::uint32_t locations() const { return static_cast<std::uint32_t>(to_dup_.size()); }
  bool is_original(Location l) const { return to_dup_[l] >= 0; }
  bool is_duplicate(Location l) const { return to_orig_[l] >= 0; }
  Location dup_of(Location l) const;   // defined on originals
  Location orig_of(Location l) const;  // defined on duplicates

  // Originals in ascending location order.
  const std::vector<Location>& originals() const { return originals_; }

 private:
  DupMap() = default;
  std::vector<std::int32_t> to_dup_;
  std::vector<std::int32_t> to_orig_;
  std::vector<Location> originals_;
};

// Offset partition: originals are 0..L/2-1, duplicate of k is k + L/2.
DupMap half_split(std::uint32_t locations);

// Rewrites every location field through the bijection. Requires all of the
// instruction's locations to be originals.
Instruction dup_instr(const DupMap& m, const Instruction& i);
InstrSeq dup_seq(const DupMap& m, const InstrSeq& seq);

// Original iff every location is in O_L, Duplicate iff every location is in
// D_L, Mixed otherwise.
InstrClass classify_instr(const DupMap& m, const Instruction& i);

}  // namespace sqed

#endif
