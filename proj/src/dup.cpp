#include "sqed/dup.hpp"

#include <string>

#include "sqed/errors.hpp"

namespace sqed {

DupMap DupMap::make(std::uint32_t locations,
                    const std::vector<Location>& originals,
                    const std::vector<Location>& duplicates) {
  if (locations < 2 || locations % 2 != 0)
    throw ConfigError("location count must be even and at least 2");
  if (originals.size() != duplicates.size())
    throw ConfigError("original and duplicate lists differ in length");
  if (originals.size() * 2 != locations)
    throw ConfigError("partition must cover exactly half the locations, got " +
                      std::to_string(originals.size()) + " of " +
                      std::to_string(locations));

  DupMap m;
  m.to_dup_.assign(locations, -1);
  m.to_orig_.assign(locations, -1);
  for (std::size_t k = 0; k < originals.size(); ++k) {
    Location o = originals[k];
    Location d = duplicates[k];
    if (o >= locations)
      throw ConfigError("original l" + std::to_string(o) + " out of range");
    if (d >= locations)
      throw ConfigError("duplicate l" + std::to_string(d) + " out of range");
    if (m.to_dup_[o] >= 0)
      throw ConfigError("l" + std::to_string(o) + " listed twice as original");
    if (m.to_orig_[d] >= 0)
      throw ConfigError("l" + std::to_string(d) + " targeted twice as duplicate");
    m.to_dup_[o] = static_cast<std::int32_t>(d);
    m.to_orig_[d] = static_cast<std::int32_t>(o);
  }
  for (Location l = 0; l < locations; ++l) {
    if (m.to_dup_[l] >= 0 && m.to_orig_[l] >= 0)
      throw ConfigError("l" + std::to_string(l) +
                        " appears on both sides of the partition");
    if (m.to_dup_[l] < 0 && m.to_orig_[l] < 0)
      throw ConfigError("l" + std::to_string(l) +
                        " belongs to neither side of the partition");
  }
  m.originals_.reserve(originals.size());
  for (Location l = 0; l < locations; ++l)
    if (m.to_dup_[l] >= 0) m.originals_.push_back(l);
  return m;
}

Location DupMap::dup_of(Location l) const {
  if (l >= to_dup_.size() || to_dup_[l] < 0)
    throw DomainError("l" + std::to_string(l) + " is not an original location");
  return static_cast<Location>(to_dup_[l]);
}

Location DupMap::orig_of(Location l) const {
  if (l >= to_orig_.size() || to_orig_[l] < 0)
    throw DomainError("l" + std::to_string(l) + " is not a duplicate location");
  return static_cast<Location>(to_orig_[l]);
}

DupMap half_split(std::uint32_t locations) {
  if (locations < 2 || locations % 2 != 0)
    throw ConfigError("location count must be even and at least 2");
  std::vector<Location> orig, dup;
  for (Location l = 0; l < locations / 2; ++l) {
    orig.push_back(l);
    dup.push_back(l + locations / 2);
  }
  return DupMap::make(locations, orig, dup);
}

Instruction dup_instr(const DupMap& m, const Instruction& i) {
  return Instruction{i.op, m.dup_of(i.out), {m.dup_of(i.in[0]), m.dup_of(i.in[1])}};
}

InstrSeq dup_seq(const DupMap& m, const InstrSeq& seq) {
  InstrSeq out;
  out.reserve(seq.size());
  for (const Instruction& i : seq) out.push_back(dup_instr(m, i));
  return out;
}

InstrClass classify_instr(const DupMap& m, const Instruction& i) {
  int orig = 0, dup = 0;
  for (Location l : {i.out, i.in[0], i.in[1]}) {
    if (l >= m.locations())
      throw DomainError("location index " + std::to_string(l) +
                        " outside the partitioned range");
    if (m.is_original(l))
      ++orig;
    else
      ++dup;
  }
  if (orig == 3) return InstrClass::Original;
  if (dup == 3) return InstrClass::Duplicate;
  return InstrClass::Mixed;
}

}  // namespace sqed
