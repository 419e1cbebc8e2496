#include "sqed/inits.hpp"

#include <random>
#include <set>
#include <string>

#include "sqed/errors.hpp"

namespace sqed {

namespace {

// |V|^slots with an overflow-safe cap.
std::size_t pow_capped(std::uint64_t base, std::uint32_t slots,
                       std::size_t cap) {
  std::uint64_t n = 1;
  for (std::uint32_t k = 0; k < slots; ++k) {
    if (n > cap / base + 1) return cap + 1;
    n *= base;
    if (n > cap) return cap + 1;
  }
  return static_cast<std::size_t>(n);
}

// Odometer enumeration over `slots` free positions; `place` writes one
// assignment into an arch state.
template <typename Place>
std::vector<State> odometer(const TransitionSystem& sys, std::uint32_t slots,
                            std::size_t max_count, Place place) {
  std::size_t total = pow_capped(sys.values(), slots, max_count);
  if (total > max_count)
    throw ResourceError("initial-state enumeration needs more than " +
                            std::to_string(max_count) +
                            " states; use sampling instead",
                        max_count);
  std::vector<State> out;
  out.reserve(total);
  std::vector<Value> digits(slots, 0);
  for (;;) {
    ArchState arch(sys.locations(), 0);
    place(digits, arch);
    out.push_back(State{std::move(arch), 0});
    std::uint32_t k = slots;
    while (k > 0) {
      --k;
      if (++digits[k] < sys.values()) break;
      digits[k] = 0;
      if (k == 0) return out;
    }
    if (slots == 0) return out;
  }
}

template <typename Place>
std::vector<State> sample(const TransitionSystem& sys, std::uint32_t slots,
                          std::size_t count, std::uint64_t seed, Place place) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, sys.values() - 1);
  std::set<std::vector<Value>> seen;
  std::vector<State> out;
  std::size_t space = pow_capped(sys.values(), slots, count);
  std::size_t want = space <= count ? space : count;
  std::size_t attempts = 0;
  while (out.size() < want && attempts < want * 64 + 1024) {
    ++attempts;
    std::vector<Value> digits(slots);
    for (auto& d : digits) d = dist(rng);
    if (!seen.insert(digits).second) continue;
    ArchState arch(sys.locations(), 0);
    place(digits, arch);
    out.push_back(State{std::move(arch), 0});
  }
  return out;
}

}  // namespace

std::vector<State> enumerate_inits(const TransitionSystem& sys,
                                   const InitEnum& how, std::size_t max_count) {
  auto place = [](const std::vector<Value>& digits, ArchState& arch) {
    for (std::size_t l = 0; l < arch.size(); ++l) arch[l] = digits[l];
  };
  switch (how.kind) {
    case InitEnum::Kind::ZeroOnly:
      return {State{ArchState(sys.locations(), 0), 0}};
    case InitEnum::Kind::Sample:
      return sample(sys, sys.locations(), how.count, how.seed, place);
    case InitEnum::Kind::Exhaustive:
      return odometer(sys, sys.locations(), max_count, place);
  }
  return {};
}

std::vector<State> enumerate_consistent_inits(const TransitionSystem& sys,
                                              const DupMap& m,
                                              const InitEnum& how,
                                              std::size_t max_count) {
  if (m.locations() != sys.locations())
    throw DomainError("partition covers " + std::to_string(m.locations()) +
                      " locations, system has " +
                      std::to_string(sys.locations()));
  const auto& orig = m.originals();
  auto place = [&](const std::vector<Value>& digits, ArchState& arch) {
    for (std::size_t k = 0; k < orig.size(); ++k) {
      arch[orig[k]] = digits[k];
      arch[m.dup_of(orig[k])] = digits[k];
    }
  };
  auto slots = static_cast<std::uint32_t>(orig.size());
  switch (how.kind) {
    case InitEnum::Kind::ZeroOnly:
      return {State{ArchState(sys.locations(), 0), 0}};
    case InitEnum::Kind::Sample:
      return sample(sys, slots, how.count, how.seed, place);
    case InitEnum::Kind::Exhaustive:
      return odometer(sys, slots, max_count, place);
  }
  return {};
}

}  // namespace sqed
