#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sqed/dup.hpp>
#include <sqed/errors.hpp>

using namespace sqed;

namespace {

// Odd/even split of 32 locations: original 2k pairs with duplicate 2k+1.
DupMap odd_even_32() {
  std::vector<Location> orig, dup;
  for (Location l = 0; l < 32; l += 2) {
    orig.push_back(l);
    dup.push_back(l + 1);
  }
  return DupMap::make(32, orig, dup);
}

}  // namespace

TEST_CASE("half split maps a 32-register add the expected way") {
  DupMap m = half_split(32);
  Instruction add{0, 12, {4, 8}};
  Instruction d = dup_instr(m, add);
  CHECK(d == Instruction{0, 28, {20, 24}});
  CHECK(m.dup_of(12) == 28);
  CHECK(m.orig_of(28) == 12);
}

TEST_CASE("the same instruction lands elsewhere under an odd/even split") {
  DupMap m = odd_even_32();
  Instruction add{0, 12, {4, 8}};
  CHECK(dup_instr(m, add) == Instruction{0, 13, {5, 9}});
}

TEST_CASE("the bijection round-trips on every original") {
  for (const DupMap& m : {half_split(32), odd_even_32()}) {
    CHECK(m.originals().size() == 16);
    for (Location o : m.originals()) {
      CHECK(m.is_original(o));
      Location d = m.dup_of(o);
      CHECK(m.is_duplicate(d));
      CHECK_FALSE(m.is_original(d));
      CHECK(m.orig_of(d) == o);
    }
  }
}

TEST_CASE("sequences are duplicated elementwise") {
  DupMap m = half_split(8);
  InstrSeq seq = {Instruction{0, 0, {1, 2}}, Instruction{1, 3, {3, 0}}};
  InstrSeq d = dup_seq(m, seq);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == Instruction{0, 4, {5, 6}});
  CHECK(d[1] == Instruction{1, 7, {7, 4}});
}

TEST_CASE("classification distinguishes the two sides and the mixed rest") {
  DupMap m = half_split(8);
  CHECK(classify_instr(m, Instruction{0, 0, {1, 2}}) == InstrClass::Original);
  CHECK(classify_instr(m, Instruction{0, 4, {5, 6}}) == InstrClass::Duplicate);
  CHECK(classify_instr(m, Instruction{0, 0, {5, 2}}) == InstrClass::Mixed);
  CHECK(classify_instr(m, Instruction{0, 4, {1, 6}}) == InstrClass::Mixed);
}

TEST_CASE("duplicating a non-original instruction is rejected") {
  DupMap m = half_split(8);
  CHECK_THROWS_AS(dup_instr(m, Instruction{0, 4, {5, 6}}), DomainError);
  CHECK_THROWS_AS(dup_instr(m, Instruction{0, 0, {5, 1}}), DomainError);
}

TEST_CASE("partitions must split the locations exactly in half") {
  // overlapping halves
  CHECK_THROWS_AS(DupMap::make(4, {0, 1}, {1, 3}), ConfigError);
  // location out of range
  CHECK_THROWS_AS(DupMap::make(4, {0, 1}, {2, 7}), ConfigError);
  // size mismatch
  CHECK_THROWS_AS(DupMap::make(4, {0}, {2, 3}), ConfigError);
  // gap: location 3 on neither side
  CHECK_THROWS_AS(DupMap::make(6, {0, 1}, {2, 4}), ConfigError);
  // repeated duplicate target
  CHECK_THROWS_AS(DupMap::make(4, {0, 1}, {2, 2}), ConfigError);
  // odd location count has no equal split
  CHECK_THROWS_AS(half_split(5), ConfigError);
}

TEST_CASE("originals list is ascending regardless of declaration order") {
  DupMap m = DupMap::make(4, {1, 0}, {3, 2});
  CHECK(m.originals() == std::vector<Location>{0, 1});
  CHECK(m.dup_of(1) == 3);
  CHECK(m.dup_of(0) == 2);
}
