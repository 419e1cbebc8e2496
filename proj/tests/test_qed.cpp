#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sqed/errors.hpp>
#include <sqed/qed.hpp>
#include <sqed/search.hpp>
#include <sqed/zoo.hpp>

using namespace sqed;

namespace {

const Instruction kAdd01{0, 0, {0, 1}};  // ADD l0 <- l0 l1
const Instruction kMul10{1, 1, {1, 0}};  // MUL l1 <- l1 l0

}  // namespace

TEST_CASE("consistency compares each original with its duplicate") {
  DupMap m = half_split(4);
  auto b = build_system(builtin_config("toy4"));
  CHECK(qed_consistent(m, b.sys.initial_state({1, 2, 1, 2})));
  CHECK_FALSE(qed_consistent(m, b.sys.initial_state({1, 2, 1, 3})));
  CHECK_FALSE(qed_consistent(m, b.sys.initial_state({1, 2, 3, 2})));
  // narch plays no part
  State s = b.sys.initial_state({0, 0, 0, 0});
  s.narch = 3;
  CHECK(qed_consistent(m, s));
}

TEST_CASE("a standard test is the original half followed by its mirror") {
  DupMap m = half_split(4);
  QedTest t = make_standard_test(m, {kAdd01, kMul10});
  CHECK(t.family == TestFamily::Standard);
  REQUIRE(t.instrs.size() == 4);
  CHECK(t.instrs[0] == kAdd01);
  CHECK(t.instrs[1] == kMul10);
  CHECK(t.instrs[2] == Instruction{0, 2, {2, 3}});
  CHECK(t.instrs[3] == Instruction{1, 3, {3, 2}});
}

TEST_CASE("family names round-trip") {
  for (TestFamily f : {TestFamily::Standard, TestFamily::Extended,
                       TestFamily::Interleaved, TestFamily::SoftReset,
                       TestFamily::HardReset}) {
    auto back = family_from_name(family_name(f));
    REQUIRE(back);
    CHECK(*back == f);
  }
  CHECK_FALSE(family_from_name("sideways"));
}

TEST_CASE("standard membership is structural and exact") {
  auto b = build_system(builtin_config("toy4"));
  DupMap m = b.dup;
  QedTest t = make_standard_test(m, {kAdd01, kMul10});
  CHECK(is_qed_test(b.sys, m, t.instrs, TestFamily::Standard));

  InstrSeq swapped = {t.instrs[0], t.instrs[1], t.instrs[3], t.instrs[2]};
  CHECK_FALSE(is_qed_test(b.sys, m, swapped, TestFamily::Standard));

  InstrSeq odd = {kAdd01, kMul10, t.instrs[2]};
  CHECK_FALSE(is_qed_test(b.sys, m, odd, TestFamily::Standard));

  CHECK_FALSE(is_qed_test(b.sys, m, {}, TestFamily::Standard));
}

TEST_CASE("one architecture-preserving insertion turns standard into extended") {
  auto b = build_system(builtin_config("toy4"));
  QedTest t = make_standard_test(b.dup, {kAdd01, kMul10});
  InstrSeq padded = t.instrs;
  padded.insert(padded.begin() + 2, Instruction{2, 1, {1, 0}});  // MOV l1<-l1
  CHECK(is_qed_test(b.sys, b.dup, padded, TestFamily::Extended));
  CHECK_FALSE(is_qed_test(b.sys, b.dup, padded, TestFamily::Standard));
  // a value-changing insertion disqualifies the sequence
  InstrSeq bad = t.instrs;
  bad.insert(bad.begin() + 2, Instruction{0, 1, {0, 1}});
  CHECK_FALSE(is_qed_test(b.sys, b.dup, bad, TestFamily::Extended));
  // every standard test is an extended test with zero insertions
  CHECK(is_qed_test(b.sys, b.dup, t.instrs, TestFamily::Extended));
}

TEST_CASE("interleavings keep each duplicate after its original") {
  auto b = build_system(builtin_config("toy4"));
  Instruction d0 = dup_instr(b.dup, kAdd01);
  Instruction d1 = dup_instr(b.dup, kMul10);
  CHECK(is_qed_test(b.sys, b.dup, {kAdd01, d0, kMul10, d1},
                    TestFamily::Interleaved));
  CHECK(is_qed_test(b.sys, b.dup, {kAdd01, kMul10, d0, d1},
                    TestFamily::Interleaved));
  // duplicate of the second original before that original ran
  CHECK_FALSE(is_qed_test(b.sys, b.dup, {kAdd01, d1, kMul10, d0},
                          TestFamily::Interleaved));
  // duplicate stream reordered
  CHECK_FALSE(is_qed_test(b.sys, b.dup, {kAdd01, kMul10, d1, d0},
                          TestFamily::Interleaved));
}

TEST_CASE("reset families have their own shapes") {
  auto b = build_system(builtin_config("mulmul4"));
  InstrSeq prefix = {Instruction{1, 0, {0, 0}}, Instruction{1, 1, {0, 0}}};
  QedTest sr = build_soft_reset_seq_test(b.sys, b.dup, prefix);
  CHECK(sr.family == TestFamily::SoftReset);
  CHECK(sr.instrs.size() == 3 * prefix.size());
  CHECK(sr.meta.k == prefix.size());
  CHECK(is_qed_test(b.sys, b.dup, sr.instrs, TestFamily::SoftReset));
  CHECK_FALSE(is_qed_test(b.sys, b.dup, sr.instrs, TestFamily::Standard));

  State mu = b.sys.initial_state({0, 0, 0, 0});
  QedTest hr = build_hard_reset_test(b.sys, prefix, mu);
  CHECK(hr.family == TestFamily::HardReset);
  CHECK(hr.instrs.size() == 2 * prefix.size() + 2);
  REQUIRE(hr.meta.required_init);
  CHECK(*hr.meta.required_init == mu);
  CHECK(is_qed_test(b.sys, b.dup, hr.instrs, TestFamily::HardReset));
  // hard-reset machinery is not a standard test
  CHECK_FALSE(is_qed_test(b.sys, b.dup, hr.instrs, TestFamily::Standard));
}

TEST_CASE("a clean machine passes its standard tests") {
  auto b = build_system(builtin_config("toy4"));
  QedTest t = make_standard_test(b.dup, {kAdd01, kMul10});
  State s0 = b.sys.initial_state({1, 2, 1, 2});
  Verdict v = run_qed_test(b.sys, b.dup, t, s0);
  CHECK(v.pass);
  CHECK(v.mismatches.empty());
  CHECK_FALSE(v.witness);
  CHECK(v.trace.states.size() == t.instrs.size() + 1);
}

TEST_CASE("the multiplier bug fails its minimal standard test") {
  auto b = build_system(builtin_config("mulmul4"));
  QedTest t = make_standard_test(b.dup, {Instruction{1, 0, {0, 0}}});
  State s0 = b.sys.initial_state({0, 0, 0, 0});
  Verdict v = run_qed_test(b.sys, b.dup, t, s0);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness);
  CHECK(*v.witness == std::pair<Location, Location>{0, 2});
  CHECK(v.mismatches ==
        std::vector<std::pair<Location, Location>>{{0, 2}});
}

TEST_CASE("duplication families insist on a consistent start") {
  auto b = build_system(builtin_config("toy4"));
  QedTest t = make_standard_test(b.dup, {kAdd01});
  State split = b.sys.initial_state({1, 0, 0, 0});
  CHECK_THROWS_AS(run_qed_test(b.sys, b.dup, t, split), DomainError);
}

TEST_CASE("hard-reset tests are judged on full-state recurrence") {
  InstrSeq prefix = {Instruction{1, 0, {0, 0}}, Instruction{1, 1, {0, 0}}};

  auto clean = build_system(builtin_config("toy4"));
  State mu = clean.sys.initial_state({2, 0, 0, 0});
  QedTest t = build_hard_reset_test(clean.sys, prefix, mu);
  CHECK(run_hard_reset_test(clean.sys, t, mu).pass);

  // the soft reset before the replayed last instruction clears the opcode
  // history, so a history-triggered bug fires in one run but not the other
  auto buggy = build_system(builtin_config("mulmul4"));
  State bmu = buggy.sys.initial_state({2, 0, 0, 0});
  QedTest bt = build_hard_reset_test(buggy.sys, prefix, bmu);
  Verdict v = run_hard_reset_test(buggy.sys, bt, bmu);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness);
  CHECK(*v.witness == std::pair<Location, Location>{1, 1});

  // wrong starting state is rejected rather than misjudged
  CHECK_THROWS_AS(
      run_hard_reset_test(buggy.sys, bt, buggy.sys.initial_state({3, 3, 3, 3})),
      DomainError);
  // the dispatcher routes hard-reset tests to the same judgement
  CHECK(run_qed_test(buggy.sys, buggy.dup, bt, bmu).pass == v.pass);
}

TEST_CASE("mismatch lists are ascending and the witness is least") {
  auto rc = build_system(builtin_config("ridecore-lite"));
  Instruction io1{0, 12, {4, 15}};
  Instruction io2{1, 15, {12, 12}};
  QedTest t = make_standard_test(rc.dup, {io2, io1, io2});
  State s0 = rc.sys.initial_state(ArchState(32, 0));
  Verdict v = run_qed_test(rc.sys, rc.dup, t, s0);
  CHECK_FALSE(v.pass);
  REQUIRE(v.mismatches.size() == 2);
  CHECK(v.mismatches[0] == std::pair<Location, Location>{12, 28});
  CHECK(v.mismatches[1] == std::pair<Location, Location>{15, 31});
  REQUIRE(v.witness);
  CHECK(*v.witness == v.mismatches[0]);
}
