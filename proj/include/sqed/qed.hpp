#ifndef SQED_QED_HPP
#define SQED_QED_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqed/dup.hpp"
#include "sqed/ts.hpp"
#include "sqed/types.hpp"

namespace sqed {

enum class TestFamily { Standard, Extended, Interleaved, SoftReset, HardReset };

const char* family_name(TestFamily f);
std::optional<TestFamily> family_from_name(const std::string& name);

struct TestMeta {
  std::size_t k = 0;          // bug-prefix length for reset-based tests
  char case_kind = 0;         // 'A' or 'B' for bug-specific constructions
  // Location pair the construction predicts will disagree.
  std::optional<std::pair<Location, Location>> expect;
  // Hard-reset tests are tied to one initial state.
  std::optional<State> required_init;
  std::string note;
};

struct QedTest {
  TestFamily family = TestFamily::Standard;
  InstrSeq instrs;
  TestMeta meta;
};

struct Verdict {
  bool pass = true;
  // Disagreeing (l, d(l)) pairs in ascending l order; for the hard-reset
  // criterion both members are the same location.
  std::vector<std::pair<Location, Location>> mismatches;
  std::optional<std::pair<Location, Location>> witness;  // least pair
  Path trace;
};

// s(l) == s(d(l)) for every original l.
bool qed_consistent(const DupMap& m, const State& s);

// The original half followed by its image under the bijection.
QedTest make_standard_test(const DupMap& m, const InstrSeq& originals);

// Executes the test from s0 and judges it: duplication-based families pass
// iff the final state is QED-consistent (s0 must be a QED-consistent initial
// state); the hard-reset family passes iff the architectural state right
// after the bug prefix reappears at the end (s0 must match the test's
// recorded initial state). The contract relation is never consulted.
Verdict run_qed_test(const TransitionSystem& sys, const DupMap& m,
                     const QedTest& t, const State& s0);

// Hard-reset family only; the judgement needs no location partition.
Verdict run_hard_reset_test(const TransitionSystem& sys, const QedTest& t,
                            const State& s0);

// Structural membership in a family. Extended membership treats a
// subsequence as insertions only if every inserted instruction is
// architecture-preserving under sys, which is why sys is a parameter.
bool is_qed_test(const TransitionSystem& sys, const DupMap& m,
                 const InstrSeq& seq, TestFamily family);

}  // namespace sqed

#endif
