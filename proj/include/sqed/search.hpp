#ifndef SQED_SEARCH_HPP
#define SQED_SEARCH_HPP

#include <cstdint>
#include <vector>

#include "sqed/dup.hpp"
#include "sqed/inits.hpp"
#include "sqed/oracle.hpp"
#include "sqed/qed.hpp"
#include "sqed/ts.hpp"

namespace sqed {

struct SearchConfig {
  std::uint32_t bound = 2;  // original-half length / bug-prefix cap
  std::vector<TestFamily> families = {TestFamily::Standard};
  // Empty = every original regular instruction (duplication families) or
  // every regular instruction (hard-reset family).
  InstrSeq alphabet;
  InitEnum inits;
  std::uint32_t max_insertions = 2;  // Extended family
  Budget budget;
  unsigned jobs = 1;
};

struct SearchStats {
  // Canonical sequential count of (test, initial state) executions up to and
  // including the failure; independent of --jobs by construction.
  std::size_t tests_executed = 0;
  std::size_t states_visited = 0;  // hard-reset reachability nodes
  std::size_t inits = 0;
};

struct SearchResult {
  bool failure = false;
  bool complete = true;  // false when a budget cut some family short
  QedTest test;          // meaningful when failure
  Verdict verdict;
  State init;
  SearchStats stats;
};

// Bounded exhaustive hunt for a failing test. Candidates are explored
// shortest-first and lexicographically within each family; with several
// families enabled the shortest failure wins, family order breaking ties.
// The contract relation is never consulted: a verdict needs only the
// transition function and the location partition.
SearchResult bmc_search(const TransitionSystem& sys, const DupMap& m,
                        const SearchConfig& cfg);

// Test of shape <prefix ; reset-to-mu ; prefix[0..k-2] ; soft-reset ;
// prefix[k-1]> tied to initial state mu. Requires k >= 2 and both reset
// instructions.
QedTest build_hard_reset_test(const TransitionSystem& sys,
                              const InstrSeq& prefix, const State& mu);

// Runs a hard-reset test from mu and compares the state right after the
// prefix with the final state, location by location.
Verdict check_hard_reset_test(const TransitionSystem& sys, const QedTest& t,
                              const State& mu);

// Shape <prefix ; (soft-reset, dup(prefix[j]))*> with no trace checks; the
// form the soft-reset family search enumerates.
QedTest build_soft_reset_seq_test(const TransitionSystem& sys, const DupMap& m,
                                  const InstrSeq& prefix);

// Same shape from s0, for a suspected bug prefix. The final prefix
// instruction is the suspected bug; it must leave every duplicate location
// intact on this trace (checked), and k >= 2.
QedTest build_soft_reset_test(const TransitionSystem& sys, const DupMap& m,
                              const InstrSeq& prefix, const State& s0);

// Standard test <i1 ; connector ; dup(i1) ; dup(connector)> aimed at `bug`,
// whose instruction must be duplicate-side under m. The connector is found
// by bounded search so that the trace reaches a trigger right before the bug
// instruction and satisfies the value-preservation side conditions; the
// predicted disagreeing pair lands in meta.expect and the starting state in
// meta.required_init. ConstructionError when no connector exists within
// `connector_depth`.
QedTest build_bug_specific_test(const TransitionSystem& sys,
                                const SpecRelation& spec, const DupMap& m,
                                const Bug& bug, std::uint32_t connector_depth,
                                const InitEnum& inits = {},
                                std::size_t max_candidates = 2'000'000);

}  // namespace sqed

#endif
