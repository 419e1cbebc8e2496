#ifndef SQED_LAWS_HPP
#define SQED_LAWS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqed/zoo.hpp"

namespace sqed {

// Checkable claims about duplication-based testing. Frame and congruence
// facts come first, then the trace-level guarantees, then the end-to-end
// soundness, completeness and reset-equivalence statements.
enum class LawId {
  Eq2,
  Eq3,
  Eq4,
  Cor1,
  Lemma1,
  Lemma2,
  Prop1,
  Lemma3,
  Lemma4A,
  Lemma4B,
  Lemma5,
  Thm1,
  Thm2,
};

const char* law_name(LawId id);
const char* law_statement(LawId id);
std::optional<LawId> law_from_name(const std::string& name);
std::vector<LawId> all_laws();

struct LawBudget {
  std::uint32_t reach_depth = 2;       // state sweeps behind frame/congruence
  std::uint32_t test_bound = 2;        // standard-test length cap (lemma2)
  std::uint32_t oracle_depth = 2;      // brute-force bug search depth
  std::uint32_t hard_reset_bound = 4;  // bug-prefix cap (thm2)
  std::uint32_t connector_depth = 3;   // bug-specific constructions
  std::size_t max_states = 1u << 20;
  std::size_t max_tests = 50'000'000;  // built-in corpus needs ~24M for lemma1
  unsigned jobs = 1;
};

struct LawReport {
  LawId law = LawId::Eq2;
  std::string statement;
  bool pass = true;
  bool complete = true;  // false when a budget clipped some check
  std::size_t systems = 0;    // corpus members that actually exercised it
  std::size_t instances = 0;  // individual assertions evaluated
  std::vector<std::string> violations;  // capped at 16 messages
  std::vector<std::string> notes;       // skips, restrictions, budget cuts
};

LawReport check_law(LawId id, const std::vector<BuiltSystem>& corpus,
                    const LawBudget& budget = {});

std::vector<LawReport> check_all_laws(const std::vector<BuiltSystem>& corpus,
                                      const LawBudget& budget = {});

}  // namespace sqed

#endif
