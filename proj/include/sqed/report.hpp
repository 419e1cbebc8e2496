#ifndef SQED_REPORT_HPP
#define SQED_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sqed/laws.hpp"
#include "sqed/oracle.hpp"
#include "sqed/search.hpp"

namespace sqed {

// Everything that determines a run's outcome, and nothing else: job counts
// and wall-clock time stay out so reruns produce identical bytes.
struct RunManifest {
  std::string command;
  std::string system;
  std::uint32_t bound = 0;
  std::uint32_t depth = 0;
  std::vector<std::string> families;
  std::vector<std::string> alphabet;  // empty = every eligible instruction
  std::string init_kind = "exhaustive";
  std::size_t init_count = 0;
  std::uint64_t init_seed = 0;
  std::uint32_t max_insertions = 0;
  std::size_t max_states = 0;
  std::size_t max_tests = 0;
};

RunManifest manifest_for(const std::string& command,
                         const ProcessorConfig& cfg,
                         const TransitionSystem& sys);

std::string search_report_json(const TransitionSystem& sys,
                               const SearchResult& res,
                               const RunManifest& manifest);
std::string oracle_report_json(const TransitionSystem& sys,
                               const OracleResult& res,
                               const RunManifest& manifest);
std::string laws_report_json(const std::vector<LawReport>& reports,
                             const RunManifest& manifest);

// One-line human summaries used by the command-line front end.
std::string search_report_text(const TransitionSystem& sys,
                               const SearchResult& res);
std::string oracle_report_text(const TransitionSystem& sys,
                               const OracleResult& res);
std::string laws_report_text(const std::vector<LawReport>& reports);

}  // namespace sqed

#endif
