#ifndef SQED_ERRORS_HPP
#define SQED_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqed {

// Malformed input files or inconsistent declarations.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A well-formed request that the model rejects (bad location index,
// unregistered reset target, precondition violation).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Caller asked for something the theory does not cover (k < 2 prefixes,
// bug instruction not expressible under the chosen partition, ...).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what)
      : std::runtime_error(what) {}
};

// An enumeration hit its state/test budget. `partial` reports how far it got.
struct ResourceError : std::runtime_error {
  ResourceError(const std::string& what, std::size_t partial_count)
      : std::runtime_error(what), partial(partial_count) {}
  std::size_t partial;
};

}  // namespace sqed

#endif
