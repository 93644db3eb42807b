#pragma once

#include <stdexcept>
#include <string>

namespace dcnet {

// Bad user input: malformed scenario files, out-of-range parameters,
// inconsistent command-line options.  The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A runtime invariant was violated (negative backlog, availability breach,
// conservation mismatch).  Indicates a programming error in a policy or in
// the engine itself.  The CLI maps this to exit code 3.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws InvariantError with `msg` when `cond` is false.
inline void require_invariant(bool cond, const std::string& msg) {
  if (!cond) throw InvariantError(msg);
}

// Throws ConfigError with `msg` when `cond` is false.
inline void require_config(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

}  // namespace dcnet
