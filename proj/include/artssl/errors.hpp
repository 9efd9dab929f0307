#pragma once

#include <iostream>
#include <stdexcept>
#include <string>

namespace artssl {

// Bad user input: malformed flags, out-of-range parameters, misuse of the API.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad data: unreadable files, unparsable values, dimension mismatches.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Reaching this is a bug, not a usage problem.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

}  // namespace artssl
