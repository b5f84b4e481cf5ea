#pragma once

#include <stdexcept>
#include <string>

namespace qstc {

/// Unknown scheme, constellation or inspect target. Maps to exit code 2.
struct LookupError : std::runtime_error {
  explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration or command line. Maps to exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qstc
