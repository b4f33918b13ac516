#pragma once

#include <stdexcept>
#include <string>

namespace qnet {

// Bad run configuration or command-line usage (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data: region files, graph files, degenerate inputs
// (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnet
