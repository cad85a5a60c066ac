#pragma once

#include <stdexcept>
#include <string>

namespace kyc {

// Bad values in user-supplied data (missing ids, malformed records, NaN
// scores). The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or corrupted binary containers (bad magic, truncation, CRC
// mismatch). Also exit code 1.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inconsistent configuration (band arithmetic, zero groups, seed mismatch
// between an index and a query). The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kyc
