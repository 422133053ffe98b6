#pragma once

#include <stdexcept>
#include <string>

namespace hypercorr {

// Caller passed an argument outside the documented domain (bad shape, value
// out of range, unparsable input). Maps to CLI exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Filesystem-level failure (unreadable/unwritable path). Message always names
// the offending path. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypercorr
