#pragma once

#include <stdexcept>
#include <string>

namespace srd {

/// Raised for invalid input data or arguments that violate an operation's
/// preconditions (ragged tables, zero-variance columns, degenerate tests, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srd
