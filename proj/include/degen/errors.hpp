#pragma once

#include <stdexcept>
#include <string>

namespace degen {

/// Bad argument values or precondition violations (maps to CLI exit code 2).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The normal system of a least-squares fit is rank deficient.
class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration was requested above the configured cap
/// (maps to CLI exit code 4).
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File read/write/parse failures (maps to CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace degen
