#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace impsel {

/// Malformed input: out-of-range vertex, invalid graph text, bad family parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact enumeration was requested beyond its configured limit.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t limit)
      : std::runtime_error(what), limit_(limit) {}

  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
};

/// A verifier's precondition does not hold for the supplied mechanism.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace impsel
