#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tvote {

// Malformed or inconsistent input: bad ids, wrong lengths, violated
// preconditions on the shape of an instance.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested computation is well-defined but exceeds a configured budget
// (subset enumeration, IP nodes, DP states, outcome enumeration).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what, std::uint64_t explored = 0)
      : std::runtime_error(what), explored_(explored) {}

  std::uint64_t explored() const { return explored_; }

 private:
  std::uint64_t explored_;
};

// A self-check failed (e.g. a solver produced an outcome the verifier
// rejects). Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tvote
