#pragma once

#include <stdexcept>
#include <string>

namespace polymapf {

// Broad failure categories. The category decides the process exit code; the
// fine-grained condition (e.g. "HasHole", "DuplicateStart") travels in
// Error::code() so callers and tests can match on it exactly.
enum class ErrorKind {
  InvalidMap,        // map text fails parsing or polygon validation
  InvalidInstance,   // instance/schedule content is malformed or inconsistent
  InvalidArgument,   // caller violated an operation precondition
  InvariantViolation,// an internal structural guarantee failed; aborts the run
  ResourceCap,       // a configured state/time/retry cap was reached
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void raise(ErrorKind kind, std::string code,
                               const std::string& message) {
  throw Error(kind, std::move(code), message);
}

}  // namespace polymapf
