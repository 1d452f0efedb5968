#pragma once

#include <stdexcept>
#include <string>

namespace infobounds {

enum class ErrorKind {
  InvalidArgument,
  InvalidPmf,
  NotMajorized,
  Infeasible,
  NotApplicable,
  Precondition,
  EnumerationLimit,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (and the
/// CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace infobounds
