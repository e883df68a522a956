#pragma once

#include <stdexcept>
#include <string>

namespace baer {

enum class ErrorKind {
  malformed_element,
  domain_mismatch,
  empty_family,
  precondition,
  improper_involution,
  too_large,
  truncation_too_small,
  unknown_instance,
  axiom_violation,
  internal_inconsistency,
  indeterminate,
  structural_anomaly,
  dim_guard,
  parse,
};

const char* to_string(ErrorKind kind);

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

}  // namespace baer
