#include "baer/error.hpp"

namespace baer {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::malformed_element: return "malformed-element";
    case ErrorKind::domain_mismatch: return "domain-mismatch";
    case ErrorKind::empty_family: return "empty-family";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::improper_involution: return "improper-involution";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::truncation_too_small: return "truncation-too-small";
    case ErrorKind::unknown_instance: return "unknown-instance";
    case ErrorKind::axiom_violation: return "axiom-violation";
    case ErrorKind::internal_inconsistency: return "internal-inconsistency";
    case ErrorKind::indeterminate: return "indeterminate";
    case ErrorKind::structural_anomaly: return "structural-anomaly";
    case ErrorKind::dim_guard: return "dim-guard";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

}  // namespace baer
