#include "baer/domain.hpp"

#include "baer/error.hpp"

namespace baer {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::exact_rational: return "rational";
    case DomainKind::complex_float: return "complex-float";
    case DomainKind::finite_field: return "gf";
  }
  return "?";
}

void TolerancePolicy::validate() const {
  if (!(eps_rank > 0) || !(eps_eq > 0) || !(eps_psd > 0))
    fail(ErrorKind::precondition, "tolerances must be strictly positive");
}

std::string ScalarDomain::describe() const {
  switch (kind) {
    case DomainKind::exact_rational: return "M_n(Q)";
    case DomainKind::complex_float: return "M_n(C) [float]";
    case DomainKind::finite_field:
      return "M_" + std::to_string(dim) + "(F_" + std::to_string(prime) + ")";
  }
  return "?";
}

}  // namespace baer
