#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace baer {

enum class DomainKind { exact_rational, complex_float, finite_field };

const char* to_string(DomainKind kind);

struct TolerancePolicy {
  double eps_rank = 1e-10;  // relative singular-value cutoff
  double eps_eq = 1e-8;     // projection/element equality, scaled by dim
  double eps_psd = 1e-9;    // eigenvalue floor for positivity

  void validate() const;
};

struct ScalarDomain {
  DomainKind kind = DomainKind::exact_rational;
  TolerancePolicy tolerance;  // consulted only for complex_float
  std::uint32_t prime = 0;    // finite_field only
  std::size_t dim = 0;        // finite_field: matrix size fixed by the ring; 0 otherwise

  std::string describe() const;

  static ScalarDomain rational() { return {}; }
  static ScalarDomain complex_float(TolerancePolicy tol = {}) {
    return {DomainKind::complex_float, tol, 0, 0};
  }
};

}  // namespace baer
