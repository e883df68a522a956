#pragma once

// Dense complex kernels with a scalar reference and an AVX2/FMA variant.
// The variant is chosen once at first use from the running CPU; the scalar
// path is always available and is what the equivalence tests compare against.

#include <complex>
#include <cstddef>
#include <span>

namespace baer::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

/// Best ISA supported by both the build and the running CPU.
Isa detected_isa();

/// ISA the dispatched entry points use. Defaults to detected_isa().
Isa active_isa();

/// C (m x n) = A (m x k) * B (k x n); all row-major, C is overwritten.
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c);

/// Sum of |z|^2 over v.
double cnorm2(std::span<const Complex> v);

/// Sum of |a_i - b_i|^2.
double cdist2(std::span<const Complex> a, std::span<const Complex> b);

namespace scalar {
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c);
double cnorm2(std::span<const Complex> v);
double cdist2(std::span<const Complex> a, std::span<const Complex> b);
}  // namespace scalar

#if defined(BAER_HAVE_AVX2)
namespace avx2 {
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c);
double cnorm2(std::span<const Complex> v);
double cdist2(std::span<const Complex> a, std::span<const Complex> b);
}  // namespace avx2
#endif

}  // namespace baer::kernels
