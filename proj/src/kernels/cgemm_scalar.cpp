#include "baer/kernels.hpp"

namespace baer::kernels::scalar {

// Written out on doubles: std::complex multiplication goes through the
// Annex G NaN path (__muldc3) unless -fcx-limited-range is set.
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  double* cp = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m * n * 2; ++i) cp[i] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cp + 2 * i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = ap[2 * (i * k + l)];
      const double ai = ap[2 * (i * k + l) + 1];
      if (ar == 0.0 && ai == 0.0) continue;
      const double* brow = bp + 2 * l * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar * br - ai * bi;
        crow[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

double cnorm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += z.real() * z.real() + z.imag() * z.imag();
  return s;
}

double cdist2(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    s += dr * dr + di * di;
  }
  return s;
}

}  // namespace baer::kernels::scalar
