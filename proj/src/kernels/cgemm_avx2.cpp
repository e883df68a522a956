// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include <immintrin.h>

#include "baer/kernels.hpp"

namespace baer::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  double* cp = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m * n * 2; ++i) cp[i] = 0.0;

  const std::size_t n2 = n & ~std::size_t{1};  // pairs of complex per ymm
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cp + 2 * i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = ap[2 * (i * k + l)];
      const double ai = ap[2 * (i * k + l) + 1];
      if (ar == 0.0 && ai == 0.0) continue;
      const __m256d vr = _mm256_set1_pd(ar);
      const __m256d vi = _mm256_set1_pd(ai);
      const double* brow = bp + 2 * l * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d bs = _mm256_permute_pd(bv, 0b0101);
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d prod = _mm256_fmaddsub_pd(vr, bv, _mm256_mul_pd(vi, bs));
        const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(cv, prod));
      }
      for (; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar * br - ai * bi;
        crow[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

double cnorm2(std::span<const Complex> v) {
  const double* p = reinterpret_cast<const double*>(v.data());
  const std::size_t len = v.size() * 2;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(p + i);
    const __m256d x1 = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) s += p[i] * p[i];
  return s;
}

double cdist2(std::span<const Complex> a, std::span<const Complex> b) {
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  const std::size_t len = a.size() * 2;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < len; ++i) {
    const double d = pa[i] - pb[i];
    s += d * d;
  }
  return s;
}

}  // namespace baer::kernels::avx2
