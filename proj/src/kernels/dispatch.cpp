#include "baer/kernels.hpp"

namespace baer::kernels {

namespace {

struct Table {
  Isa isa;
  void (*cgemm)(std::size_t, std::size_t, std::size_t, const Complex*,
                const Complex*, Complex*);
  double (*cnorm2)(std::span<const Complex>);
  double (*cdist2)(std::span<const Complex>, std::span<const Complex>);
};

Table pick() {
#if defined(BAER_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return {Isa::avx2, &avx2::cgemm, &avx2::cnorm2, &avx2::cdist2};
#endif
  return {Isa::scalar, &scalar::cgemm, &scalar::cnorm2, &scalar::cdist2};
}

const Table& table() {
  static const Table t = pick();
  return t;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

Isa detected_isa() { return pick().isa; }
Isa active_isa() { return table().isa; }

void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c) {
  table().cgemm(m, k, n, a, b, c);
}

double cnorm2(std::span<const Complex> v) { return table().cnorm2(v); }

double cdist2(std::span<const Complex> a, std::span<const Complex> b) {
  return table().cdist2(a, b);
}

}  // namespace baer::kernels
