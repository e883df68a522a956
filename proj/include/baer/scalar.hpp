#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace baer {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Element of the prime field F_p.
///
/// The modulus travels with the value. A default-constructed Gf is the
/// "unbound" zero (prime 0): it is the additive identity of every F_p and
/// adopts the modulus of whatever it is combined with. Combining two bound
/// values with different primes throws.
class Gf {
 public:
  Gf() = default;
  Gf(std::int64_t value, std::uint32_t prime);

  std::uint32_t value() const { return value_; }
  std::uint32_t prime() const { return prime_; }
  bool is_zero() const { return value_ == 0; }

  Gf operator-() const;
  Gf& operator+=(const Gf& o);
  Gf& operator-=(const Gf& o);
  Gf& operator*=(const Gf& o);
  Gf inverse() const;

  friend Gf operator+(Gf a, const Gf& b) { return a += b; }
  friend Gf operator-(Gf a, const Gf& b) { return a -= b; }
  friend Gf operator*(Gf a, const Gf& b) { return a *= b; }
  friend Gf operator/(const Gf& a, const Gf& b) { return a * b.inverse(); }
  friend bool operator==(const Gf& a, const Gf& b) { return a.value_ == b.value_; }

 private:
  std::uint32_t bind(const Gf& o) const;

  std::uint32_t value_ = 0;
  std::uint32_t prime_ = 0;
};

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational conj(const Rational& a) { return a; }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static double abs2(const Rational& a) {
    const double d = a.get_d();
    return d * d;
  }
  static Rational inverse(const Rational& a) { return 1 / a; }
  static std::string to_string(const Rational& a) { return a.get_str(); }
};

template <>
struct ScalarOps<Gf> {
  static constexpr bool exact = true;
  static Gf conj(const Gf& a) { return a; }
  static bool is_zero(const Gf& a) { return a.is_zero(); }
  static double abs2(const Gf& a) { return a.is_zero() ? 0.0 : 1.0; }
  static Gf inverse(const Gf& a) { return a.inverse(); }
  static std::string to_string(const Gf& a) { return std::to_string(a.value()); }
};

template <>
struct ScalarOps<Complex> {
  static constexpr bool exact = false;
  static Complex conj(const Complex& a) { return std::conj(a); }
  static bool is_zero(const Complex& a) { return a == Complex{}; }
  static double abs2(const Complex& a) { return std::norm(a); }
  static Complex inverse(const Complex& a) { return 1.0 / a; }
  static std::string to_string(const Complex& a);
};

template <class S>
inline constexpr bool is_exact_v = ScalarOps<S>::exact;

/// Parses "a", "-a/b" (exact rationals). Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

/// Parses "re", "re+imi", "re-imi", "imi", "i", "-i" (complex floats).
Complex parse_complex(std::string_view text);

/// Parses a decimal integer and reduces it modulo p.
Gf parse_gf(std::string_view text, std::uint32_t prime);

}  // namespace baer
