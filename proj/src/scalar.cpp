#include "baer/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "baer/error.hpp"

namespace baer {

Gf::Gf(std::int64_t value, std::uint32_t prime) : prime_(prime) {
  if (prime < 2) fail(ErrorKind::domain_mismatch, "GF modulus must be a prime >= 2");
  const std::int64_t p = prime;
  value_ = static_cast<std::uint32_t>(((value % p) + p) % p);
}

std::uint32_t Gf::bind(const Gf& o) const {
  if (prime_ == 0) return o.prime_;
  if (o.prime_ == 0 || o.prime_ == prime_) return prime_;
  fail(ErrorKind::domain_mismatch, "GF elements over different primes");
}

Gf Gf::operator-() const {
  Gf r = *this;
  if (value_ != 0) r.value_ = prime_ - value_;
  return r;
}

Gf& Gf::operator+=(const Gf& o) {
  prime_ = bind(o);
  if (prime_ == 0) return *this;  // both unbound zeros
  value_ = static_cast<std::uint32_t>((std::uint64_t{value_} + o.value_) % prime_);
  return *this;
}

Gf& Gf::operator-=(const Gf& o) { return *this += -o; }

Gf& Gf::operator*=(const Gf& o) {
  prime_ = bind(o);
  if (prime_ == 0) return *this;
  value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * o.value_) % prime_);
  return *this;
}

Gf Gf::inverse() const {
  if (value_ == 0) fail(ErrorKind::precondition, "GF division by zero");
  // Fermat: a^(p-2)
  std::uint64_t base = value_, result = 1;
  std::uint32_t e = prime_ - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % prime_;
    base = base * base % prime_;
    e >>= 1U;
  }
  return Gf(static_cast<std::int64_t>(result), prime_);
}

std::string ScalarOps<Complex>::to_string(const Complex& a) {
  char buf[64];
  if (a.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", a.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", a.real(),
                  std::signbit(a.imag()) ? '-' : '+', std::fabs(a.imag()));
  }
  return buf;
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  fail(ErrorKind::parse, std::string(what) + ": '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

double strict_double(const std::string& s, std::string_view original) {
  if (s.empty()) bad("malformed complex scalar", original);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    bad("malformed complex scalar", original);
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip(text);
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational r;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad("malformed rational", text);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad("zero denominator", text);
    r = Rational(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      bad("malformed rational", text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class whole(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
    r = Rational(whole, scale);
  } else {
    if (!all_digits(body)) bad("malformed rational", text);
    r = Rational(mpz_class(std::string(body), 10));
  }
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

Complex parse_complex(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) bad("malformed complex scalar", text);
  if (s.back() != 'i') return {strict_double(s, text), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : strict_double(re, text), strict_double(im, text)};
}

Gf parse_gf(std::string_view text, std::uint32_t prime) {
  std::string s = strip(text);
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) bad("malformed field element", text);
  mpz_class v(std::string(body), 10);
  v %= prime;
  const auto r = static_cast<std::int64_t>(v.get_ui());
  return Gf(neg ? -r : r, prime);
}

}  // namespace baer
