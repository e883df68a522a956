#include "baer/exact_rings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "baer/float_ring.hpp"

namespace baer {

namespace {

constexpr std::uint32_t kMaxPrime = 65521;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

std::uint32_t sq(std::uint64_t v, std::uint32_t p) { return static_cast<std::uint32_t>(v * v % p); }

}  // namespace

// ---- construction / properness ----------------------------------------------

std::optional<std::vector<std::uint32_t>> isotropic_vector(std::uint32_t p, std::size_t dim) {
  if (ipow(p, dim, kConeGuard) <= kConeGuard) {
    std::vector<std::uint32_t> v(dim, 0);
    for (;;) {
      std::size_t i = 0;  // odometer increment
      while (i < dim && ++v[i] == p) v[i++] = 0;
      if (i == dim) return std::nullopt;
      std::uint64_t s = 0;
      for (auto x : v) s += sq(x, p);
      if (s % p == 0) return v;
    }
  }
  // Past the enumeration guard only the first three coordinates are searched:
  // (1, b) needs b^2 = -1; (a, b, 1) needs a^2 + b^2 = -1, which always exists.
  std::vector<std::uint32_t> v(dim, 0);
  if (dim >= 2) {
    for (std::uint32_t b = 1; b < p; ++b)
      if ((sq(b, p) + 1) % p == 0) {
        v[0] = 1, v[1] = b;
        return v;
      }
  }
  if (dim >= 3) {
    std::vector<std::int64_t> root(p, -1);
    for (std::uint32_t b = 0; b < p; ++b) root[sq(b, p)] = b;
    for (std::uint32_t a = 0; a < p; ++a) {
      const std::uint32_t t = static_cast<std::uint32_t>((2ULL * p - 1 - sq(a, p)) % p);
      if (root[t] >= 0) {
        v[0] = a, v[1] = static_cast<std::uint32_t>(root[t]), v[2] = 1;
        return v;
      }
    }
  }
  return std::nullopt;
}

ScalarDomain construct_gf_ring(std::uint32_t prime, std::size_t dim) {
  if (!is_prime(prime)) fail(ErrorKind::precondition, "GF modulus " + std::to_string(prime) + " is not prime");
  if (prime > kMaxPrime) fail(ErrorKind::too_large, "GF modulus above " + std::to_string(kMaxPrime));
  if (dim == 0) fail(ErrorKind::malformed_element, "dimension must be positive");
  if (auto v = isotropic_vector(prime, dim)) {
    std::string s;
    for (auto x : *v) s += (s.empty() ? "" : ",") + std::to_string(x);
    fail(ErrorKind::improper_involution, "transpose involution on M_" + std::to_string(dim) +
                                             "(F_" + std::to_string(prime) +
                                             ") is not proper: v = (" + s + ") has v.v = 0");
  }
  ScalarDomain d;
  d.kind = DomainKind::finite_field;
  d.prime = prime;
  d.dim = dim;
  return d;
}

// ---- cone -------------------------------------------------------------------

ConeTable::ConeTable(std::uint32_t prime, std::size_t dim) : prime_(prime), dim_(dim) {
  const std::uint64_t total = ipow(prime, dim * dim, kConeGuard);
  if (total > kConeGuard)
    fail(ErrorKind::too_large, "cone enumeration over " + std::to_string(prime) + "^" +
                                   std::to_string(dim * dim) + " elements exceeds the guard");
  for (std::uint64_t c = 0; c < total; ++c) {
    const GfMatrix x = decode(c);
    squares_.emplace(encode(x.adjoint() * x), c);
  }

  // Additive closure, breadth first so witnesses are shortest.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> gens(squares_.begin(), squares_.end());
  std::sort(gens.begin(), gens.end());
  std::deque<std::uint64_t> queue;
  for (const auto& [s, x] : gens) {
    members_.emplace(s, Step{s, x});
    order_.push_back(s);
    queue.push_back(s);
  }
  const std::size_t n = dim * dim;
  std::vector<std::uint32_t> da(n), db(n);
  auto digits = [&](std::uint64_t c, std::vector<std::uint32_t>& out) {
    for (std::size_t i = 0; i < n; ++i, c /= prime_) out[i] = static_cast<std::uint32_t>(c % prime_);
  };
  while (!queue.empty()) {
    const std::uint64_t m = queue.front();
    queue.pop_front();
    digits(m, da);
    for (const auto& [s, x] : gens) {
      digits(s, db);
      std::uint64_t t = 0;
      for (std::size_t i = n; i-- > 0;) t = t * prime_ + (da[i] + db[i]) % prime_;
      if (members_.emplace(t, Step{m, x}).second) {
        order_.push_back(t);
        queue.push_back(t);
      }
    }
  }
}

std::uint64_t ConeTable::encode(const GfMatrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) fail(ErrorKind::domain_mismatch, "cone: wrong element size");
  std::uint64_t c = 0;
  for (std::size_t k = dim_ * dim_; k-- > 0;) c = c * prime_ + a.data()[k].value();
  return c;
}

GfMatrix ConeTable::decode(std::uint64_t code) const {
  GfMatrix a(dim_, dim_);
  for (std::size_t k = 0; k < dim_ * dim_; ++k, code /= prime_)
    a.data()[k] = Gf(static_cast<std::int64_t>(code % prime_), prime_);
  return a;
}

bool ConeTable::contains(const GfMatrix& a) const { return members_.count(encode(a)) != 0; }

bool ConeTable::is_square(const GfMatrix& a) const { return squares_.count(encode(a)) != 0; }

std::optional<std::vector<GfMatrix>> ConeTable::witness(const GfMatrix& a) const {
  std::uint64_t c = encode(a);
  if (!members_.count(c)) return std::nullopt;
  std::vector<GfMatrix> out;
  for (;;) {
    const Step& s = members_.at(c);
    out.push_back(decode(s.factor));
    if (s.previous == c) break;
    c = s.previous;
  }
  return out;
}

ConeTable positivity_cone(const ScalarDomain& domain) {
  if (domain.kind != DomainKind::finite_field)
    fail(ErrorKind::precondition, "positivity_cone needs a finite-field domain");
  return ConeTable(domain.prime, domain.dim);
}

// ---- positivity -------------------------------------------------------------

template <>
bool is_positive(const Ring<Rational>& ring, const RatMatrix& a) {
  ring.check_square(a);
  if (!(a == a.adjoint())) return false;
  // Symmetric elimination with diagonal pivoting: a PSD matrix with a zero
  // diagonal entry has a zero row there, and a negative diagonal entry is fatal.
  RatMatrix m = a;
  const std::size_t n = m.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(m(i, i)) < 0) return false;
      if (sgn(m(i, i)) > 0 && k == n) k = i;
    }
    if (k == n) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(m(i, j)) != 0) return false;
      return true;
    }
    done[k] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(m(i, k)) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

template <>
bool is_positive(const Ring<Gf>& ring, const GfMatrix& a) {
  ring.check_square(a);
  if (!ring.cone())
    fail(ErrorKind::too_large, "positivity in " + ring.domain().describe() + " needs the cone, which exceeds the guard");
  return ring.cone()->contains(a);
}

template <>
bool is_positive(const Ring<Complex>& ring, const CMatrix& a) {
  return is_positive_float(ring, a);
}

// ---- axiom probes -----------------------------------------------------------

AxiomReport axiom_probe(const ScalarDomain& domain, std::size_t dim, std::uint64_t seed) {
  AxiomReport r;
  r.proper = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-3, 3);
  if (dim == 0) fail(ErrorKind::malformed_element, "dimension must be positive");

  switch (domain.kind) {
    case DomainKind::finite_field: {
      const Ring<Gf> ring(domain);
      const ConeTable cone = positivity_cone(ring.domain());
      r.antisymmetric = true;
      for (auto code : cone.members()) {
        if (code == 0) continue;
        if (cone.contains(-cone.decode(code))) {
          r.antisymmetric = false;
          break;
        }
      }
      r.smooth = cone.size() == cone.square_count();
      return r;
    }
    case DomainKind::exact_rational: {
      const RationalRing ring;
      // Spot-check: a random nonzero b^T b is PSD while its negative is not.
      RatMatrix b(dim, dim);
      do {
        for (auto& v : b.data()) v = small(rng);
      } while (ring.is_zero(b));
      const RatMatrix a = b.adjoint() * b;
      if (!is_positive(ring, a) || is_positive(ring, RatMatrix(-a)))
        fail(ErrorKind::internal_inconsistency, "rational PSD spot-check failed");
      r.antisymmetric = true;
      // diag(2,1,...,1) is PSD, but x^T x = it forces det(x)^2 = 2.
      RatMatrix w = ring.identity(dim);
      w(0, 0) = 2;
      if (!is_positive(ring, w) || mpz_perfect_square_p(mpz_class(2).get_mpz_t()))
        fail(ErrorKind::internal_inconsistency, "smoothness witness failed");
      r.smooth = false;
      return r;
    }
    case DomainKind::complex_float: {
      const FloatRing ring(domain);
      std::normal_distribution<double> g;
      CMatrix b(dim, dim);
      for (auto& v : b.data()) v = {g(rng), g(rng)};
      const CMatrix a = b.adjoint() * b;
      if (!is_positive(ring, a) || is_positive(ring, CMatrix(-a)))
        fail(ErrorKind::internal_inconsistency, "float PSD spot-check failed");
      r.antisymmetric = true;
      const CMatrix x = hermitian_sqrt(a);
      if (!ring.equal(x.adjoint() * x, a))
        fail(ErrorKind::internal_inconsistency, "Hermitian square root spot-check failed");
      r.smooth = true;
      return r;
    }
  }
  return r;
}

bool verify_annihilator_axiom(const ScalarDomain& domain) {
  const Ring<Gf> ring(domain);
  const std::uint64_t total = ipow(domain.prime, domain.dim * domain.dim, 10'000);
  if (total > 10'000)
    fail(ErrorKind::too_large, "annihilator enumeration exceeds the guard");
  const ConeTable codec(domain.prime, domain.dim);
  std::vector<GfMatrix> all;
  for (std::uint64_t c = 0; c < total; ++c) all.push_back(codec.decode(c));

  // Right ideals pA for every projection p.
  std::set<std::vector<std::uint64_t>> ideals;
  for (const auto& p : all) {
    if (!(p == p.adjoint()) || !(p * p == p)) continue;
    std::vector<std::uint64_t> ideal;
    for (const auto& y : all) ideal.push_back(codec.encode(p * y));
    std::sort(ideal.begin(), ideal.end());
    ideal.erase(std::unique(ideal.begin(), ideal.end()), ideal.end());
    ideals.insert(std::move(ideal));
  }
  // Every subspace is a single kernel, so singletons S = {s} cover all R(S).
  for (const auto& s : all) {
    std::vector<std::uint64_t> ann;
    for (const auto& y : all)
      if (ring.is_zero(s * y)) ann.push_back(codec.encode(y));
    std::sort(ann.begin(), ann.end());
    if (!ideals.count(ann)) return false;
  }
  return true;
}

}  // namespace baer
