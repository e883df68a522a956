#include "baer/engine.hpp"

#include <algorithm>
#include <random>

#include "baer/exact_rings.hpp"

namespace baer {

template <class S>
bool DecompositionReport<S>::certified() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const Certificate& c) { return c.passed; });
}

template <class S>
const Projection<S>* DecompositionReport<S>::find(const std::string& label) const {
  for (const auto& m : basis)
    if (m.label == label) return &m.projection;
  return nullptr;
}

template <class S>
const Certificate* DecompositionReport<S>::certificate(const std::string& name) const {
  for (const auto& c : certificates)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// ---- certificate helpers ----------------------------------------------------

template <class S>
Certificate match(const Ring<S>& ring, std::string name, const Matrix<S>& a, const Matrix<S>& b,
                  const Window& w) {
  return {std::move(name), ring.residual(a, b, w), ring.equal(a, b, w)};
}

template <class S>
Certificate vanish(const Ring<S>& ring, std::string name, const Matrix<S>& a, const Window& w) {
  return {std::move(name), ring.norm(a, w), ring.is_zero(a, w)};
}

Certificate flag(std::string name, bool ok) { return {std::move(name), ok ? 0.0 : 1.0, ok}; }

/// Folds a family of checks into one certificate (max residual, all passed).
struct Fold {
  Certificate c;
  explicit Fold(std::string name) { c = {std::move(name), 0.0, true}; }
  void add(const Certificate& x) {
    c.residual = std::max(c.residual, x.residual);
    c.passed = c.passed && x.passed;
  }
};

const char* block_name(char label) {
  switch (label) {
    case 'u': return "unitary";
    case 's': return "unilateral-shift";
    case 'b': return "backward-shift";
    case 't': return "truncated-shift";
    case 'c': return "completely-non-unitary";
  }
  return "?";
}

// ---- limits -----------------------------------------------------------------

/// Limit of a monotone chain n -> term(x^n), sampled at n = 1, 2, 4, ...;
/// such chains are constant from their first repeat on. On a truncation the
/// repeat is judged on the window: adjoint powers of a cut-off strand keep
/// eating into its far end, which the window already excludes.
template <class S, class Term>
Projection<S> doubling_limit(const Ring<S>& ring, Matrix<S> x, unsigned n_max, Term term,
                             const std::string& what, const Window& w = {}) {
  Projection<S> prev = term(x);
  for (unsigned step = 1; step <= n_max; ++step) {
    x = x * x;
    Projection<S> cur = term(x);
    if (ring.equal(cur.element, prev.element, w)) return prev;  // the lower power is the more faithful
    prev = std::move(cur);
  }
  fail(ErrorKind::indeterminate,
       what + " did not stabilize within " + std::to_string(n_max) + " doubling steps");
}

template <class S>
Projection<S> range_limit(const Ring<S>& ring, const Matrix<S>& x, unsigned n_max, const std::string& what,
                          const Window& w = {}) {
  return doubling_limit(ring, x, n_max, [&](const Matrix<S>& xn) { return left_projection(ring, xn); }, what, w);
}

/// inf over n = 0..n_max of terms[n]; the family need not be monotone, so a
/// change in either of the last two steps means the value is not settled.
template <class S>
Projection<S> running_inf(const Ring<S>& ring, const std::vector<Projection<S>>& terms,
                          const std::string& what) {
  Projection<S> acc = terms.front();
  std::size_t last_change = 0;
  for (std::size_t n = 1; n < terms.size(); ++n) {
    Projection<S> next = proj_inf(ring, std::vector<Projection<S>>{acc, terms[n]});
    if (!ring.equal(next.element, acc.element)) last_change = n;
    acc = std::move(next);
  }
  const std::size_t n_max = terms.size() - 1;
  if (last_change > 0 && last_change + 1 >= n_max)
    fail(ErrorKind::indeterminate, what + " was still shrinking at n = " + std::to_string(last_change));
  return acc;
}

/// sup_n [x^n w], w = 1 - [x]: P_1 = [w], P_2M = sup{P_M, [x^M P_M]}.
template <class S>
Projection<S> wandering_series(const Ring<S>& ring, const Matrix<S>& x, unsigned n_max) {
  Projection<S> p = ring.complement(left_projection(ring, x));
  Matrix<S> pw = x;
  for (unsigned step = 1; step <= n_max; ++step) {
    Projection<S> q = proj_sup(ring, std::vector<Projection<S>>{p, left_projection(ring, pw * p.element)});
    if (ring.equal(q.element, p.element)) return p;
    p = std::move(q);
    pw = pw * pw;
  }
  fail(ErrorKind::indeterminate, "wold: wandering series did not stabilize");
}

template <class S>
Projection<S> nfl_unitary_part(const Ring<S>& ring, const Matrix<S>& x, unsigned n_max) {
  const Matrix<S> one = ring.identity(x.rows());
  auto qp = doubling_limit(ring, x, n_max, [&](const Matrix<S>& xn) {
    return ring.complement(left_projection(ring, Matrix<S>(one - xn.adjoint() * xn)));
  }, "nfl: q_n");
  auto qm = doubling_limit(ring, x, n_max, [&](const Matrix<S>& xn) {
    return ring.complement(left_projection(ring, Matrix<S>(one - xn * xn.adjoint())));
  }, "nfl: q_-n");
  return proj_inf(ring, std::vector<Projection<S>>{qp, qm});
}

// ---- block certificates -----------------------------------------------------

template <class S>
struct Certs {
  const Ring<S>& ring;
  const EngineConfig& cfg;
  std::vector<Certificate>& out;

  const Window& w() const { return cfg.window; }

  void basis(const ProjectionBasis<S>& members) {
    const std::size_t n = members.front().projection.dim();
    Matrix<S> sum = ring.zeros(n);
    Fold orth("basis: pairwise orthogonal");
    for (std::size_t i = 0; i < members.size(); ++i) {
      sum += members[i].projection.element;
      for (std::size_t j = i + 1; j < members.size(); ++j)
        orth.add(vanish(ring, "", Matrix<S>(members[i].projection.element * members[j].projection.element), w()));
    }
    out.push_back(orth.c);
    out.push_back(match(ring, "basis: sum is 1", sum, ring.identity(n), w()));
  }

  void commute(const ProjectionBasis<S>& members, const Matrix<S>& x, const std::string& xname) {
    for (const auto& m : members) {
      const Matrix<S>& p = m.projection.element;
      out.push_back(match(ring, m.label + " commutes with " + xname, Matrix<S>(x * p), Matrix<S>(p * x), w()));
    }
  }

  void isometric(const std::string& tag, const Matrix<S>& x, const Matrix<S>& p) {
    out.push_back(match(ring, tag + ": corner isometry", Matrix<S>(p * x.adjoint() * x * p), p, w()));
  }

  void coisometric(const std::string& tag, const Matrix<S>& x, const Matrix<S>& p) {
    out.push_back(match(ring, tag + ": corner co-isometry", Matrix<S>(p * x * x.adjoint() * p), p, w()));
  }

  void block(char kind, const std::string& tag, const Matrix<S>& x, const Projection<S>& proj) {
    const Matrix<S>& p = proj.element;
    switch (kind) {
      case 'u':
        isometric(tag, x, p);
        coisometric(tag, x, p);
        break;
      case 's':
        isometric(tag, x, p);
        out.push_back(vanish(ring, tag + ": inf [(xp)^n] = 0",
                             range_limit(ring, Matrix<S>(x * p), cfg.n_max, tag, w()).element, w()));
        break;
      case 'b':
        coisometric(tag, x, p);
        out.push_back(vanish(ring, tag + ": inf [((xp)*)^n] = 0",
                             range_limit(ring, Matrix<S>((x * p).adjoint()), cfg.n_max, tag, w()).element, w()));
        break;
      case 't': {
        const unsigned k = static_cast<unsigned>(std::max<std::size_t>(proj.rank(), 1));
        out.push_back(flag(tag + ": power partial isometry", is_ppi(ring, Matrix<S>(x * p), k, w())));
        out.push_back(vanish(ring, tag + ": (xp)^rank = 0", power(Matrix<S>(x * p), k, ring.one()), w()));
        break;
      }
      case 'c':
        out.push_back(vanish(ring, tag + ": no unitary part",
                             nfl_unitary_part(ring, Matrix<S>(x * p), cfg.n_max).element, w()));
        break;
    }
  }
};

template <class S>
Matrix<S> sum_of(const Ring<S>& ring, const std::vector<Projection<S>>& ps) {
  Matrix<S> s = ring.zeros(ps.front().dim());
  for (const auto& p : ps) s += p.element;
  return s;
}

template <class S>
void require_isometry_pair(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                           const EngineConfig& cfg, const char* op) {
  ring.check_square(x1);
  ring.check_same(x1, x2);
  const Window& w = cfg.window;
  if (!is_isometry(ring, x1, w) || !is_isometry(ring, x2, w))
    fail(ErrorKind::precondition, std::string(op) + ": both elements must be isometries");
  if (!commutes(ring, x1, x2, w)) fail(ErrorKind::precondition, std::string(op) + ": elements do not commute");
}

template <class S>
void require_ppi(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg, const char* op) {
  ring.check_square(x);
  const unsigned k = static_cast<unsigned>(x.rows());
  if (!is_ppi(ring, x, k, cfg.window))
    fail(ErrorKind::precondition, std::string(op) + ": element is not a power partial isometry");
}

template <class S>
void require_nfl_domain(const Ring<S>& ring, std::size_t dim) {
  if (ring.domain().kind != DomainKind::finite_field) return;
  const AxiomReport ax = axiom_probe(ring.domain(), dim);
  if (!ax.smooth && !ax.antisymmetric)
    fail(ErrorKind::axiom_violation, "nfl requires a smooth or antisymmetric ring; " +
                                         ring.domain().describe() + " is neither");
}

template <class S>
S random_scalar(const Ring<S>& ring, std::mt19937_64& rng) {
  if constexpr (std::is_same_v<S, Complex>) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
  } else if constexpr (std::is_same_v<S, Gf>) {
    return ring.from_int(std::uniform_int_distribution<long>(0, ring.domain().prime - 1)(rng));
  } else {
    return ring.from_int(std::uniform_int_distribution<long>(-3, 3)(rng));
  }
}

}  // namespace

template <class S>
std::vector<Certificate> basis_certificates(const Ring<S>& ring, const ProjectionBasis<S>& basis,
                                            const std::vector<std::pair<std::string, Matrix<S>>>& elements,
                                            const Window& w) {
  std::vector<Certificate> out;
  EngineConfig cfg;
  cfg.window = w;
  Certs<S> c{ring, cfg, out};
  c.basis(basis);
  for (const auto& [name, x] : elements) c.commute(basis, x, name);
  return out;
}

// ---- reducing fixpoint ------------------------------------------------------

template <class S>
Projection<S> reducing_fixpoint(const Ring<S>& ring, const std::vector<Matrix<S>>& ops,
                                const Projection<S>& e, const Window& w) {
  if (ops.empty()) return e;
  const std::size_t n = e.dim();
  std::vector<Matrix<S>> all = ops;
  for (const auto& a : ops) all.push_back(a.adjoint());
  std::vector<bool> trusted(n, w.empty());
  for (auto i : w) trusted.at(i) = true;

  Projection<S> m = e;
  while (m.rank() > 0) {
    const Matrix<S> comp = ring.identity(n) - m.element;
    std::vector<Matrix<S>> rows{comp};
    for (const auto& a : all) {
      Matrix<S> r = comp * a;
      for (std::size_t i = 0; i < n; ++i)
        if (!trusted[i])
          for (std::size_t j = 0; j < n; ++j) r(i, j) = S{};
      rows.push_back(std::move(r));
    }
    const Matrix<S> k = ring.kernel_basis(vstack(rows, n));
    if (k.cols() >= m.rank()) break;
    m = ring.projection_onto(k);
  }
  return m;
}

// ---- Wold -------------------------------------------------------------------

template <class S>
DecompositionReport<S> wold(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg) {
  ring.check_square(x);
  const Window& w = cfg.window;
  if (!is_isometry(ring, x, w)) fail(ErrorKind::precondition, "wold: element is not an isometry");

  DecompositionReport<S> r;
  r.method = "wold";
  const Projection<S> pu = range_limit(ring, x, cfg.n_max, "wold: inf [x^n]", cfg.window);
  const Projection<S> ps = wandering_series(ring, x, cfg.n_max);
  r.basis = {{"u", pu}, {"s", ps}};
  r.block_classes = {{"u", "unitary"}, {"s", "unilateral-shift"}};

  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x, "x");
  c.block('u', "u", x, pu);
  c.block('s', "s", x, ps);
  const Matrix<S> xq = x * ps.element;
  r.certificates.push_back(
      match(ring, "key identity [x p_s] = x p_s x*", left_projection(ring, xq).element, Matrix<S>(xq * x.adjoint()), w));
  return r;
}

// ---- Slocinski --------------------------------------------------------------

template <class S>
DecompositionReport<S> slocinski(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                 const EngineConfig& cfg) {
  require_isometry_pair(ring, x1, x2, cfg, "slocinski");
  const Window& w = cfg.window;
  const auto w1 = wold(ring, x1, cfg);
  const auto w2 = wold(ring, x2, cfg);
  const Projection<S>* p1[2] = {w1.find("u"), w1.find("s")};
  const Projection<S>* p2[2] = {w2.find("u"), w2.find("s")};
  const char ab[2] = {'u', 's'};

  // Largest reducing projection below p1_a ∧ p2_b, and the plain product.
  std::vector<Projection<S>> fix;
  std::vector<Matrix<S>> prod;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      fix.push_back(reducing_fixpoint(ring, {x1, x2}, proj_inf(ring, std::vector<Projection<S>>{*p1[a], *p2[b]}), w));
      prod.push_back(p1[a]->element * p2[b]->element);
    }

  std::array<bool, 6> cond{};
  cond[0] = ring.equal(sum_of(ring, fix), ring.identity(x1.rows()), w);
  cond[1] = true;
  for (int k = 0; k < 4; ++k) cond[1] = cond[1] && ring.equal(fix[k].element, prod[k], w);
  const bool x1_commutes = commutes(ring, x1, p2[0]->element, w) && commutes(ring, x1, p2[1]->element, w);
  cond[2] = x1_commutes && commutes(ring, x2, p1[0]->element, w) && commutes(ring, x2, p1[1]->element, w);
  cond[3] = is_invariant(ring, *p1[1], x2, w) && is_invariant(ring, *p2[1], x1, w);
  cond[4] = x1_commutes && (commutes(ring, x2, Matrix<S>(p1[0]->element * p2[1]->element), w) ||
                            commutes(ring, x2, Matrix<S>(p1[1]->element * p2[1]->element), w));
  const Matrix<S> y = x1 * x2;
  cond[5] = is_invariant(ring, *p1[1], y, w) && is_invariant(ring, *p2[1], y, w);

  if (!std::all_of(cond.begin(), cond.end(), [&](bool v) { return v == cond[0]; })) {
    std::string v;
    for (bool b : cond) v += b ? '1' : '0';
    fail(ErrorKind::internal_inconsistency, "slocinski: equivalent conditions disagree (" + v + ")");
  }

  DecompositionReport<S> r;
  r.method = "slocinski";
  r.conditions = cond;
  r.holds = cond[0];
  for (const auto* rep : {&w1, &w2}) {
    const std::string tag = rep == &w1 ? "x1 wold: " : "x2 wold: ";
    for (const auto& c : rep->certificates) r.certificates.push_back({tag + c.name, c.residual, c.passed});
  }
  if (!r.holds) return r;

  Certs<S> c{ring, cfg, r.certificates};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const std::string label{ab[a], ab[b]};
      const Projection<S> p = ring.projection_onto(prod[2 * a + b]);
      r.basis.push_back({label, p});
      r.block_classes.push_back({label, std::string("x1 ") + block_name(ab[a]) + ", x2 " + block_name(ab[b])});
      c.block(ab[a], label + "/x1", x1, p);
      c.block(ab[b], label + "/x2", x2, p);
    }
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  return r;
}

template <class S>
bool corollary_check(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2, const EngineConfig& cfg) {
  const bool direct = slocinski(ring, x1, x2, cfg).holds;
  const Matrix<S> y = x1 * x2;
  const bool via_product = slocinski(ring, x1, y, cfg).holds && slocinski(ring, x2, y, cfg).holds;
  if (direct != via_product)
    fail(ErrorKind::internal_inconsistency, "slocinski: pair and product-pair verdicts differ");
  return direct;
}

// ---- weak bi-shift ----------------------------------------------------------

template <class S>
DecompositionReport<S> weak_bishift(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                    const EngineConfig& cfg) {
  require_isometry_pair(ring, x1, x2, cfg, "weak_bishift");
  const Window& w = cfg.window;
  const Matrix<S> y = x1 * x2;

  const auto w1 = wold(ring, x1, cfg);
  const auto w2 = wold(ring, x2, cfg);
  const Projection<S> puu = range_limit(ring, y, cfg.n_max, "weak_bishift: inf [(x1x2)^n]", cfg.window);
  const Projection<S> pus =
      reducing_fixpoint(ring, {x1, x2}, proj_inf(ring, std::vector<Projection<S>>{*w1.find("u"), *w2.find("s")}), w);
  const Projection<S> psu =
      reducing_fixpoint(ring, {x1, x2}, proj_inf(ring, std::vector<Projection<S>>{*w1.find("s"), *w2.find("u")}), w);
  const Projection<S> pws = ring.complement(proj_sup(ring, std::vector<Projection<S>>{puu, pus, psu}));

  // w°_su = inf_n (1 - [x2*^n x1]), w°_us = inf_n (1 - [x1*^n x2])
  auto wandering = [&](const Matrix<S>& a, const Matrix<S>& b, const char* what) {
    std::vector<Projection<S>> terms;
    Matrix<S> m = b;
    const Matrix<S> as = a.adjoint();
    for (unsigned k = 0; k <= cfg.n_max; ++k) {
      terms.push_back(ring.complement(left_projection(ring, m)));
      m = as * m;
    }
    return running_inf(ring, terms, what);
  };
  const Projection<S> wsu = wandering(x2, x1, "weak_bishift: w_su");
  const Projection<S> wus = wandering(x1, x2, "weak_bishift: w_us");

  DecompositionReport<S> r;
  r.method = "weak-bishift";
  r.basis = {{"uu", puu}, {"us", pus}, {"su", psu}, {"ws", pws}};
  r.block_classes = {{"uu", "x1 unitary, x2 unitary"},
                     {"us", "x1 unitary, x2 unilateral-shift"},
                     {"su", "x1 unilateral-shift, x2 unitary"},
                     {"ws", "weak bi-shift"}};

  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  c.block('u', "uu/x1", x1, puu);
  c.block('u', "uu/x2", x2, puu);
  c.block('u', "us/x1", x1, pus);
  c.block('s', "us/x2", x2, pus);
  c.block('s', "su/x1", x1, psu);
  c.block('u', "su/x2", x2, psu);

  r.certificates.push_back(flag("w_us is x1-invariant", is_invariant(ring, wus, x1, w)));
  r.certificates.push_back(flag("w_su is x2-invariant", is_invariant(ring, wsu, x2, w)));
  c.isometric("x1 w_us", x1, wus.element);
  c.isometric("x2 w_su", x2, wsu.element);

  const Projection<S> tail1 = doubling_limit(ring, x1, cfg.n_max, [&](const Matrix<S>& xn) {
    return left_projection(ring, Matrix<S>(xn * wus.element));
  }, "weak_bishift: inf [x1^n w_us]", w);
  const Projection<S> tail2 = doubling_limit(ring, x2, cfg.n_max, [&](const Matrix<S>& xn) {
    return left_projection(ring, Matrix<S>(xn * wsu.element));
  }, "weak_bishift: inf [x2^n w_su]", w);
  r.certificates.push_back(vanish(ring, "p_ws inf [(x1x2)^n] = 0", Matrix<S>(pws.element * puu.element), w));
  r.certificates.push_back(vanish(ring, "p_ws inf [x1^n w_us] = 0", Matrix<S>(pws.element * tail1.element), w));
  r.certificates.push_back(vanish(ring, "p_ws inf [x2^n w_su] = 0", Matrix<S>(pws.element * tail2.element), w));

  const Projection<S> puu_fix = reducing_fixpoint(
      ring, {x1, x2}, proj_inf(ring, std::vector<Projection<S>>{*w1.find("u"), *w2.find("u")}), w);
  r.certificates.push_back(match(ring, "p_uu agrees with the reducing fixpoint", puu.element, puu_fix.element, w));
  return r;
}

// ---- Halmos-Wallen ----------------------------------------------------------

template <class S>
DecompositionReport<S> halmos_wallen(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg) {
  require_ppi(ring, x, cfg, "halmos_wallen");
  const Projection<S> plus = range_limit(ring, x, cfg.n_max, "halmos_wallen: inf [x^n]", cfg.window);
  const Projection<S> minus = range_limit(ring, Matrix<S>(x.adjoint()), cfg.n_max, "halmos_wallen: inf [x*^n]", cfg.window);
  const Projection<S> pu = proj_inf(ring, std::vector<Projection<S>>{plus, minus});
  const Matrix<S> rest = ring.identity(x.rows()) - pu.element;
  const Projection<S> ps = ring.projection_onto(rest * minus.element);
  const Projection<S> pb = ring.projection_onto(rest * plus.element);
  const Projection<S> pt = ring.complement(proj_sup(ring, std::vector<Projection<S>>{pu, ps, pb}));

  DecompositionReport<S> r;
  r.method = "hw";
  r.basis = {{"u", pu}, {"s", ps}, {"b", pb}, {"t", pt}};
  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x, "x");
  for (const auto& m : r.basis) {
    r.block_classes.push_back({m.label, block_name(m.label[0])});
    c.block(m.label[0], m.label, x, m.projection);
  }
  return r;
}

template <class S>
DecompositionReport<S> hw_pair_doubly(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                      const EngineConfig& cfg) {
  require_ppi(ring, x1, cfg, "hw_pair_doubly");
  require_ppi(ring, x2, cfg, "hw_pair_doubly");
  ring.check_same(x1, x2);
  if (!doubly_commutes(ring, x1, x2, cfg.window))
    fail(ErrorKind::precondition, "hw_pair_doubly: elements are not doubly commuting");
  const auto h1 = halmos_wallen(ring, x1, cfg);
  const auto h2 = halmos_wallen(ring, x2, cfg);

  DecompositionReport<S> r;
  r.method = "hw-pair-doubly";
  Certs<S> c{ring, cfg, r.certificates};
  Fold proj("products are projections");
  for (const auto& a : h1.basis)
    for (const auto& b : h2.basis) {
      const Matrix<S> p = a.projection.element * b.projection.element;
      proj.add(match(ring, "", Matrix<S>(p * p), p, cfg.window));
      proj.add(match(ring, "", p, Matrix<S>(p.adjoint()), cfg.window));
      if (ring.is_zero(p)) continue;
      const std::string label = a.label + "." + b.label;
      const Projection<S> q = ring.projection_onto(p);
      r.basis.push_back({label, q});
      r.block_classes.push_back(
          {label, std::string("x1 ") + block_name(a.label[0]) + ", x2 " + block_name(b.label[0])});
      c.block(a.label[0], label + "/x1", x1, q);
      c.block(b.label[0], label + "/x2", x2, q);
    }
  r.certificates.push_back(proj.c);
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  return r;
}

template <class S>
DecompositionReport<S> hw_pair_product(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                       const EngineConfig& cfg) {
  require_ppi(ring, x1, cfg, "hw_pair_product");
  require_ppi(ring, x2, cfg, "hw_pair_product");
  ring.check_same(x1, x2);
  const Window& w = cfg.window;
  if (!commutes(ring, x1, x2, w)) fail(ErrorKind::precondition, "hw_pair_product: elements do not commute");
  const Matrix<S> y = x1 * x2;
  if (!is_ppi(ring, y, static_cast<unsigned>(y.rows()), w))
    fail(ErrorKind::precondition,
         "hw_pair_product: x1x2 is not a power partial isometry (use largest-ppi to find the corner where it is)");

  const Projection<S> tis = range_limit(ring, Matrix<S>(y.adjoint()), cfg.n_max, "hw_pair_product: inf [(x1x2)*^n]", cfg.window);
  const Projection<S> tcis = range_limit(ring, y, cfg.n_max, "hw_pair_product: inf [(x1x2)^n]", cfg.window);
  const Projection<S> pu = proj_inf(ring, std::vector<Projection<S>>{tis, tcis});
  const Matrix<S> rest = ring.identity(y.rows()) - pu.element;
  const Projection<S> pis = ring.projection_onto(rest * tis.element);
  const Projection<S> pcis = ring.projection_onto(rest * tcis.element);
  const Projection<S> pt = ring.complement(proj_sup(ring, std::vector<Projection<S>>{pu, pis, pcis}));

  DecompositionReport<S> r;
  r.method = "hw-pair-product";
  r.basis = {{"u", pu}, {"is", pis}, {"cis", pcis}, {"t", pt}};
  r.block_classes = {{"u", "unitary pair"},
                     {"is", "isometry pair"},
                     {"cis", "co-isometry pair"},
                     {"t", "x1x2 truncated-shift"}};
  r.flags.push_back({"p_u <= sup{p_is, p_cis}",
                     proj_leq(ring, pu, proj_sup(ring, std::vector<Projection<S>>{pis, pcis}), w)});

  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  c.block('u', "u/x1", x1, pu);
  c.block('u', "u/x2", x2, pu);
  c.isometric("is/x1", x1, pis.element);
  c.isometric("is/x2", x2, pis.element);
  c.coisometric("cis/x1", x1, pcis.element);
  c.coisometric("cis/x2", x2, pcis.element);
  c.block('t', "t/x1x2", y, pt);

  // Power identities for 1 <= n <= lemma_n.
  auto lp = [&](const Matrix<S>& a) { return left_projection(ring, a).element; };
  const unsigned N = cfg.lemma_n;
  const std::pair<const char*, const Matrix<S>*> singles[] = {{"x1", &x1}, {"x2", &x2}, {"x1x2", &y}};
  for (const auto& [name, xp] : singles) {
    const Matrix<S>& x = *xp;
    Fold f(std::string(name) + ": [x*] x^(n-1) [x*^n] = x^(n-1) [x*^n]");
    const Matrix<S> lxs = lp(x.adjoint());
    Matrix<S> xprev = ring.identity(x.rows());  // x^(n-1)
    for (unsigned k = 1; k <= N; ++k) {
      const Matrix<S> xn = xprev * x;
      const Matrix<S> rhs = xprev * lp(xn.adjoint());
      f.add(match(ring, "", Matrix<S>(lxs * rhs), rhs, w));
      xprev = xn;
    }
    r.certificates.push_back(f.c);
  }
  const std::pair<const Matrix<S>*, const Matrix<S>*> orders[] = {{&x1, &x2}, {&x2, &x1}};
  for (const auto& [ap, bp] : orders) {
    const Matrix<S>& a = *ap;
    const Matrix<S>& b = *bp;
    const std::string tag = ap == &x1 ? "(x1,x2)" : "(x2,x1)";
    Fold f1(tag + ": [a*] a^(n-1) [b^n] a*^n = a^(n-1) [b^n] a*^n");
    Fold f2(tag + ": [a* [a^n b^n]] <= [a^(n-1) b^(n-1)]");
    const Matrix<S> las = lp(a.adjoint());
    Matrix<S> aprev = ring.identity(a.rows()), bprev = ring.identity(a.rows());
    for (unsigned k = 1; k <= N; ++k) {
      const Matrix<S> an = aprev * a, bn = bprev * b;
      const Matrix<S> rhs = aprev * lp(bn) * an.adjoint();
      f1.add(match(ring, "", Matrix<S>(las * rhs), rhs, w));
      const Matrix<S> lhs = lp(Matrix<S>(a.adjoint() * lp(Matrix<S>(an * bn))));
      const Matrix<S> bound = lp(Matrix<S>(aprev * bprev));
      f2.add(match(ring, "", Matrix<S>(lhs * bound), lhs, w));
      aprev = an;
      bprev = bn;
    }
    r.certificates.push_back(f1.c);
    r.certificates.push_back(f2.c);
  }
  return r;
}

// ---- largest projections ----------------------------------------------------

template <class S>
ProbeResult maximality_probe(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                             const Projection<S>& p, PairProperty property, const EngineConfig& cfg) {
  const Window& w = cfg.window;
  std::mt19937_64 rng(cfg.seed);
  ProbeResult out;
  const Projection<S> comp = ring.complement(p);
  const std::size_t n = p.dim();
  for (unsigned k = 0; k < cfg.probe_directions; ++k) {
    ++out.directions;
    if (comp.rank() == 0) continue;
    Matrix<S> v;
    do {
      Matrix<S> coeff(comp.rank(), 1);
      for (auto& s : coeff.data()) s = random_scalar(ring, rng);
      v = comp.range_basis * coeff;
    } while (ring.is_zero(v));
    const Matrix<S> vv = v * v.adjoint();
    const S nrm = (v.adjoint() * v)(0, 0);
    const Matrix<S> q = p.element + vv * ScalarOps<S>::inverse(nrm);
    bool valid = commutes(ring, x1, q, w) && commutes(ring, x2, q, w);
    if (valid) {
      if (property == PairProperty::product_ppi) {
        valid = is_ppi(ring, Matrix<S>(x1 * x2 * q), static_cast<unsigned>(n), w);
      } else {
        const Matrix<S> a = x1 * q, b = x2 * q;
        valid = ring.equal(a * b.adjoint(), b.adjoint() * a, w);
      }
    }
    if (valid) ++out.violations;
  }
  return out;
}

template <class S>
DecompositionReport<S> largest_product_ppi(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                           const EngineConfig& cfg) {
  require_ppi(ring, x1, cfg, "largest_product_ppi");
  require_ppi(ring, x2, cfg, "largest_product_ppi");
  ring.check_same(x1, x2);
  const Window& w = cfg.window;
  if (!commutes(ring, x1, x2, w)) fail(ErrorKind::precondition, "largest_product_ppi: elements do not commute");
  const std::size_t n = x1.rows();

  // e = inf_n (1 - [[x1^n][x2*^n] - [x2*^n][x1^n]]); the commutator is constant
  // once both range projections have settled.
  Projection<S> e = ring.identity_projection(n);
  Matrix<S> a = x1, b = x2.adjoint();
  Matrix<S> la_prev, lb_prev;
  bool settled = false;
  for (unsigned k = 1; k <= cfg.n_max && !settled; ++k) {
    const Matrix<S> la = left_projection(ring, a).element, lb = left_projection(ring, b).element;
    const Projection<S> term = ring.complement(left_projection(ring, Matrix<S>(la * lb - lb * la)));
    e = proj_inf(ring, std::vector<Projection<S>>{e, term});
    settled = k > 1 && ring.equal(la, la_prev) && ring.equal(lb, lb_prev);
    la_prev = la, lb_prev = lb;
    a = a * x1;
    b = b * x2.adjoint();
  }
  if (!settled) fail(ErrorKind::indeterminate, "largest_product_ppi: [x1^n], [x2*^n] did not settle");

  const Projection<S> p = reducing_fixpoint(ring, {x1, x2}, e, w);
  DecompositionReport<S> r;
  r.method = "largest-ppi";
  r.basis = {{"p", p}, {"rest", ring.complement(p)}};
  r.block_classes = {{"p", "x1x2 power partial isometry"}};
  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  r.certificates.push_back(flag("x1x2 p is a power partial isometry",
                                is_ppi(ring, Matrix<S>(x1 * x2 * p.element), static_cast<unsigned>(n), w)));
  const ProbeResult probe = maximality_probe(ring, x1, x2, p, PairProperty::product_ppi, cfg);
  r.certificates.push_back({"maximality probe (" + std::to_string(probe.directions) + " directions)",
                            static_cast<double>(probe.violations), probe.violations == 0});
  return r;
}

template <class S>
DecompositionReport<S> largest_doubly_commuting(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                                const EngineConfig& cfg) {
  ring.check_square(x1);
  ring.check_same(x1, x2);
  const Window& w = cfg.window;
  if (!commutes(ring, x1, x2, w)) fail(ErrorKind::precondition, "largest_doubly_commuting: elements do not commute");
  if (!is_contraction(ring, x1) || !is_contraction(ring, x2))
    fail(ErrorKind::precondition, "largest_doubly_commuting: elements must be contractions");

  const Matrix<S> x1s = x1.adjoint();
  const Projection<S> e = ring.complement(left_projection(ring, Matrix<S>(x2 * x1s - x1s * x2)));
  const Projection<S> p = reducing_fixpoint(ring, {x1, x2}, e, w);

  DecompositionReport<S> r;
  r.method = "pd";
  r.basis = {{"p", p}, {"rest", ring.complement(p)}};
  r.block_classes = {{"p", "doubly commuting pair"}};
  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  const Matrix<S> a = x1 * p.element, b = x2 * p.element;
  r.certificates.push_back(match(ring, "(x1 p, x2 p) doubly commute", Matrix<S>(a * b.adjoint()),
                                 Matrix<S>(b.adjoint() * a), w));
  const ProbeResult probe = maximality_probe(ring, x1, x2, p, PairProperty::doubly_commuting, cfg);
  r.certificates.push_back({"maximality probe (" + std::to_string(probe.directions) + " directions)",
                            static_cast<double>(probe.violations), probe.violations == 0});
  return r;
}

// ---- NFL --------------------------------------------------------------------

template <class S>
DecompositionReport<S> nfl(const Ring<S>& ring, const Matrix<S>& x, const EngineConfig& cfg) {
  ring.check_square(x);
  require_nfl_domain(ring, x.rows());
  if (!is_contraction(ring, x)) fail(ErrorKind::precondition, "nfl: element is not a contraction");
  const Projection<S> pu = nfl_unitary_part(ring, x, cfg.n_max);
  const Projection<S> pc = ring.complement(pu);

  DecompositionReport<S> r;
  r.method = "nfl";
  r.basis = {{"u", pu}, {"c", pc}};
  r.block_classes = {{"u", "unitary"}, {"c", "completely-non-unitary"}};
  Certs<S> c{ring, cfg, r.certificates};
  c.basis(r.basis);
  c.commute(r.basis, x, "x");
  c.block('u', "u", x, pu);
  c.block('c', "c", x, pc);
  return r;
}

template <class S>
DecompositionReport<S> nfl_pair_doubly(const Ring<S>& ring, const Matrix<S>& x1, const Matrix<S>& x2,
                                       const EngineConfig& cfg) {
  ring.check_square(x1);
  ring.check_same(x1, x2);
  if (!doubly_commutes(ring, x1, x2, cfg.window))
    fail(ErrorKind::precondition, "nfl_pair_doubly: elements are not doubly commuting");
  const auto n1 = nfl(ring, x1, cfg);
  const auto n2 = nfl(ring, x2, cfg);

  DecompositionReport<S> r;
  r.method = "nfl-pair";
  Certs<S> c{ring, cfg, r.certificates};
  Fold proj("products are projections");
  for (const auto& a : n1.basis)
    for (const auto& b : n2.basis) {
      const Matrix<S> p = a.projection.element * b.projection.element;
      proj.add(match(ring, "", Matrix<S>(p * p), p, cfg.window));
      proj.add(match(ring, "", p, Matrix<S>(p.adjoint()), cfg.window));
      const std::string label = a.label + b.label;
      const Projection<S> q = ring.projection_onto(p);
      r.basis.push_back({label, q});
      r.block_classes.push_back(
          {label, std::string("x1 ") + block_name(a.label[0]) + ", x2 " + block_name(b.label[0])});
      c.block(a.label[0], label + "/x1", x1, q);
      c.block(b.label[0], label + "/x2", x2, q);
    }
  r.certificates.push_back(proj.c);
  c.basis(r.basis);
  c.commute(r.basis, x1, "x1");
  c.commute(r.basis, x2, "x2");
  return r;
}

#define BAER_ENGINE(S)                                                                                   \
  template struct DecompositionReport<S>;                                                                \
  template Projection<S> reducing_fixpoint(const Ring<S>&, const std::vector<Matrix<S>>&,                \
                                           const Projection<S>&, const Window&);                         \
  template DecompositionReport<S> wold(const Ring<S>&, const Matrix<S>&, const EngineConfig&);           \
  template DecompositionReport<S> slocinski(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,          \
                                            const EngineConfig&);                                        \
  template bool corollary_check(const Ring<S>&, const Matrix<S>&, const Matrix<S>&, const EngineConfig&); \
  template DecompositionReport<S> weak_bishift(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,       \
                                               const EngineConfig&);                                     \
  template DecompositionReport<S> halmos_wallen(const Ring<S>&, const Matrix<S>&, const EngineConfig&);  \
  template DecompositionReport<S> hw_pair_doubly(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,     \
                                                 const EngineConfig&);                                   \
  template DecompositionReport<S> hw_pair_product(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,    \
                                                  const EngineConfig&);                                  \
  template DecompositionReport<S> largest_product_ppi(const Ring<S>&, const Matrix<S>&,                  \
                                                      const Matrix<S>&, const EngineConfig&);            \
  template DecompositionReport<S> nfl(const Ring<S>&, const Matrix<S>&, const EngineConfig&);            \
  template DecompositionReport<S> nfl_pair_doubly(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,   \
                                                  const EngineConfig&);                                  \
  template DecompositionReport<S> largest_doubly_commuting(const Ring<S>&, const Matrix<S>&,             \
                                                           const Matrix<S>&, const EngineConfig&);       \
  template std::vector<Certificate> basis_certificates(                                                  \
      const Ring<S>&, const ProjectionBasis<S>&, const std::vector<std::pair<std::string, Matrix<S>>>&,   \
      const Window&);                                                                                    \
  template ProbeResult maximality_probe(const Ring<S>&, const Matrix<S>&, const Matrix<S>&,              \
                                        const Projection<S>&, PairProperty, const EngineConfig&);

BAER_ENGINE(Rational)
BAER_ENGINE(Gf)
BAER_ENGINE(Complex)

}  // namespace baer
