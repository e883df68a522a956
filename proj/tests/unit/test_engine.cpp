#include <gtest/gtest.h>

#include <random>

#include "baer/engine.hpp"
#include "baer/exact_rings.hpp"
#include "baer/oracle.hpp"
#include "baer/shift_model.hpp"
#include "gen.hpp"
#include "mat.hpp"

namespace baer {
namespace {

using gen::eye;
using gen::jordan;
using gen::zeros;
using test::rat_diag;
using test::unit_proj;

const RationalRing Q;
const FloatRing F(ScalarDomain::complex_float());

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::internal_inconsistency;
}

std::string failed(const std::vector<Certificate>& certs) {
  std::string s;
  for (const auto& c : certs)
    if (!c.passed) s += "[" + c.name + " " + std::to_string(c.residual) + "] ";
  return s;
}

template <class S>
void expect_certified(const DecompositionReport<S>& r) {
  EXPECT_TRUE(r.certified()) << r.method << ": " << failed(r.certificates);
}

template <class S>
const Matrix<S>& part(const DecompositionReport<S>& r, const std::string& label) {
  const Projection<S>* p = r.find(label);
  if (!p) throw std::runtime_error("no basis member " + label);
  return p->element;
}

RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
  return k;
}

const RatMatrix kRot = gen::rotation(gen::frac(3, 5), gen::frac(4, 5));
const RatMatrix kRot2 = gen::rotation(gen::frac(5, 13), gen::frac(-12, 13));

EngineConfig exact_cfg() {
  EngineConfig c;
  c.n_max = 12;
  return c;
}

struct Trunc2 {
  CMatrix x1, x2;
  EngineConfig cfg;
};

Trunc2 truncated_pair(const std::string& name) {
  const auto [a, b] = pair_instances(name);
  const bool grid = space_of(a).front().kind == Segment::Kind::grid;
  const std::size_t N = grid ? 12 : 48;
  const unsigned n_max = grid ? 6 : 8;
  const Truncation ta = truncate(a, N, n_max, 32), tb = truncate(b, N, n_max, 32);
  EngineConfig cfg;
  cfg.n_max = n_max;
  cfg.window = ta.window;
  return {ta.matrix, tb.matrix, cfg};
}

// ---- reducing fixpoint -----------------------------------------------------

TEST(ReducingFixpoint, Examples) {
  const Projection<Rational> e = Q.as_projection(rat_diag({"0", "1", "1"}));
  EXPECT_EQ(reducing_fixpoint(Q, {}, e).element, e.element);
  EXPECT_EQ(reducing_fixpoint(Q, {jordan(3)}, Q.as_projection(unit_proj(3, {1}))).element, zeros(3));
  EXPECT_EQ(reducing_fixpoint(Q, {rat_diag({"1", "2"})}, Q.identity_projection(2)).element, eye(2));
  // range{e2,e3} is J3-invariant but not J3*-invariant.
  EXPECT_EQ(reducing_fixpoint(Q, {jordan(3)}, e).element, zeros(3));
}

TEST(ReducingFixpoint, IsLargestReducingBelowE) {
  gen::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const gen::Instance in = gen::ppi(rng, 6);
    const std::size_t n = in.x.rows();
    // Unitary part is reducing; seeding with it must return it unchanged.
    const Projection<Rational> pu = Q.as_projection(in.unitary_part);
    EXPECT_EQ(reducing_fixpoint(Q, {in.x}, pu).element, in.unitary_part);
    const Projection<Rational> p = reducing_fixpoint(Q, {in.x}, Q.identity_projection(n));
    EXPECT_EQ(p.element, eye(n));
  }
}

// ---- Wold ------------------------------------------------------------------

TEST(Wold, UnitaryIsAllUnitary) {
  const auto r = wold(Q, kRot, exact_cfg());
  EXPECT_EQ(part(r, "u"), eye(2));
  EXPECT_EQ(part(r, "s"), zeros(2));
  expect_certified(r);
}

TEST(Wold, TruncatedShiftIsAllShiftOnTheWindow) {
  const Truncation t = truncate(OperatorExpr::shift(1), 64, 16, 32);
  EngineConfig cfg;
  cfg.window = t.window;
  const auto r = wold(F, t.matrix, cfg);
  EXPECT_TRUE(F.is_zero(part(r, "u"), t.window));
  EXPECT_TRUE(F.equal(part(r, "s"), F.identity(64), t.window));
  expect_certified(r);
}

TEST(Wold, UnitaryPlusShift) {
  const CMatrix u = test::to_complex(kRot);
  const OperatorExpr e = OperatorExpr::sum({OperatorExpr::unitary(u), OperatorExpr::shift(1)});
  const Truncation t = truncate(e, 64, 16, 32);
  EngineConfig cfg;
  cfg.window = t.window;
  const auto r = wold(F, t.matrix, cfg);
  const GroundTruth g = ground_truth_wold(e);
  EXPECT_TRUE(F.equal(part(r, "u"), indicator(t, g.wold, 'u'), t.window));
  EXPECT_TRUE(F.equal(part(r, "s"), indicator(t, g.wold, 's'), t.window));
  expect_certified(r);
}

TEST(Wold, RandomIsometriesMatchGroundTruth) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 8; ++k) {
    const OperatorExpr e = random_isometry_expr(rng);
    const Truncation t = truncate(e, 48, 12, 24);
    EngineConfig cfg;
    cfg.window = t.window;
    const auto r = wold(F, t.matrix, cfg);
    const GroundTruth g = ground_truth_wold(e);
    EXPECT_TRUE(F.equal(part(r, "u"), indicator(t, g.wold, 'u'), t.window)) << to_text(e);
    expect_certified(r);
  }
}

TEST(Wold, RejectsNonIsometry) {
  EXPECT_EQ(kind_of([] { wold(Q, jordan(3), exact_cfg()); }), ErrorKind::precondition);
}

TEST(Wold, FlagsNonStabilization) {
  // The truncated shift's [x^n] keeps shrinking past the sampled exponents.
  const Truncation t = truncate(OperatorExpr::shift(1), 64, 0);
  EngineConfig cfg;
  cfg.n_max = 3;
  cfg.window = truncate(OperatorExpr::shift(1), 64, 3, 60).window;
  EXPECT_EQ(kind_of([&] { wold(F, t.matrix, cfg); }), ErrorKind::indeterminate);
}

// ---- Slocinski, weak bi-shift ----------------------------------------------

TEST(Slocinski, Catalog) {
  {
    const Trunc2 p = truncated_pair("unitary-pair");
    const auto r = slocinski(F, p.x1, p.x2, p.cfg);
    ASSERT_TRUE(r.conditions.has_value());
    for (bool c : *r.conditions) EXPECT_TRUE(c);
    EXPECT_TRUE(F.equal(part(r, "uu"), F.identity(p.x1.rows()), p.cfg.window));
    expect_certified(r);
  }
  for (const char* name : {"grid", "powers"}) {
    const Trunc2 p = truncated_pair(name);
    const auto r = slocinski(F, p.x1, p.x2, p.cfg);
    for (bool c : *r.conditions) EXPECT_TRUE(c) << name;
    EXPECT_TRUE(F.equal(part(r, "ss"), F.identity(p.x1.rows()), p.cfg.window)) << name;
    for (const char* other : {"uu", "us", "su"}) EXPECT_TRUE(F.is_zero(part(r, other), p.cfg.window)) << name;
    expect_certified(r);
  }
}

TEST(Slocinski, CorollaryAgreesOnCatalog) {
  for (const std::string& name : pair_catalog()) {
    const Trunc2 p = truncated_pair(name);
    bool verdict = false;
    EXPECT_NO_THROW(verdict = corollary_check(F, p.x1, p.x2, p.cfg)) << name;
    EXPECT_EQ(verdict, slocinski(F, p.x1, p.x2, p.cfg).holds) << name;
  }
  const Trunc2 p = truncated_pair("unitary-pair");
  EXPECT_TRUE(corollary_check(F, p.x1, p.x2, p.cfg));
}

TEST(Slocinski, RejectsNonCommuting) {
  const RatMatrix a = kRot, b = rat_diag({"1", "-1"});
  EXPECT_EQ(kind_of([&] { slocinski(Q, a, b, exact_cfg()); }), ErrorKind::precondition);
}

TEST(WeakBishift, Catalog) {
  {
    const Trunc2 p = truncated_pair("unitary-pair");
    const auto r = weak_bishift(F, p.x1, p.x2, p.cfg);
    EXPECT_TRUE(F.equal(part(r, "uu"), F.identity(p.x1.rows()), p.cfg.window));
    EXPECT_TRUE(F.is_zero(part(r, "ws"), p.cfg.window));
    expect_certified(r);
  }
  {
    const Trunc2 p = truncated_pair("grid");
    const auto r = weak_bishift(F, p.x1, p.x2, p.cfg);
    EXPECT_TRUE(F.equal(part(r, "ws"), F.identity(p.x1.rows()), p.cfg.window));
    for (const char* other : {"uu", "us", "su"}) EXPECT_TRUE(F.is_zero(part(r, other), p.cfg.window));
    expect_certified(r);
  }
  {
    const auto [a, b] = pair_instances("mixed");
    const Trunc2 p = truncated_pair("mixed");
    const Truncation t = truncate(a, 48, 8, 32);
    const auto r = weak_bishift(F, p.x1, p.x2, p.cfg);
    EXPECT_TRUE(F.equal(part(r, "uu"), indicator(t, ground_truth_wold(a).wold, 'u'), p.cfg.window));
    expect_certified(r);
  }
}

// ---- Halmos-Wallen ---------------------------------------------------------

TEST(HalmosWallen, Examples) {
  const auto ru = halmos_wallen(Q, kRot, exact_cfg());
  EXPECT_EQ(part(ru, "u"), eye(2));
  expect_certified(ru);

  const auto rj = halmos_wallen(Q, jordan(3), exact_cfg());
  EXPECT_EQ(part(rj, "t"), eye(3));
  for (const char* l : {"u", "s", "b"}) EXPECT_EQ(part(rj, l), zeros(3));
  expect_certified(rj);

  const RatMatrix x = gen::block_diag({kRot, jordan(2), jordan(3)});
  const auto r = halmos_wallen(Q, x, exact_cfg());
  EXPECT_EQ(part(r, "u"), unit_proj(7, {0, 1}));
  EXPECT_EQ(part(r, "t"), unit_proj(7, {2, 3, 4, 5, 6}));
  expect_certified(r);
}

TEST(HalmosWallen, GeneratedPpisMatchTheirUnitaryParts) {
  gen::Rng rng(31);
  for (int k = 0; k < 30; ++k) {
    const gen::Instance in = gen::ppi(rng, 6);
    const auto r = halmos_wallen(Q, in.x, exact_cfg());
    EXPECT_EQ(part(r, "u"), in.unitary_part) << "instance " << k;
    EXPECT_EQ(part(r, "u") + part(r, "t"), eye(in.x.rows())) << "finite PPIs have no shift parts";
    expect_certified(r);
  }
}

TEST(HalmosWallen, TruncatedMixedSum) {
  const OperatorExpr e = OperatorExpr::sum({OperatorExpr::unitary(test::to_complex(kRot)), OperatorExpr::shift(1),
                                            OperatorExpr::backshift(1), OperatorExpr::trunc(3)});
  const Truncation t = truncate(e, 40, 8, two_sided_window(space_of(e), 40, 16));
  EngineConfig cfg;
  cfg.n_max = 8;
  cfg.window = t.window;
  const auto r = halmos_wallen(F, t.matrix, cfg);
  const GroundTruth g = ground_truth_hw(e);
  for (char l : {'u', 's', 'b', 't'})
    EXPECT_TRUE(F.equal(part(r, std::string(1, l)), indicator(t, g.hw, l), t.window)) << l;
  expect_certified(r);
}

TEST(HalmosWallen, WindowTooWideForAdjointPowers) {
  // L = 17 with 9 trusted positions: no exponent clears the shift strand on
  // the window while keeping the backward strand exact, so the strands are
  // misread as truncated shifts. The two-sided cap exists for this.
  const OperatorExpr e = OperatorExpr::sum({OperatorExpr::shift(1), OperatorExpr::backshift(1), OperatorExpr::trunc(3)});
  const Truncation t = truncate(e, 37, 8, 16);
  ASSERT_EQ(t.strand_length, 17U);
  EngineConfig cfg;
  cfg.n_max = 8;
  cfg.window = t.window;
  const auto r = halmos_wallen(F, t.matrix, cfg);
  EXPECT_FALSE(F.equal(part(r, "s"), indicator(t, ground_truth_hw(e).hw, 's'), t.window));
  EXPECT_EQ(two_sided_window(t.space, 37, 16), 3U);
}

TEST(HalmosWallen, RejectsNonPpi) {
  RatMatrix x(3, 3);
  x(1, 0) = 1;
  x(0, 1) = gen::frac(3, 5);
  x(2, 1) = gen::frac(4, 5);
  EXPECT_EQ(kind_of([&] { halmos_wallen(Q, x, exact_cfg()); }), ErrorKind::precondition);
}

TEST(HwPairDoubly, Examples) {
  const auto ri = hw_pair_doubly(Q, eye(3), eye(3), exact_cfg());
  ASSERT_EQ(ri.basis.size(), 1U);
  EXPECT_EQ(ri.basis[0].label, "u.u");
  EXPECT_EQ(ri.basis[0].projection.element, eye(3));
  expect_certified(ri);

  const RatMatrix x1 = gen::block_diag({kRot, jordan(2), kRot, jordan(2)});
  const RatMatrix x2 = gen::block_diag({kRot2, eye(2), zeros(2), zeros(2)});
  const auto r = hw_pair_doubly(Q, x1, x2, exact_cfg());
  EXPECT_EQ(r.basis.size(), 4U);
  EXPECT_EQ(part(r, "u.u"), unit_proj(8, {0, 1}));
  EXPECT_EQ(part(r, "t.u"), unit_proj(8, {2, 3}));
  EXPECT_EQ(part(r, "u.t"), unit_proj(8, {4, 5}));
  EXPECT_EQ(part(r, "t.t"), unit_proj(8, {6, 7}));
  expect_certified(r);

  const auto rk = hw_pair_doubly(Q, kron(jordan(2), eye(3)), kron(eye(2), jordan(3)), exact_cfg());
  ASSERT_EQ(rk.basis.size(), 1U);
  EXPECT_EQ(part(rk, "t.t"), eye(6));
}

TEST(HwPairDoubly, RejectsSinglyCommuting) {
  EXPECT_EQ(kind_of([] { hw_pair_doubly(Q, jordan(3), jordan(3), exact_cfg()); }), ErrorKind::precondition);
}

TEST(HwPairProduct, Examples) {
  const auto ru = hw_pair_product(Q, kRot, kRot2, exact_cfg());
  EXPECT_EQ(part(ru, "u"), eye(2));
  expect_certified(ru);

  const RatMatrix j = jordan(3);
  const auto rj = hw_pair_product(Q, j, RatMatrix(j * j), exact_cfg());
  EXPECT_EQ(part(rj, "t"), eye(3));
  for (const char* l : {"u", "is", "cis"}) EXPECT_EQ(part(rj, l), zeros(3));
  expect_certified(rj);

  const auto r = hw_pair_product(Q, gen::block_diag({kRot, jordan(2)}), gen::block_diag({kRot2, jordan(2)}), exact_cfg());
  EXPECT_EQ(part(r, "u"), unit_proj(4, {0, 1}));
  EXPECT_EQ(part(r, "t"), unit_proj(4, {2, 3}));
  expect_certified(r);
}

TEST(HwPairProduct, LemmaIdentitiesOnGeneratedPairs) {
  gen::Rng rng(41);
  for (int k = 0; k < 25; ++k) {
    const gen::PairInstance p = gen::ppi_pair(rng, 6);
    const auto r = hw_pair_product(Q, p.x1, p.x2, exact_cfg());
    expect_certified(r);
    std::vector<Projection<Rational>> members;
    for (const auto& m : r.basis) members.push_back(m.projection);
    EXPECT_TRUE(is_basis(Q, members));
  }
}

TEST(HwPairProduct, RejectsNonPpiProduct) {
  gen::Rng rng(43);
  const gen::PairInstance p = gen::non_ppi_product(rng);
  EXPECT_EQ(kind_of([&] { hw_pair_product(Q, p.x1, p.x2, exact_cfg()); }), ErrorKind::precondition);
}

// ---- largest product-PPI and doubly commuting projections -------------------

TEST(LargestProductPpi, FullWhenProductIsAlreadyPpi) {
  gen::Rng rng(51);
  for (int k = 0; k < 15; ++k) {
    const gen::PairInstance p = gen::ppi_pair(rng, 6);
    const auto r = largest_product_ppi(Q, p.x1, p.x2, exact_cfg());
    EXPECT_EQ(part(r, "p"), eye(p.x1.rows())) << "pair " << k;
    expect_certified(r);
  }
  const RatMatrix x1 = gen::block_diag({kRot, eye(2)}), x2 = gen::block_diag({kRot2, jordan(2)});
  EXPECT_EQ(part(largest_product_ppi(Q, x1, x2, exact_cfg()), "p"), eye(4));
}

TEST(LargestProductPpi, StrictlyBelowOneForNonPpiProduct) {
  gen::Rng rng(53);
  for (int k = 0; k < 15; ++k) {
    const gen::PairInstance p = gen::product_ppi_candidate(rng);
    const auto r = largest_product_ppi(Q, p.x1, p.x2, exact_cfg());
    const RatMatrix& pp = part(r, "p");
    EXPECT_NE(pp, eye(p.x1.rows()));
    EXPECT_TRUE(commutes(Q, pp, p.x1) && commutes(Q, pp, p.x2));
    EXPECT_TRUE(is_ppi(Q, RatMatrix(p.x1 * p.x2 * pp), 12));
    const ProbeResult probe =
        maximality_probe(Q, p.x1, p.x2, Q.as_projection(pp), PairProperty::product_ppi, exact_cfg());
    EXPECT_EQ(probe.violations, 0U);
    EXPECT_EQ(probe.directions, exact_cfg().probe_directions);
    expect_certified(r);
  }
}

TEST(LargestDoublyCommuting, Examples) {
  EXPECT_EQ(part(largest_doubly_commuting(Q, kRot, kRot2, exact_cfg()), "p"), eye(2));
  EXPECT_EQ(part(largest_doubly_commuting(Q, jordan(3), jordan(3), exact_cfg()), "p"), zeros(3));
  const RatMatrix x1 = gen::block_diag({rat_diag({"1/2", "1"}), jordan(3)});
  const RatMatrix x2 = gen::block_diag({rat_diag({"1", "-1/3"}), jordan(3)});
  const auto r = largest_doubly_commuting(Q, x1, x2, exact_cfg());
  EXPECT_EQ(part(r, "p"), unit_proj(5, {0, 1}));
  expect_certified(r);
}

TEST(LargestDoublyCommuting, MaximalOnGeneratedPairs) {
  gen::Rng rng(57);
  for (int k = 0; k < 20; ++k) {
    const gen::PairInstance p = gen::commuting_contractions(rng, 6, k % 4 == 0);
    const auto r = largest_doubly_commuting(Q, p.x1, p.x2, exact_cfg());
    const RatMatrix& pd = part(r, "p");
    EXPECT_TRUE(k % 4 != 0 || pd == eye(p.x1.rows()));
    EXPECT_TRUE(doubly_commutes(Q, RatMatrix(p.x1 * pd), RatMatrix(p.x2 * pd)));
    const ProbeResult probe =
        maximality_probe(Q, p.x1, p.x2, Q.as_projection(pd), PairProperty::doubly_commuting, exact_cfg());
    EXPECT_EQ(probe.violations, 0U) << "pair " << k;
    expect_certified(r);
  }
}

// ---- NFL -------------------------------------------------------------------

TEST(Nfl, Examples) {
  EXPECT_EQ(part(nfl(Q, kRot, exact_cfg()), "u"), eye(2));
  const auto rh = nfl(Q, RatMatrix(eye(3) * gen::frac(1, 2)), exact_cfg());
  EXPECT_EQ(part(rh, "u"), zeros(3));
  EXPECT_EQ(part(rh, "c"), eye(3));
  const auto r = nfl(Q, rat_diag({"1", "1/2"}), exact_cfg());
  EXPECT_EQ(part(r, "u"), unit_proj(2, {0}));
  expect_certified(r);
}

TEST(Nfl, MatchesBruteForceOnGeneratedContractions) {
  gen::Rng rng(61);
  for (int k = 0; k < 30; ++k) {
    const gen::Instance in = gen::contraction(rng, 6);
    const auto r = nfl(Q, in.x, exact_cfg());
    EXPECT_EQ(part(r, "u"), in.unitary_part) << "instance " << k;
    EXPECT_EQ(part(r, "u"), oracle::brute_unitary_part(in.x));
    expect_certified(r);
  }
}

TEST(Nfl, Errors) {
  EXPECT_EQ(kind_of([] { nfl(Q, RatMatrix(eye(2) * Rational(2)), exact_cfg()); }), ErrorKind::precondition);
  const GfRing g(construct_gf_ring(3, 2));
  EXPECT_EQ(kind_of([&] { nfl(g, g.identity(2), EngineConfig{}); }), ErrorKind::axiom_violation);
}

TEST(NflPair, Examples) {
  const auto ru = nfl_pair_doubly(Q, kRot, kRot2, exact_cfg());
  EXPECT_EQ(part(ru, "uu"), eye(2));

  const auto r = nfl_pair_doubly(Q, rat_diag({"1", "1/2"}), rat_diag({"1/3", "1"}), exact_cfg());
  EXPECT_EQ(part(r, "uu"), zeros(2));
  EXPECT_EQ(part(r, "uc"), unit_proj(2, {0}));
  EXPECT_EQ(part(r, "cu"), unit_proj(2, {1}));
  EXPECT_EQ(part(r, "cc"), zeros(2));
  expect_certified(r);

  const auto rk = nfl_pair_doubly(Q, kron(kRot, eye(2)), kron(eye(2), RatMatrix(eye(2) * gen::frac(1, 2))), exact_cfg());
  EXPECT_EQ(part(rk, "uc"), eye(4));
}

TEST(NflPair, RejectsSinglyCommuting) {
  EXPECT_EQ(kind_of([] { nfl_pair_doubly(Q, jordan(3), jordan(3), exact_cfg()); }), ErrorKind::precondition);
}

// ---- report plumbing ---------------------------------------------------------

TEST(Report, BasisCertificatesDetectBrokenBases) {
  ProjectionBasis<Rational> b{{"a", Q.as_projection(unit_proj(2, {0}))}, {"b", Q.as_projection(unit_proj(2, {0}))}};
  const auto certs = basis_certificates(Q, b, {{"x", eye(2)}});
  bool any_failed = false;
  for (const auto& c : certs) any_failed = any_failed || !c.passed;
  EXPECT_TRUE(any_failed);

  b[1].projection = Q.as_projection(unit_proj(2, {1}));
  for (const auto& c : basis_certificates(Q, b, {{"x", rat_diag({"1", "2"})}})) EXPECT_TRUE(c.passed) << c.name;
  const auto noncomm = basis_certificates(Q, b, {{"x", kRot}});
  EXPECT_FALSE(std::all_of(noncomm.begin(), noncomm.end(), [](const Certificate& c) { return c.passed; }));
}

TEST(Report, Lookup) {
  const auto r = wold(Q, kRot, exact_cfg());
  EXPECT_EQ(r.method, "wold");
  EXPECT_NE(r.find("u"), nullptr);
  EXPECT_EQ(r.find("zz"), nullptr);
  EXPECT_NE(r.certificate("basis: sum is 1"), nullptr);
  EXPECT_EQ(r.certificate("no such certificate"), nullptr);
}

}  // namespace
}  // namespace baer
