#include <gtest/gtest.h>

#include <random>

#include "baer/ring.hpp"
#include "baer/shift_model.hpp"
#include "mat.hpp"

namespace baer {
namespace {

using E = OperatorExpr;

const FloatRing F(ScalarDomain::complex_float());

CMatrix subdiag(std::size_t n) {
  CMatrix s(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::internal_inconsistency;
}

TEST(Truncate, ShiftIsSubdiagonal) {
  const Truncation t = truncate(E::shift(1), 4);
  EXPECT_EQ(t.matrix, subdiag(4));
  EXPECT_EQ(t.strand_length, 4U);
}

TEST(Truncate, DirectSumLayout) {
  const CMatrix u = test::cmat({{0.0, 1.0}, {1.0, 0.0}});
  const Truncation t = truncate(E::sum({E::unitary(u), E::shift(1)}), 6);
  EXPECT_EQ(t.matrix, direct_sum<Complex>({u, subdiag(4)}));
  EXPECT_EQ(t.segment_begin, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(t.labels.front(), "f0.0");
  EXPECT_EQ(t.labels.back(), "s1.0.3");
}

TEST(Truncate, GridShiftIndexing) {
  const Truncation t = truncate(E::grid(1), 3);
  ASSERT_EQ(t.matrix.rows(), 9U);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t col = i * 3 + j;
      for (std::size_t row = 0; row < 9; ++row) {
        const bool hit = i + 1 < 3 && row == (i + 1) * 3 + j;
        EXPECT_EQ(t.matrix(row, col), Complex(hit ? 1.0 : 0.0)) << row << "," << col;
      }
    }
}

TEST(Truncate, InterleavedMultiplicity) {
  const Truncation t = truncate(E::shift(2), 6);
  EXPECT_EQ(t.strand_length, 3U);
  // e_(pos, strand) at pos * 2 + strand moves to (pos + 1) * 2 + strand.
  EXPECT_EQ(t.matrix(2, 0), Complex(1.0));
  EXPECT_EQ(t.matrix(3, 1), Complex(1.0));
  EXPECT_EQ(t.matrix(5, 3), Complex(1.0));
  EXPECT_EQ(frobenius(t.matrix), 2.0);
}

TEST(Truncate, SumIsBlockDiagonal) {
  // Sizes chosen so every strand has length 8 in all three layouts.
  const CMatrix u = test::cmat({{0.0, 1.0}, {1.0, 0.0}});
  const E a = E::sum({E::unitary(u), E::shift(1)}), b = E::shift(1);
  const Truncation ta = truncate(a, 10), tb = truncate(b, 8), tab = truncate(E::sum({a, b}), 18);
  ASSERT_EQ(tab.strand_length, 8U);
  EXPECT_EQ(tab.matrix, direct_sum<Complex>({ta.matrix, tb.matrix}));
  const E one = E::unitary(test::cmat({{1.0}}));
  EXPECT_EQ(truncate(E::sum({one, E::trunc(3)}), 8).matrix, direct_sum<Complex>({test::cmat({{1.0}}), subdiag(3)}));
}

TEST(Truncate, WindowExcludesBoundary) {
  const Truncation t = truncate(E::sum({E::unitary(test::cmat({{1.0}})), E::shift(1)}), 20, 6);
  // Finite coordinate plus strand positions 0..(19 - 6 - 1).
  EXPECT_EQ(t.window.size(), 1U + 13U);
  EXPECT_EQ(t.window.front(), 0U);
  EXPECT_EQ(t.window.back(), 13U);
  EXPECT_EQ(truncate(E::shift(1), 20, 6, 5).window.size(), 5U);
}

TEST(Truncate, IsometriesAreIsometricOnTheWindow) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const E e = random_isometry_expr(rng);
    const Truncation t = truncate(e, 40, 4);
    const CMatrix g = t.matrix.adjoint() * t.matrix;
    EXPECT_TRUE(F.equal(g, F.identity(g.rows()), t.window)) << to_text(e);
  }
}

TEST(Truncate, Errors) {
  EXPECT_EQ(kind_of([] { truncate(E::unitary(CMatrix(3, 3)), 4); }), ErrorKind::truncation_too_small);
  EXPECT_EQ(kind_of([] { truncate(E::shift(1), 4, 6); }), ErrorKind::truncation_too_small);
  EXPECT_EQ(kind_of([] { truncate(E::sum({E::trunc(2), E::shift(1)}), 2); }), ErrorKind::truncation_too_small);
  EXPECT_EQ(kind_of([] { space_of(E::compose(E::shift(1), E::trunc(2))); }), ErrorKind::malformed_element);
  EXPECT_EQ(kind_of([] { truncate(E::sum({E::grid(1), E::shift(1)}), 8); }), ErrorKind::malformed_element);
}

TEST(GroundTruth, Wold) {
  EXPECT_EQ(ground_truth_wold(E::unitary(test::cmat({{1.0}}))).wold, std::vector<char>{'u'});
  EXPECT_EQ(ground_truth_wold(E::shift(1)).wold, std::vector<char>{'s'});
  const E e = E::sum({E::unitary(test::cmat({{0.0, 1.0}, {1.0, 0.0}})), E::shift(3)});
  EXPECT_EQ(ground_truth_wold(e).wold, (std::vector<char>{'u', 's'}));
  EXPECT_EQ(ground_truth_wold(E::power(E::shift(1), 2)).wold, std::vector<char>{'s'});
  EXPECT_EQ(kind_of([] { ground_truth_wold(E::trunc(3)); }), ErrorKind::precondition);
  EXPECT_EQ(kind_of([] { ground_truth_wold(E::backshift(1)); }), ErrorKind::precondition);
}

TEST(GroundTruth, IndicatorsFormABasis) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const E e = random_isometry_expr(rng);
    const Truncation t = truncate(e, 32);
    const GroundTruth g = ground_truth_wold(e);
    const CMatrix pu = indicator(t, g.wold, 'u'), ps = indicator(t, g.wold, 's');
    EXPECT_TRUE(F.is_zero(pu * ps));
    EXPECT_TRUE(F.equal(pu + ps, F.identity(pu.rows())));
  }
}

TEST(GroundTruth, HalmosWallenLabels) {
  const E e = E::sum({E::unitary(test::cmat({{1.0}})), E::shift(1), E::backshift(1), E::trunc(3),
                      E::adjoint(E::shift(2))});
  EXPECT_EQ(ground_truth_hw(e).hw, (std::vector<char>{'u', 's', 'b', 't', 'b'}));
}

TEST(Catalog, PairsCommute) {
  for (const std::string& name : pair_catalog()) {
    const auto [a, b] = pair_instances(name);
    const SpaceDescriptor sp = space_of(a);
    ASSERT_EQ(sp, space_of(b)) << name;
    const Truncation ta = truncate(a, 24, 4), tb = truncate(b, 24, 4);
    EXPECT_TRUE(F.equal(ta.matrix * tb.matrix, tb.matrix * ta.matrix, ta.window)) << name;
  }
  EXPECT_THROW(pair_instances("nope"), Error);
}

TEST(Catalog, DoubleCommutation) {
  auto check = [](const char* name) {
    const auto [a, b] = pair_instances(name);
    const Truncation ta = truncate(a, 10, 2), tb = truncate(b, 10, 2);
    return F.equal(ta.matrix * tb.matrix.adjoint(), tb.matrix.adjoint() * ta.matrix, ta.window);
  };
  EXPECT_TRUE(check("grid"));
  EXPECT_TRUE(check("unitary-pair"));
  EXPECT_FALSE(check("equal-shift"));
}

TEST(Random, CommutingUnitaries) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 5; ++k) {
    const auto [u1, u2] = random_commuting_unitaries(4, rng);
    EXPECT_TRUE(F.equal(u1 * u2, u2 * u1));
    EXPECT_TRUE(F.equal(u1.adjoint() * u1, F.identity(4)));
    EXPECT_TRUE(F.equal(u2 * u2.adjoint(), F.identity(4)));
  }
}

TEST(Random, IsometryPairsCommuteOnTheWindow) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto [a, b] = random_isometry_pair(rng);
    const Truncation ta = truncate(a, 48, 8), tb = truncate(b, 48, 8);
    EXPECT_TRUE(F.equal(ta.matrix * tb.matrix, tb.matrix * ta.matrix, ta.window)) << to_text(a) << " / " << to_text(b);
  }
}

TEST(Text, RoundTrip) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 20; ++k) {
    const E e = random_isometry_expr(rng);
    const std::string s = to_text(e);
    const E back = parse_text(s);
    EXPECT_EQ(to_text(back), s);
    EXPECT_TRUE(F.equal(truncate(back, 24).matrix, truncate(e, 24).matrix));
  }
  const E e = parse_text("sum(unitary([[0,1],[1,0]]),shift(1))");
  EXPECT_EQ(space_of(e).size(), 2U);
  EXPECT_EQ(to_text(parse_text("adjoint(trunc(3))")), "adjoint(trunc(3))");
}

TEST(Text, Errors) {
  for (const char* bad : {"", "shift(", "shift(0)", "unitary([[1,2]])", "grid(3)", "foo(1)", "shift(1) x"})
    EXPECT_THROW(parse_text(bad), Error) << bad;
}

}  // namespace
}  // namespace baer
