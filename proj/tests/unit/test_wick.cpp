#include <gtest/gtest.h>

#include "prodsys/expression.hpp"
#include "prodsys/wick.hpp"

namespace prodsys {
namespace {

WickKey key(MonoidElement s, BasisLabel x, MonoidElement t, BasisLabel y) {
  return WickKey{std::move(s), std::move(x), std::move(t), std::move(y)};
}

WickElement exact(const Outcome<WickElement>& o) {
  EXPECT_TRUE(o.exact()) << o.inexact_reason;
  return o.value.value_or(WickElement{});
}

TEST(Canonical, CancelsAndMerges) {
  const Monoid m = Monoid::naturals();
  const WickKey k = key(m.generator(0, 1), {}, m.identity(), {});
  EXPECT_TRUE(WickElement::canonicalize({{k, 1.0}, {k, -1.0}}).is_zero());
  const WickElement two = WickElement::canonicalize({{k, 1.0}, {k, 1.0}});
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.terms().begin()->second, Complex(2.0));
}

TEST(Adjoint, SwapsAndConjugates) {
  const Monoid m = Monoid::free_naturals(2);
  const WickElement x = WickElement::basis_monomial(key(m.parse("a"), {}, m.parse("b"), {}), {1, 2});
  const WickElement y = adjoint(x);
  ASSERT_EQ(y.size(), 1u);
  EXPECT_EQ(y.terms().begin()->first, key(m.parse("b"), {}, m.parse("a"), {}));
  EXPECT_EQ(y.terms().begin()->second, Complex(1, -2));
  EXPECT_EQ(max_difference(adjoint(y), x), 0.0);
}

TEST(Multiply, IsometryRelations) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::trivial(m);
  const WickElement v = WickElement::basis_monomial(key(m.generator(0, 1), {}, m.identity(), {}));
  EXPECT_EQ(max_difference(exact(wick_multiply(sys, adjoint(v), v)), WickElement::identity()), 0.0);
  const WickElement p = exact(wick_multiply(sys, v, adjoint(v)));
  EXPECT_EQ(max_difference(p, WickElement::basis_monomial(key(m.generator(0, 1), {}, m.generator(0, 1), {}))), 0.0);
}

TEST(Multiply, ProperJoinSeries) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  const MonoidElement e = m.identity(), s10 = m.parse("(1,0)"), s01 = m.parse("(0,1)");
  for (std::uint32_t i = 0; i < 2; ++i) {
    for (std::uint32_t j = 0; j < 2; ++j) {
      const WickElement a = WickElement::basis_monomial(key(e, {}, s10, {i}));
      const WickElement b = WickElement::basis_monomial(key(s01, {j}, e, {}));
      WickElement want;
      if (i == j) {
        for (std::uint32_t k = 0; k < 2; ++k) want.add(key(s01, {k}, s10, {k}), 1.0);
      }
      EXPECT_EQ(max_difference(exact(wick_multiply(sys, a, b)), want), 0.0) << i << j;
    }
  }
}

TEST(Multiply, InfiniteJoinVanishes) {
  const Monoid m = Monoid::free_naturals(2);
  const ProductSystem sys = ProductSystem::trivial(m);
  const WickElement a = WickElement::basis_monomial(key(m.identity(), {}, m.parse("a"), {}));
  const WickElement b = WickElement::basis_monomial(key(m.parse("b"), {}, m.identity(), {}));
  EXPECT_TRUE(exact(wick_multiply(sys, a, b)).is_zero());
}

TEST(Multiply, InfiniteQuotientIsInexact) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys =
      ProductSystem::word_graded(m, {GeneratorDim::infinite_truncated(2), GeneratorDim::infinite_truncated(2)});
  const WickElement a = WickElement::basis_monomial(key(m.identity(), {}, m.parse("(1,0)"), {0}));
  const WickElement b = WickElement::basis_monomial(key(m.parse("(0,1)"), {0}, m.identity(), {}));
  const auto ab = wick_multiply(sys, a, b);
  EXPECT_FALSE(ab.exact());
  EXPECT_NE(ab.inexact_reason.find("infinite"), std::string::npos);
}

TEST(PhiDelta, KeepsDiagonalTerms) {
  const Monoid m = Monoid::free_naturals(2);
  const WickElement off = WickElement::basis_monomial(key(m.parse("a"), {}, m.parse("b"), {}));
  const WickElement on = WickElement::basis_monomial(key(m.parse("ab"), {}, m.parse("ab"), {}), 3.0);
  EXPECT_TRUE(phi_delta(off).is_zero());
  EXPECT_EQ(max_difference(phi_delta(on), on), 0.0);
  EXPECT_EQ(max_difference(phi_delta(on + off), on), 0.0);
}

TEST(GaugeDegree, Examples) {
  const Monoid m = Monoid::free_naturals(2);
  EXPECT_EQ(gauge_degree(m, key(m.parse("a"), {}, m.parse("b"), {})), m.parse("ab^-1"));
  EXPECT_TRUE(gauge_degree(m, key(m.parse("ab"), {}, m.parse("ab"), {})).is_identity());
}

TEST(RhoOfCompact, RankOneAndIdentity) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2)});
  const MonoidElement one = m.generator(0, 1);
  const FiberVector x = FiberVector::basis(one, {0}), y = FiberVector::basis(one, {1});
  const WickElement r = rho_of_compact(sys, FiberOperator::rank_one(x, y));
  EXPECT_EQ(max_difference(r, WickElement::monomial(x, y)), 0.0);
  const WickElement id = rho_of_compact(sys, FiberOperator::identity(one));
  EXPECT_EQ(id.size(), 2u);
  EXPECT_TRUE(id.is_diagonal());

  const ProductSystem inf = ProductSystem::word_graded(m, {GeneratorDim::infinite_truncated(3)});
  EXPECT_THROW(rho_of_compact(inf, FiberOperator::identity(one)), UnsupportedOperation);
}

TEST(Covariance, ZeroBranchAndProperJoin) {
  const Monoid f = Monoid::free_naturals(2);
  const ProductSystem trivial = ProductSystem::trivial(f);
  const auto c = covariance_check_symbolic(trivial, FiberOperator::identity(f.parse("a")),
                                           FiberOperator::identity(f.parse("b")));
  ASSERT_TRUE(c.exact());
  EXPECT_TRUE(c.value->holds);
  EXPECT_TRUE(c.value->infinite_join);

  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  const FiberVector x = FiberVector::basis(m.parse("(1,0)"), {1});
  const FiberVector y = FiberVector::basis(m.parse("(0,1)"), {0}, {0, 1});
  const auto d = covariance_check_symbolic(sys, FiberOperator::rank_one(x, x), FiberOperator::rank_one(y, y));
  ASSERT_TRUE(d.exact());
  EXPECT_TRUE(d.value->holds);
  EXPECT_FALSE(d.value->infinite_join);
  EXPECT_EQ(d.value->residual, 0.0);
}

TEST(NormDiagonal, Examples) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2)});
  const MonoidElement one = m.generator(0, 1);

  const auto proj = norm_diagonal(sys, rho_of_compact(sys, FiberOperator::identity(one)));
  ASSERT_TRUE(proj.exact());
  EXPECT_NEAR(proj.value->value, 1.0, 1e-12);

  const auto two = norm_diagonal(sys, 2.0 * WickElement::identity());
  EXPECT_NEAR(two.value->value, 2.0, 1e-12);

  WickElement x;
  x.add(key(one, {0}, one, {0}), 1.0);
  x.add(key(one, {1}, one, {1}), -1.0);
  const auto pm = norm_diagonal(sys, x);
  EXPECT_NEAR(pm.value->value, 1.0, 1e-12);
  EXPECT_EQ(pm.value->a, one);

  const WickElement off = WickElement::basis_monomial(key(one, {0}, m.identity(), {}));
  EXPECT_THROW(norm_diagonal(sys, off), std::invalid_argument);
}

TEST(NormDiagonal, CertificateAtJoin) {
  // 1 - rho_1(1) is the vacuum projection: T_e = 1 and T_1 = 0.
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::trivial(m);
  WickElement x = WickElement::identity();
  x.add(key(m.generator(0, 1), {}, m.generator(0, 1), {}), -1.0);
  const auto v = norm_diagonal(sys, x);
  ASSERT_TRUE(v.exact());
  EXPECT_NEAR(v.value->value, 1.0, 1e-12);
  EXPECT_TRUE(v.value->a.is_identity());
}

TEST(Expressions, ParseAndFormat) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  const WickElement x = parse_expression(sys, "(1+2j)*i((1,0):1)i*((0,1):0) - 3 + i((1,1):01)");
  ASSERT_EQ(x.size(), 3u);
  EXPECT_EQ(x.terms().at(key(m.parse("(1,0)"), {1}, m.parse("(0,1)"), {0})), Complex(1, 2));
  EXPECT_EQ(x.terms().at(WickKey{}), Complex(-3.0));
  EXPECT_EQ(x.terms().at(key(m.parse("(1,1)"), {0, 1}, m.identity(), {})), Complex(1.0));
  EXPECT_EQ(max_difference(parse_expression(sys, format(m, x)), x), 0.0);
  EXPECT_THROW(parse_expression(sys, "i((1,0):2)"), ParseError);
  EXPECT_THROW(parse_expression(sys, "i((1,0):0"), ParseError);
  EXPECT_THROW(parse_expression(sys, ""), ParseError);
  EXPECT_EQ(parse_complex("2-0.5j"), Complex(2, -0.5));
  EXPECT_EQ(parse_complex("-j"), Complex(0, -1));
  EXPECT_EQ(parse_complex("1e-3"), Complex(1e-3, 0));
}

}  // namespace
}  // namespace prodsys
