#include <gtest/gtest.h>

#include "prodsys/monoid.hpp"

namespace prodsys {
namespace {

class FreeTwo : public ::testing::Test {
 protected:
  Monoid m = Monoid::free_naturals(2);
  MonoidElement p(const char* s) const { return m.parse(s); }
};

TEST_F(FreeTwo, NormalizeMergesAndDropsZeros) {
  const MonoidElement g = m.normalize({{0, 1}, {0, 2}, {1, 0}, {1, 3}});
  EXPECT_EQ(g, p("a^3b^3"));
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(m.normalize({}).is_identity());
}

TEST_F(FreeTwo, NormalizeCancelsAcrossLetters) {
  // a b b^-1 a reduces to a^2 by hand.
  EXPECT_EQ(m.normalize({{0, 1}, {1, 1}, {1, -1}, {0, 1}}), p("a^2"));
}

TEST_F(FreeTwo, Multiply) {
  EXPECT_EQ(m.multiply(p("a"), p("b")), p("ab"));
  EXPECT_EQ(m.multiply(p("ab"), p("b^2")), p("ab^3"));
  EXPECT_EQ(m.multiply(m.identity(), p("ba")), p("ba"));
}

TEST_F(FreeTwo, Invert) {
  EXPECT_EQ(m.invert(p("ab")), p("b^-1a^-1"));
  EXPECT_TRUE(m.invert(m.identity()).is_identity());
  EXPECT_EQ(m.invert(p("a^2")), p("a^-2"));
}

TEST_F(FreeTwo, Positivity) {
  EXPECT_TRUE(m.is_positive(p("ab^2")));
  EXPECT_FALSE(m.is_positive(p("b^-1ab")));
  EXPECT_TRUE(m.is_positive(m.identity()));
}

TEST_F(FreeTwo, Order) {
  EXPECT_TRUE(m.leq(p("a"), p("ab")));
  EXPECT_FALSE(m.leq(p("ab"), p("a^2b")));
  EXPECT_FALSE(m.leq(p("b"), p("ab")));
}

TEST_F(FreeTwo, Join) {
  EXPECT_TRUE(m.join(p("a"), p("b")).is_infinite());
  EXPECT_EQ(m.join(p("a"), p("ab")).value(), p("ab"));
  EXPECT_EQ(m.join(p("ab"), p("a")).value(), p("ab"));
  EXPECT_TRUE(m.join(p("ab"), p("a^2")).is_infinite());
  EXPECT_THROW((void)m.join(p("a"), p("b")).value(), std::logic_error);
}

TEST_F(FreeTwo, LeftQuotient) {
  EXPECT_EQ(m.left_quotient(p("a"), p("ab^2")), p("b^2"));
  EXPECT_TRUE(m.left_quotient(p("ba"), p("ba")).is_identity());
  EXPECT_THROW(m.left_quotient(p("b"), p("ab")), std::invalid_argument);
}

TEST_F(FreeTwo, Theta) {
  const DirectSumImage t = m.theta(p("aba"));
  EXPECT_EQ(t.at(0), 2);
  EXPECT_EQ(t.at(1), 1);
  EXPECT_TRUE(m.theta(m.identity()).coordinates.empty());
  EXPECT_EQ(m.theta(p("ab")), m.theta(p("ba")));
}

TEST_F(FreeTwo, IdealOfLengthTwo) {
  const auto ideal = m.enumerate_ideal(LengthBound{2});
  ASSERT_EQ(ideal.size(), 7u);
  const std::vector<const char*> want{"e", "a", "b", "a^2", "ab", "ba", "b^2"};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(ideal[i], p(want[i])) << i;
  EXPECT_THROW(m.enumerate_ideal(BoxBound{{1, 1}}), UnsupportedOperation);
}

TEST_F(FreeTwo, ParseFormatRoundTrip) {
  for (const char* s : {"e", "ab", "b^-1a", "a^2b", "ab^3", "b^-1a^-1"}) EXPECT_EQ(m.format(p(s)), s);
  EXPECT_THROW(m.parse("c"), std::invalid_argument);
  EXPECT_THROW(m.parse("a^1/2"), std::invalid_argument);
}

TEST(DirectSum, ComponentwiseOrderAndJoin) {
  const Monoid m = Monoid::naturals_power(3);
  EXPECT_TRUE(m.leq(m.parse("(1,0,2)"), m.parse("(1,3,2)")));
  EXPECT_FALSE(m.leq(m.parse("(1,0,2)"), m.parse("(0,3,2)")));
  EXPECT_EQ(m.join(m.parse("(1,0,2)"), m.parse("(0,3,1)")).value(), m.parse("(1,3,2)"));
  const Monoid n2 = Monoid::naturals_power(2);
  EXPECT_EQ(n2.left_quotient(n2.parse("(1,0)"), n2.parse("(2,3)")), n2.parse("(1,3)"));
  EXPECT_FALSE(m.is_quasi_totally_ordered());
}

TEST(DirectSum, BoxIdeal) {
  const Monoid m = Monoid::naturals_power(2);
  const auto ideal = m.enumerate_ideal(BoxBound{{1, 1}});
  ASSERT_EQ(ideal.size(), 4u);
  EXPECT_EQ(ideal[0], m.parse("(0,0)"));
  EXPECT_EQ(ideal[3], m.parse("(1,1)"));
  EXPECT_THROW(m.enumerate_ideal(BoxBound{{1}}), std::invalid_argument);
}

TEST(TotalOrder, NaturalsIdeal) {
  const Monoid m = Monoid::naturals();
  const auto ideal = m.enumerate_ideal(LengthBound{3});
  ASSERT_EQ(ideal.size(), 4u);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(ideal[k], m.generator(0, k));
  EXPECT_EQ(m.format(m.parse("3")), "3");
  EXPECT_EQ(m.join(m.parse("2"), m.parse("3")).value(), m.parse("3"));
}

TEST(TotalOrder, DenseRationals) {
  const Monoid m(MonoidKind::total_order, {Factor{FactorKind::rationals_dense, "q"}});
  EXPECT_TRUE(m.has_dense_factor());
  const MonoidElement half = m.parse("1/2"), twothirds = m.parse("2/3");
  EXPECT_TRUE(m.leq(half, twothirds));
  EXPECT_EQ(m.join(half, twothirds).value(), twothirds);
  EXPECT_EQ(m.left_quotient(half, twothirds), m.parse("1/6"));
  EXPECT_THROW(m.enumerate_ideal(LengthBound{2}), UnsupportedOperation);
}

TEST(FreeProductDense, MixedFactorsJoin) {
  const Monoid m(MonoidKind::free_product,
                 {Factor{FactorKind::rationals_dense, "p"}, Factor{FactorKind::integers, "b"}});
  const MonoidElement s = m.parse("p^1/2"), t = m.parse("p^3/4b");
  EXPECT_EQ(m.join(s, t).value(), t);
  EXPECT_TRUE(m.join(m.parse("b"), s).is_infinite());
  EXPECT_EQ(m.left_quotient(s, t), m.parse("p^1/4b"));
}

}  // namespace
}  // namespace prodsys
