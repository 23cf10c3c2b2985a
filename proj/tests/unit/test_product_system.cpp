#include <gtest/gtest.h>

#include "prodsys/product_system.hpp"

namespace prodsys {
namespace {

ProductSystem naturals_d(std::uint32_t d) { return ProductSystem::word_graded(Monoid::naturals(), {GeneratorDim::finite(d)}); }

MonoidElement nat(int k) { return Monoid::naturals().generator(0, k); }

TEST(Dimensions, Multiplicative) {
  const ProductSystem sys = naturals_d(2);
  EXPECT_EQ(sys.dim(nat(3)).count, 8u);
  EXPECT_EQ(sys.dim(nat(0)).count, 1u);
  const Monoid f = Monoid::free_naturals(2);
  const ProductSystem mixed = ProductSystem::word_graded(f, {GeneratorDim::finite(2), GeneratorDim::finite(1)});
  EXPECT_EQ(mixed.dim(f.parse("ab")).count, 2u);
}

TEST(Dimensions, InfiniteFlagSurvivesProducts) {
  const ProductSystem sys = ProductSystem::word_graded(Monoid::naturals(), {GeneratorDim::infinite_truncated(3)});
  const FiberDim d = sys.dim(nat(2));
  EXPECT_TRUE(d.infinite);
  EXPECT_EQ(d.count, 9u);
  EXPECT_FALSE(sys.dim(nat(0)).infinite);
}

TEST(Dimensions, RejectsBadData) {
  const Monoid q(MonoidKind::total_order, {Factor{FactorKind::rationals_dense, "q"}});
  try {
    ProductSystem::word_graded(q, {GeneratorDim::finite(3)});
    FAIL() << "dense factor of dimension 3 accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("dense factors require dimension 1"), std::string::npos);
  }
  EXPECT_THROW(ProductSystem::word_graded(Monoid::naturals_power(2), {GeneratorDim::finite(2), GeneratorDim::finite(3)}),
               std::invalid_argument);
}

TEST(MultiplyVectors, Concatenates) {
  const ProductSystem sys = naturals_d(2);
  const FiberVector x = FiberVector::basis(nat(1), {0});
  const FiberVector y = FiberVector::basis(nat(2), {1, 0});
  const FiberVector xy = multiply_vectors(sys, x, y);
  EXPECT_EQ(xy.grade(), nat(3));
  ASSERT_EQ(xy.coords().size(), 1u);
  EXPECT_EQ(xy.coords().begin()->first, (BasisLabel{0, 1, 0}));
  const FiberVector omega = FiberVector::basis(nat(0), {});
  EXPECT_EQ(multiply_vectors(sys, omega, y).coords(), y.coords());
}

TEST(MultiplyVectors, DirectSumKeepsMultiplicationOrder) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  for (std::uint32_t i = 0; i < 2; ++i) {
    for (std::uint32_t j = 0; j < 2; ++j) {
      const FiberVector xy = multiply_vectors(sys, FiberVector::basis(m.parse("(1,0)"), {i}),
                                              FiberVector::basis(m.parse("(0,1)"), {j}));
      EXPECT_EQ(xy.grade(), m.parse("(1,1)"));
      EXPECT_EQ(xy.coords().begin()->first, (BasisLabel{i, j}));
    }
  }
}

TEST(MultiplyVectors, Bilinear) {
  const ProductSystem sys = naturals_d(2);
  FiberVector x(nat(1));
  x.add({0}, {1, 1});
  x.add({1}, 2.0);
  const FiberVector y = FiberVector::basis(nat(1), {1}, {0, -1});
  const FiberVector xy = multiply_vectors(sys, x, y);
  EXPECT_EQ(xy.coords().at({0, 1}), Complex(1, 1) * Complex(0, -1));
  EXPECT_EQ(xy.coords().at({1, 1}), Complex(0, -2));
  EXPECT_DOUBLE_EQ(std::norm(inner(xy, xy)), std::norm(inner(x, x) * inner(y, y)));
}

TEST(FactorBasis, SplitsAtLetterBoundary) {
  const ProductSystem sys = naturals_d(2);
  const auto [head, tail] = sys.factor_label(nat(3), nat(1), {0, 1, 0});
  EXPECT_EQ(head, BasisLabel{0});
  EXPECT_EQ(tail, (BasisLabel{1, 0}));
  const auto [h0, t0] = sys.factor_label(nat(2), nat(0), {1, 1});
  EXPECT_TRUE(h0.empty());
  EXPECT_EQ(t0, (BasisLabel{1, 1}));
  EXPECT_EQ(factor_basis(sys, nat(3), nat(1)).size(), 8u);

  const Monoid f = Monoid::free_naturals(2);
  const ProductSystem fs = ProductSystem::word_graded(f, {GeneratorDim::finite(2), GeneratorDim::finite(3)});
  const auto [a, b] = fs.factor_label(f.parse("ab"), f.parse("a"), {1, 2});
  EXPECT_EQ(a, BasisLabel{1});
  EXPECT_EQ(b, BasisLabel{2});
  EXPECT_THROW(fs.factor_label(f.parse("ab"), f.parse("b"), {1, 2}), std::invalid_argument);
}

TEST(Promote, IdentityAndRankOne) {
  const ProductSystem sys = naturals_d(2);
  const FiberOperator id = promote(sys, FiberOperator::identity(nat(1)), nat(2));
  EXPECT_TRUE(id.is_identity());
  EXPECT_EQ(id.grade(), nat(2));

  // |e_0><e_1| on E_1 lifts to the two terms |0r><1r|.
  FiberOperator s(nat(1));
  s.add({0}, {1}, 1.0);
  const FiberOperator lifted = promote(sys, s, nat(2));
  ASSERT_EQ(lifted.entries().size(), 2u);
  for (std::uint32_t r = 0; r < 2; ++r) EXPECT_EQ(lifted.entries().at({{0, r}, {1, r}}), Complex(1.0));
}

TEST(PromoteLeft, ActsOnTheTail) {
  const ProductSystem sys = naturals_d(2);
  FiberOperator s(nat(1));
  s.add({0}, {1}, 1.0);
  const FiberOperator lifted = promote_left(sys, s, nat(1));
  ASSERT_EQ(lifted.entries().size(), 2u);
  for (std::uint32_t r = 0; r < 2; ++r) EXPECT_EQ(lifted.entries().at({{r, 0}, {r, 1}}), Complex(1.0));
}

TEST(CompactAlign, Examples) {
  const Monoid f = Monoid::free_naturals(2);
  const ProductSystem trivial = ProductSystem::trivial(f);
  EXPECT_FALSE(compact_align(trivial, FiberOperator::identity(f.parse("a")), FiberOperator::identity(f.parse("b"))));

  const ProductSystem sys = naturals_d(2);
  FiberOperator s(nat(1));
  s.add({0}, {1}, 1.0);
  FiberOperator t(nat(2));
  t.add({1, 0}, {0, 1}, 1.0);
  const auto st = compact_align(sys, s, t);
  ASSERT_TRUE(st);
  EXPECT_EQ(st->grade(), nat(2));
  ASSERT_EQ(st->entries().size(), 1u);
  EXPECT_EQ(st->entries().begin()->first, (std::pair<BasisLabel, BasisLabel>{{0, 0}, {0, 1}}));

  const auto ids = compact_align(sys, FiberOperator::identity(nat(1)), FiberOperator::identity(nat(3)));
  ASSERT_TRUE(ids);
  EXPECT_TRUE(ids->is_identity());
  EXPECT_EQ(ids->grade(), nat(3));
}

TEST(CompactAlign, ProperJoinInDirectSum) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  const FiberVector x = FiberVector::basis(m.parse("(1,0)"), {0});
  // Labels concatenate symbols, so x f = y g needs equal leading symbols.
  const FiberVector y = FiberVector::basis(m.parse("(0,1)"), {0});
  const auto st = compact_align(sys, FiberOperator::rank_one(x, x), FiberOperator::rank_one(y, y));
  ASSERT_TRUE(st);
  EXPECT_EQ(st->grade(), m.parse("(1,1)"));
  ASSERT_EQ(st->entries().size(), 2u);
  for (const auto& [key, c] : st->entries()) {
    EXPECT_EQ(key.first, key.second);
    EXPECT_EQ(key.first[0], 0u);
    EXPECT_EQ(c, Complex(1.0));
  }
  const FiberVector z = FiberVector::basis(m.parse("(0,1)"), {1});
  const auto disjoint = compact_align(sys, FiberOperator::rank_one(x, x), FiberOperator::rank_one(z, z));
  ASSERT_TRUE(disjoint);
  EXPECT_TRUE(disjoint->entries().empty());
}

TEST(FreeProductSystem, Dimensions) {
  const ProductSystem two = naturals_d(2), three = naturals_d(3);
  const ProductSystem both = free_product_system({two, two});
  EXPECT_EQ(both.dim(both.monoid().parse("ab")).count, 4u);
  const ProductSystem single = free_product_system({two});
  EXPECT_EQ(single.dim(single.monoid().generator(0, 3)).count, 8u);
  const ProductSystem mixed = free_product_system({two, three});
  EXPECT_EQ(mixed.dim(mixed.monoid().parse("aba")).count, 12u);
}

TEST(VonNeumann, IndexSetsAndRelabeling) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::von_neumann(m, 2, LengthBound{4});
  EXPECT_EQ(sys.dim(nat(1)).count, 2u);
  EXPECT_EQ(sys.dim(nat(2)).count, 4u);
  for (std::uint32_t eta = 0; eta < 2; ++eta) {
    for (std::uint32_t zeta = 0; zeta < 2; ++zeta) {
      EXPECT_EQ(sys.multiply_labels(nat(1), {eta}, nat(1), {zeta}), (BasisLabel{eta, zeta}));
    }
  }
  // The support is {0..4}; 5 + 0 lies outside it, so a nonzero symbol is lost.
  EXPECT_EQ(sys.dim(nat(5)).count, 32u);
  EXPECT_TRUE(sys.try_multiply_labels(nat(4), {0, 0, 0, 0}, nat(1), {1}));
  EXPECT_FALSE(sys.try_multiply_labels(nat(5), {0, 0, 0, 0, 0}, nat(1), {1}));
  EXPECT_TRUE(sys.try_multiply_labels(nat(5), {0, 0, 0, 0, 0}, nat(1), {0}));
  EXPECT_THROW(sys.multiply_labels(nat(5), {0, 0, 0, 0, 0}, nat(1), {1}), LostSupport);
}

TEST(VonNeumann, FactorInvertsMultiplication) {
  const ProductSystem sys = ProductSystem::von_neumann(Monoid::naturals(), 2, LengthBound{4});
  for (const auto& l : sys.basis(nat(3))) {
    const auto [head, tail] = sys.factor_label(nat(3), nat(1), l);
    EXPECT_EQ(sys.multiply_labels(nat(1), head, nat(2), tail), l);
  }
}

TEST(FiberOperator, ApplyAdjointCompose) {
  const MonoidElement g = nat(1);
  const FiberVector x = FiberVector::basis(g, {0}, {0, 1});
  const FiberVector y = FiberVector::basis(g, {1});
  const FiberOperator r = FiberOperator::rank_one(x, y);
  const FiberVector out = r.apply(FiberVector::basis(g, {1}, 2.0));
  EXPECT_EQ(out.coords().at({0}), Complex(0, 2));
  const FiberOperator ra = adjoint(r);
  EXPECT_EQ(ra.entries().at({{1}, {0}}), Complex(0, -1));
  const FiberOperator sq = compose(r, ra);
  EXPECT_EQ(sq.entries().at({{0}, {0}}), Complex(1.0));
}

}  // namespace
}  // namespace prodsys
