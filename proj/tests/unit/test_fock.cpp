#include <gtest/gtest.h>

#include <memory>

#include "prodsys/fock.hpp"

namespace prodsys {
namespace {

using Basis = std::shared_ptr<const FockBasis>;

Basis make_basis(ProductSystem sys, IdealBound b) { return std::make_shared<const FockBasis>(std::move(sys), std::move(b)); }

Eigen::MatrixXcd dense(const SparseMatrix& a) { return Eigen::MatrixXcd(a); }

TEST(FockBasis, Sizes) {
  EXPECT_EQ(make_basis(ProductSystem::trivial(Monoid::naturals()), LengthBound{3})->size(), 4u);
  EXPECT_EQ(make_basis(ProductSystem::word_graded(Monoid::naturals(), {GeneratorDim::finite(2)}), LengthBound{2})->size(),
            7u);
  EXPECT_EQ(make_basis(ProductSystem::trivial(Monoid::free_naturals(2)), LengthBound{2})->size(), 7u);
}

TEST(FockBasis, Interior) {
  const Basis b = make_basis(ProductSystem::trivial(Monoid::free_naturals(2)), LengthBound{3});
  EXPECT_EQ(b->interior(0).size(), b->size());
  EXPECT_EQ(b->interior(1).size(), 7u);
  EXPECT_EQ(b->interior(3).size(), 1u);
  EXPECT_TRUE(b->interior(4).empty());
}

TEST(FockPhi, TruncatedShift) {
  const Monoid m = Monoid::naturals();
  const Basis b = make_basis(ProductSystem::trivial(m), LengthBound{3});
  const FockOperator s = fock_phi(b, FiberVector::basis(m.generator(0, 1), {}));
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  for (int k = 0; k < 3; ++k) want(k + 1, k) = 1.0;
  EXPECT_EQ(dense(s.matrix), want);
  EXPECT_TRUE(s.truncated);
}

TEST(RhoProj, Examples) {
  const Monoid m = Monoid::naturals();
  const Basis b = make_basis(ProductSystem::trivial(m), LengthBound{3});
  EXPECT_EQ(dense(rho_proj(b, m.identity()).matrix), Eigen::MatrixXcd::Identity(4, 4));
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Identity(4, 4);
  want(0, 0) = 0.0;
  EXPECT_EQ(dense(rho_proj(b, m.generator(0, 1)).matrix), want);
}

TEST(RhoOp, IdentityAndRankOne) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2)});
  const Basis b = make_basis(sys, LengthBound{3});
  const MonoidElement one = m.generator(0, 1);
  EXPECT_EQ(dense(rho_op(b, FiberOperator::identity(one)).matrix), dense(rho_proj(b, one).matrix));
  const FiberVector x = FiberVector::basis(one, {0}), y = FiberVector::basis(one, {1}, {0, 1});
  const SparseMatrix want = fock_phi(b, x).matrix * SparseMatrix(fock_phi(b, y).matrix.adjoint());
  EXPECT_EQ(dense(rho_op(b, FiberOperator::rank_one(x, y)).matrix), dense(want));
}

TEST(AlphaEndo, UnitAndTrivialGrade) {
  const Monoid m = Monoid::free_naturals(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(1)});
  const Basis b = make_basis(sys, LengthBound{3});
  for (const auto& t : b->grades()) {
    EXPECT_EQ(dense(alpha_endo(t, fock_identity(b)).matrix), dense(rho_proj(b, t).matrix)) << m.format(t);
  }
  const FockOperator x = fock_phi(b, FiberVector::basis(m.parse("ab"), {1}));
  EXPECT_EQ(dense(alpha_endo(m.identity(), x).matrix), dense(x.matrix));
}

TEST(Represent, IdentityAndAdjoint) {
  const Monoid m = Monoid::free_naturals(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(3)});
  const Basis b = make_basis(sys, LengthBound{2});
  EXPECT_EQ(dense(represent(b, WickElement::identity()).matrix), Eigen::MatrixXcd::Identity(b->size(), b->size()));
  WickElement x;
  x.add(WickKey{m.parse("a"), {1}, m.parse("b"), {2}}, {1, 2});
  x.add(WickKey{m.parse("ab"), {0, 1}, m.identity(), {}}, 3.0);
  EXPECT_EQ(dense(represent(b, adjoint(x)).matrix), dense(represent(b, x).matrix).adjoint());
}

TEST(ExpectationSpatial, BlockCompression) {
  const Monoid m = Monoid::free_naturals(2);
  const Basis b = make_basis(ProductSystem::trivial(m), LengthBound{2});
  WickElement x;
  x.add(WickKey{m.parse("a"), {}, m.parse("b"), {}}, 1.0);
  x.add(WickKey{m.parse("a"), {}, m.parse("a"), {}}, 2.0);
  const FockOperator e = expectation_spatial(represent(b, x));
  EXPECT_EQ(dense(e.matrix), dense(represent(b, phi_delta(x)).matrix));
  EXPECT_EQ(dense(expectation_spatial(e).matrix), dense(e.matrix));
}

TEST(Faithfulness, FockWitnessIsVacuum) {
  const Monoid m = Monoid::free_naturals(2);
  const Basis b = make_basis(ProductSystem::trivial(m), LengthBound{3});
  const FockRepresentation rep(b);
  const std::size_t omega = b->index_of(m.identity(), {}).value();
  const auto single = faithfulness_condition(rep, {m.parse("ab")}, b->interior(0));
  EXPECT_TRUE(single.holds);
  EXPECT_EQ(single.witness, omega);
  const auto empty = faithfulness_condition(rep, {}, b->interior(0));
  EXPECT_TRUE(empty.holds);
  EXPECT_EQ(empty.factors, 0u);
}

TEST(Sequence, ToeplitzAndCuntzRelations) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2)});
  const SequenceRepresentation toe(sys, SequenceRepresentation::Family::toeplitz, 64);
  const SequenceRepresentation cun(sys, SequenceRepresentation::Family::cuntz, 64);
  EXPECT_EQ(toe.arity(), 2u);
  const auto cols = toe.interior(1);
  const SparseMatrix sum_t = rho_unit(toe, m.generator(0, 1));
  const SparseMatrix sum_c = rho_unit(cun, m.generator(0, 1));
  Eigen::MatrixXcd t = columns(sum_t, cols);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Complex want = cols[j] == 0 ? 0.0 : 1.0;
    EXPECT_EQ(t(static_cast<Eigen::Index>(cols[j]), static_cast<Eigen::Index>(j)), want);
  }
  EXPECT_EQ(max_deviation(sum_c, identity_matrix(64), cun.interior(1)), 0.0);
  // Isometries with orthogonal ranges on the interior.
  const SparseMatrix s0 = toe.isometry(0), s1 = toe.isometry(1);
  EXPECT_EQ(max_deviation(SparseMatrix(SparseMatrix(s0.adjoint()) * s0), identity_matrix(64), cols), 0.0);
  EXPECT_EQ(max_abs(columns(SparseMatrix(SparseMatrix(s1.adjoint()) * s0), cols)), 0.0);
  EXPECT_THROW(SequenceRepresentation(ProductSystem::von_neumann(m, 2, LengthBound{3}),
                                      SequenceRepresentation::Family::cuntz, 8),
               std::invalid_argument);
}

TEST(Killing, FockReturnsProjection) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  const Basis b = make_basis(sys, BoxBound{{2, 2}});
  const FockRepresentation rep(b);
  const MonoidElement e1 = m.parse("(1,0)");
  const auto w = killing_witness_search(rep, m.identity(), {FiberVector::basis(e1, {0})}, {e1}, 1e-10, {e1},
                                        b->interior(1));
  EXPECT_EQ(w.kind, KillingWitness::Kind::projection);
  EXPECT_EQ(w.achieved, 0.0);
}

TEST(Killing, CuntzFallsBackToSearch) {
  const Monoid m = Monoid::naturals_power(2);
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2), GeneratorDim::finite(2)});
  const SequenceRepresentation rep(sys, SequenceRepresentation::Family::cuntz, 64);
  const MonoidElement e1 = m.parse("(1,0)");
  const auto w = killing_witness_search(rep, m.identity(), {FiberVector::basis(e1, {0})}, {e1}, 1e-10, {e1},
                                        rep.interior(2));
  ASSERT_EQ(w.kind, KillingWitness::Kind::vector);
  EXPECT_EQ(w.vector->coords().begin()->first, BasisLabel{1});
  EXPECT_LT(w.achieved, 1e-10);
  // Nothing in grade (1,0) kills both basis vectors at once.
  const auto none = killing_witness_search(rep, m.identity(), {FiberVector::basis(e1, {0}), FiberVector::basis(e1, {1})},
                                           {e1}, 1e-10, {e1}, rep.interior(2));
  EXPECT_EQ(none.kind, KillingWitness::Kind::exhausted);
  EXPECT_GT(none.achieved, 0.5);
}

TEST(Aperiodic, ResidualAndSearch) {
  const Monoid m = Monoid::naturals();
  const ProductSystem sys = ProductSystem::word_graded(m, {GeneratorDim::finite(2)});
  const Basis b = make_basis(sys, LengthBound{4});
  const FockRepresentation rep(b);
  // Q = φ(v)φ(v)* with v = e_0 e_1 at grade 2; α_1(Q) has range in grade ≥ 3
  // labels x01, disjoint from the range of Q on grade-3 labels 01x only when
  // the words do not overlap.
  const FiberVector v = FiberVector::basis(m.generator(0, 2), {0, 1});
  const double r = aperiodic_residual(rep, v, {m.generator(0, 1)}, b->interior(0));
  EXPECT_EQ(r, 0.0);
  const FiberVector periodic = FiberVector::basis(m.generator(0, 2), {0, 0});
  EXPECT_GT(aperiodic_residual(rep, periodic, {m.generator(0, 1)}, b->interior(0)), 0.5);
  const auto z = aperiodic_search(rep, FiberVector::basis(m.generator(0, 1), {0}), {m.generator(0, 1)},
                                  {m.generator(0, 1)}, b->interior(0), 1e-10);
  ASSERT_TRUE(z);
  EXPECT_LT(z->residual, 1e-10);
}

}  // namespace
}  // namespace prodsys
