#pragma once

// Basis-aligned discrete product systems. Multiplication E_s ⊗ E_t → E_st
// permutes distinguished orthonormal bases, so every multiplication unitary
// is label combinatorics and all structural computations are exact.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "prodsys/monoid.hpp"

namespace prodsys {

using Complex = std::complex<double>;

/// Canonical basis vector of E_s as a flat symbol string. For word-graded
/// systems the symbols of consecutive letters are concatenated in word order;
/// for von Neumann systems position k is the tensor slot of the k-th element
/// of the truncated index set P \ sP.
using BasisLabel = std::vector<std::uint32_t>;

inline constexpr double kPruneTolerance = 1e-12;

struct GeneratorDim {
  std::uint32_t dim = 1;  // working dimension when `infinite` is set
  bool infinite = false;

  static GeneratorDim finite(std::uint32_t d) { return {d, false}; }
  static GeneratorDim infinite_truncated(std::uint32_t working) { return {working, true}; }
  bool trivial() const { return !infinite && dim == 1; }

  friend bool operator==(const GeneratorDim&, const GeneratorDim&) = default;
};

/// dim E_s. `count` is the number of labels materialised; `infinite` records
/// that the honest fiber is infinite dimensional and `count` is a working
/// truncation.
struct FiberDim {
  std::size_t count = 1;
  bool infinite = false;

  friend bool operator==(const FiberDim&, const FiberDim&) = default;
};

enum class SystemStyle { word_graded, vn_truncated };

/// Raised by von Neumann systems when a product would need a tensor slot
/// outside the retained support.
class LostSupport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_label(const BasisLabel& label);

class FiberVector {
 public:
  explicit FiberVector(MonoidElement grade) : grade_(std::move(grade)) {}
  static FiberVector basis(MonoidElement grade, BasisLabel label, Complex c = 1.0);

  const MonoidElement& grade() const { return grade_; }
  const std::map<BasisLabel, Complex>& coords() const { return coords_; }

  void add(const BasisLabel& label, Complex c);
  FiberVector& prune(double tol = kPruneTolerance);
  double norm() const;
  bool empty() const { return coords_.empty(); }

 private:
  MonoidElement grade_;
  std::map<BasisLabel, Complex> coords_;
};

/// ⟨x, y⟩, linear in x and conjugate-linear in y. Zero across grades.
Complex inner(const FiberVector& x, const FiberVector& y);

/// An operator on E_s given by finitely many matrix entries, or the identity
/// of B(E_s) held symbolically.
class FiberOperator {
 public:
  using Entries = std::map<std::pair<BasisLabel, BasisLabel>, Complex>;

  explicit FiberOperator(MonoidElement grade) : grade_(std::move(grade)) {}
  static FiberOperator identity(MonoidElement grade);
  /// z ↦ ⟨z, y⟩ x.
  static FiberOperator rank_one(const FiberVector& x, const FiberVector& y);

  const MonoidElement& grade() const { return grade_; }
  const Entries& entries() const { return entries_; }
  bool is_identity() const { return identity_; }
  /// Set when a sum over an infinite fiber was cut at the working dimension.
  bool truncated() const { return truncated_; }
  void mark_truncated(bool t = true) { truncated_ = truncated_ || t; }

  void add(const BasisLabel& row, const BasisLabel& col, Complex c);
  FiberOperator& prune(double tol = kPruneTolerance);
  FiberVector apply(const FiberVector& z) const;

 private:
  MonoidElement grade_;
  Entries entries_;
  bool identity_ = false;
  bool truncated_ = false;
};

FiberOperator adjoint(const FiberOperator& op);
FiberOperator operator+(const FiberOperator& a, const FiberOperator& b);
FiberOperator operator*(Complex c, const FiberOperator& a);

class ProductSystem {
 public:
  /// Throws std::invalid_argument when the dimension data cannot define a
  /// product system (dense factor with dimension > 1, unequal nontrivial
  /// dimensions over a direct sum).
  static ProductSystem word_graded(Monoid monoid, std::vector<GeneratorDim> dims);
  static ProductSystem trivial(Monoid monoid);
  /// Fibers ⊗_{P∖sP} H with dim H = hilbert_dim, index sets cut down to the
  /// enumerated ideal `support`. Symbol 0 is the distinguished unit vector.
  static ProductSystem von_neumann(Monoid monoid, std::uint32_t hilbert_dim, const IdealBound& support);

  const Monoid& monoid() const { return monoid_; }
  SystemStyle style() const { return style_; }
  const std::vector<GeneratorDim>& generator_dims() const { return dims_; }
  std::uint32_t hilbert_dim() const { return hilbert_dim_; }
  const std::vector<MonoidElement>& support() const { return support_; }

  FiberDim dim(const MonoidElement& s) const;
  /// Alphabet size of every label position of E_s.
  std::vector<std::uint32_t> alphabets(const MonoidElement& s) const;
  /// All labels of E_s (working dimension for infinite fibers), ascending.
  std::vector<BasisLabel> basis(const MonoidElement& s) const;
  bool is_label(const MonoidElement& s, const BasisLabel& label) const;

  BasisLabel multiply_labels(const MonoidElement& s, const BasisLabel& x,
                             const MonoidElement& t, const BasisLabel& y) const;
  std::optional<BasisLabel> try_multiply_labels(const MonoidElement& s, const BasisLabel& x,
                                                const MonoidElement& t, const BasisLabel& y) const;
  /// Splits a label of E_u into labels of E_s and E_{s⁻¹u}; inverse to
  /// multiply_labels. Throws std::invalid_argument unless s ≤ u.
  std::pair<BasisLabel, BasisLabel> factor_label(const MonoidElement& u, const MonoidElement& s,
                                                 const BasisLabel& label) const;

 private:
  ProductSystem(Monoid monoid, SystemStyle style) : monoid_(std::move(monoid)), style_(style) {}

  /// Truncated index set (P∖sP) ∩ support, in support order.
  std::vector<std::size_t> index_set(const MonoidElement& s) const;
  std::size_t word_label_length(const MonoidElement& s) const;

  Monoid monoid_;
  SystemStyle style_;
  std::vector<GeneratorDim> dims_;
  std::uint32_t hilbert_dim_ = 1;
  std::vector<MonoidElement> support_;
  std::map<MonoidElement, std::size_t> support_index_;
};

FiberVector multiply_vectors(const ProductSystem& sys, const FiberVector& x, const FiberVector& y);

struct LabelSplit {
  BasisLabel whole;
  BasisLabel left;
  BasisLabel right;
};

/// The bijection basis(E_u) ↔ basis(E_s) × basis(E_{s⁻¹u}), listed over basis(E_u).
std::vector<LabelSplit> factor_basis(const ProductSystem& sys, const MonoidElement& u,
                                     const MonoidElement& s);

/// S ⊗ 1 on E_u for S on E_s, s ≤ u.
FiberOperator promote(const ProductSystem& sys, const FiberOperator& op, const MonoidElement& u);
/// 1 ⊗ S on E_{ts} for S on E_s.
FiberOperator promote_left(const ProductSystem& sys, const FiberOperator& op, const MonoidElement& t);
/// A·B for operators on the same fiber.
FiberOperator compose(const FiberOperator& a, const FiberOperator& b);
/// A ⊗ B on E_{rq} for A on E_r and B on E_q.
FiberOperator tensor(const ProductSystem& sys, const FiberOperator& a, const FiberOperator& b);

/// (S⊗1)(T⊗1) on E_{s∨t}; std::nullopt stands for the zero returned when
/// s ∨ t = ∞. Comparable grades use the exact reductions (S⊗1)T and S(T⊗1).
std::optional<FiberOperator> compact_align(const ProductSystem& sys, const FiberOperator& s_op,
                                           const FiberOperator& t_op);

/// Word-graded free product of single-factor systems.
ProductSystem free_product_system(const std::vector<ProductSystem>& factors);

/// Entries over basis(E_s); identity operators are materialised.
Eigen::MatrixXcd to_dense(const ProductSystem& sys, const FiberOperator& op);
/// Largest entrywise difference after materialising identities.
double max_difference(const ProductSystem& sys, const FiberOperator& a, const FiberOperator& b);

}  // namespace prodsys
