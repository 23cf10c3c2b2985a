#pragma once

// Truncated left-regular representation on ⊕_{s ∈ ideal} E_s, and the α/ρ
// calculus for any finite matrix representation of a product system.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prodsys/linalg.hpp"
#include "prodsys/outcome.hpp"
#include "prodsys/product_system.hpp"
#include "prodsys/wick.hpp"

namespace prodsys {

class FockBasis {
 public:
  struct State {
    std::size_t grade;  // index into grades()
    BasisLabel label;
  };

  /// Throws UnsupportedOperation when the ideal cannot be enumerated.
  FockBasis(ProductSystem sys, IdealBound bound);

  const ProductSystem& system() const { return sys_; }
  const IdealBound& bound() const { return bound_; }
  const std::vector<MonoidElement>& grades() const { return grades_; }
  const std::vector<State>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }

  std::optional<std::size_t> grade_index(const MonoidElement& s) const;
  std::optional<std::size_t> index_of(const MonoidElement& s, const BasisLabel& label) const;
  const MonoidElement& grade_of(std::size_t state) const { return grades_[states_[state].grade]; }

  /// True when u·t stays in the ideal for every u ∈ P of degree at most k.
  bool interior_grade(const MonoidElement& t, unsigned k) const;
  /// States whose grade is interior for depth k.
  std::vector<std::size_t> interior(unsigned k) const;

 private:
  ProductSystem sys_;
  IdealBound bound_;
  std::vector<MonoidElement> grades_;
  std::map<MonoidElement, std::size_t> grade_index_;
  std::vector<State> states_;
  std::map<std::pair<std::size_t, BasisLabel>, std::size_t> index_;
};

/// Degree of a grade for interior bookkeeping: the total exponent.
unsigned grade_degree(const MonoidElement& s);

struct FockOperator {
  std::shared_ptr<const FockBasis> basis;
  SparseMatrix matrix;
  /// Set when some image left the ideal and was dropped.
  bool truncated = false;
};

FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(Complex c, const FockOperator& a);
FockOperator adjoint(const FockOperator& a);
FockOperator fock_identity(std::shared_ptr<const FockBasis> basis);

/// l(x): (t, m) ↦ (p(x)t, x·m), dropped when p(x)t leaves the ideal.
FockOperator fock_phi(std::shared_ptr<const FockBasis> basis, const FiberVector& x);
/// Diagonal projection onto the grades t with s ≤ t.
FockOperator rho_proj(std::shared_ptr<const FockBasis> basis, const MonoidElement& s);
/// S ⊗ 1 on every grade t ≥ s, zero elsewhere.
FockOperator rho_op(std::shared_ptr<const FockBasis> basis, const FiberOperator& op);
/// Σ_u l(u) A l(u)* over the basis of E_t.
FockOperator alpha_endo(const MonoidElement& t, const FockOperator& a);
/// Σ c · l(v) l(w)*.
FockOperator represent(std::shared_ptr<const FockBasis> basis, const WickElement& x);
/// Zeroes every entry between different grades.
FockOperator expectation_spatial(const FockOperator& a);

/// Creation depth of X: the largest degree of a left grade.
unsigned creation_depth(const WickElement& x);

// ---------------------------------------------------------------------------
// Matrix representations

class Representation {
 public:
  virtual ~Representation() = default;
  virtual const ProductSystem& system() const = 0;
  virtual std::size_t dimension() const = 0;
  /// φ(e_label) for a basis vector of E_s.
  virtual SparseMatrix creation(const MonoidElement& s, const BasisLabel& label) const = 0;
  /// Columns on which any product of creations of total degree at most
  /// `depth` (and their adjoints) is computed without truncation loss.
  virtual std::vector<std::size_t> interior(unsigned depth) const = 0;
  virtual std::string name() const = 0;
};

class FockRepresentation final : public Representation {
 public:
  explicit FockRepresentation(std::shared_ptr<const FockBasis> basis) : basis_(std::move(basis)) {}

  const ProductSystem& system() const override { return basis_->system(); }
  std::size_t dimension() const override { return basis_->size(); }
  SparseMatrix creation(const MonoidElement& s, const BasisLabel& label) const override;
  std::vector<std::size_t> interior(unsigned depth) const override { return basis_->interior(depth); }
  std::string name() const override { return "fock"; }

  const std::shared_ptr<const FockBasis>& basis() const { return basis_; }

 private:
  std::shared_ptr<const FockBasis> basis_;
};

/// A family of d isometries on ℓ²{0..N−1} used through φ(e_{k1}…e_{kℓ}) =
/// S_{k1}…S_{kℓ}. Cuntz: S_k e_n = e_{dn+k}, so Σ S_k S_k* = 1. Toeplitz:
/// S_k e_n = e_{dn+k+1}, so Σ S_k S_k* = 1 − |e_0⟩⟨e_0|.
class SequenceRepresentation final : public Representation {
 public:
  enum class Family { cuntz, toeplitz };

  /// `sys` must be word-graded with every nontrivial generator of dimension d.
  SequenceRepresentation(ProductSystem sys, Family family, std::size_t n);

  const ProductSystem& system() const override { return sys_; }
  std::size_t dimension() const override { return n_; }
  SparseMatrix creation(const MonoidElement& s, const BasisLabel& label) const override;
  std::vector<std::size_t> interior(unsigned depth) const override;
  std::string name() const override;

  Family family() const { return family_; }
  std::uint32_t arity() const { return d_; }
  /// S_k itself.
  SparseMatrix isometry(std::uint32_t k) const;

 private:
  ProductSystem sys_;
  Family family_;
  std::size_t n_;
  std::uint32_t d_ = 1;
};

SparseMatrix phi(const Representation& rep, const FiberVector& x);
/// ρ^φ_s(S) = Σ S(k,l) φ(e_k)φ(e_l)*; the identity becomes Σ_u φ(u)φ(u)*.
SparseMatrix rho(const Representation& rep, const FiberOperator& op);
SparseMatrix rho_unit(const Representation& rep, const MonoidElement& s);
SparseMatrix alpha(const Representation& rep, const MonoidElement& t, const SparseMatrix& a);
SparseMatrix represent(const Representation& rep, const WickElement& x);

struct FaithfulnessResult {
  bool holds = false;
  /// Number of grades that entered the product (finite fibers only when asked).
  std::size_t factors = 0;
  /// A unit column index c with ∏(1 − ρ(s_k))e_c ≠ 0, if one exists.
  std::optional<std::size_t> witness;
  double witness_norm = 0.0;
};

/// ∏(1 − ρ_{s_k}(1)) restricted to the interior columns. With
/// finite_fibers_only, grades with infinite fibers are skipped (the
/// condition quantifies only over dim E_{s_k} < ∞).
FaithfulnessResult faithfulness_condition(const Representation& rep, const std::vector<MonoidElement>& grades,
                                          const std::vector<std::size_t>& columns, bool finite_fibers_only = false);

struct KillingWitness {
  enum class Kind { projection, vector, exhausted };
  Kind kind = Kind::exhausted;
  SparseMatrix projection;  // R_C, when kind == projection
  std::optional<FiberVector> vector;  // y, when kind == vector
  double achieved = 0.0;  // max over x ∈ F of ‖α_a(Q)φ(x)‖ on the interior
  std::size_t candidates_tried = 0;
};

/// First tries R_C = ∏_{r∈C}(1 − ρ_r(1)); if R_C vanishes on the interior,
/// searches basis vectors y over `search_grades` for ‖α_a(φ(y)φ(y)*)φ(x)‖ < ε
/// for every x ∈ F. Never fabricates a witness: reports exhaustion instead.
KillingWitness killing_witness_search(const Representation& rep, const MonoidElement& a,
                                      const std::vector<FiberVector>& f, const std::vector<MonoidElement>& c,
                                      double eps, const std::vector<MonoidElement>& search_grades,
                                      const std::vector<std::size_t>& columns);

/// max over d ∈ D of ‖Q α_d(Q)‖ on the given columns, Q = φ(v)φ(v)*.
double aperiodic_residual(const Representation& rep, const FiberVector& v, const std::vector<MonoidElement>& d,
                          const std::vector<std::size_t>& columns);

struct AperiodicWitness {
  FiberVector z;
  double residual = 0.0;
};

/// Searches basis vectors z over `search_grades` with aperiodic_residual(yz) < ε.
std::optional<AperiodicWitness> aperiodic_search(const Representation& rep, const FiberVector& y,
                                                 const std::vector<MonoidElement>& d,
                                                 const std::vector<MonoidElement>& search_grades,
                                                 const std::vector<std::size_t>& columns, double eps);

}  // namespace prodsys
