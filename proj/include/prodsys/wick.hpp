#pragma once

// The *-algebra spanned by monomials i(x)i(y)* over a basis-aligned product
// system. Elements are kept in canonical form over basis labels.

#include <map>
#include <string>
#include <vector>

#include "prodsys/outcome.hpp"
#include "prodsys/product_system.hpp"

namespace prodsys {

inline constexpr double kWickTolerance = 1e-10;

/// i(e_left @ left_grade) i(e_right @ right_grade)*.
struct WickKey {
  MonoidElement left_grade;
  BasisLabel left;
  MonoidElement right_grade;
  BasisLabel right;

  friend bool operator==(const WickKey&, const WickKey&) = default;
  /// Graded-lex on (left grade, left label, right grade, right label).
  friend bool operator<(const WickKey& a, const WickKey& b);
};

class WickElement {
 public:
  using Terms = std::map<WickKey, Complex>;

  WickElement() = default;

  /// 1 = i(Ω)i(Ω)*.
  static WickElement identity();
  /// c · i(x)i(y)*, expanded bilinearly over basis labels.
  static WickElement monomial(const FiberVector& x, const FiberVector& y, Complex c = 1.0);
  static WickElement basis_monomial(WickKey key, Complex c = 1.0);
  /// Merges duplicate keys and prunes coefficients below the tolerance.
  static WickElement canonicalize(const std::vector<std::pair<WickKey, Complex>>& raw);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Every term has p(x) = p(y).
  bool is_diagonal() const;

  void add(const WickKey& key, Complex c);
  WickElement& prune(double tol = kPruneTolerance);

  WickElement& operator+=(const WickElement& other);

 private:
  Terms terms_;
};

WickElement operator+(WickElement a, const WickElement& b);
WickElement operator-(WickElement a, const WickElement& b);
WickElement operator*(Complex c, const WickElement& a);

/// Largest coefficient difference, over the union of keys.
double max_difference(const WickElement& a, const WickElement& b);
bool approx_equal(const WickElement& a, const WickElement& b, double tol = kWickTolerance);

WickElement adjoint(const WickElement& a);

/// A·B by the monomial rule. For i(v)i(w)*·i(x)i(y)*: zero when p(w)∨p(x)
/// is infinite; a single surviving term when the grades are comparable;
/// the finite sum over the quotient fiber for a proper join. Inexact when
/// that sum would range over an infinite fiber or leave the retained
/// support of a truncated system.
Outcome<WickElement> wick_multiply(const ProductSystem& sys, const WickElement& a, const WickElement& b);

/// Keeps exactly the terms with p(x) = p(y).
WickElement phi_delta(const WickElement& a);

/// p(x)p(y)⁻¹ in the enveloping group.
MonoidElement gauge_degree(const Monoid& monoid, const WickKey& key);

/// ρ_s(S) = Σ S(k,l) i(e_k)i(e_l)*. Throws UnsupportedOperation for the
/// identity of an infinite fiber, which is not compact.
WickElement rho_of_compact(const ProductSystem& sys, const FiberOperator& op);

struct CovarianceCheck {
  bool holds = false;
  bool infinite_join = false;
  double residual = 0.0;
};

/// Compares ρ_s(S)ρ_t(T) with ρ_{s∨t}((S⊗1)(T⊗1)), or with 0 when s∨t = ∞.
Outcome<CovarianceCheck> covariance_check_symbolic(const ProductSystem& sys, const FiberOperator& s_op,
                                                   const FiberOperator& t_op);

struct DiagonalNormCertificate {
  MonoidElement a;
  double value = 0.0;
  std::size_t matrix_dim = 0;
};

/// Candidate grades for the norm certificate: the join-closure of the
/// grades appearing in a diagonal element.
std::vector<MonoidElement> certificate_candidates(const Monoid& monoid, const WickElement& x);

/// T_a = Σ_{p(x_j) ≤ a} c_j (x_j ⊗ ȳ_j) ⊗ 1 on the labels it touches.
Outcome<FiberOperator> assemble_t(const ProductSystem& sys, const WickElement& x, const MonoidElement& a);

/// ‖X‖ = max over candidates of ‖T_a‖ for diagonal X. Throws
/// std::invalid_argument when X is not diagonal.
Outcome<DiagonalNormCertificate> norm_diagonal(const ProductSystem& sys, const WickElement& x);

std::string format(const Monoid& monoid, const WickElement& x);
std::string format_key(const Monoid& monoid, const WickKey& key);

}  // namespace prodsys
