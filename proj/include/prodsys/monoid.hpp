#pragma once

// Exact arithmetic in quasi-lattice ordered monoids: direct sums and free
// products of totally ordered groups whose positive cones are N or the
// nonnegative rationals.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace prodsys {

using Integer = boost::multiprecision::cpp_int;
using Exponent = boost::multiprecision::cpp_rational;

/// Raised when an operation has no finite or exact realisation for the given
/// input (for example enumerating an ideal of a dense order).
class UnsupportedOperation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FactorKind { integers, rationals_dense };

enum class MonoidKind { free_product, direct_sum, total_order };

struct Factor {
  FactorKind kind = FactorKind::integers;
  std::string name;
};

/// One syllable of a reduced word: a power of the generator of one factor.
struct Letter {
  std::uint32_t factor = 0;
  Exponent exponent;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A reduced word. Only `Monoid` produces these, so the reduction invariant
/// (no zero exponents, no adjacent letters from the same factor, sorted
/// factors for direct sums) is established by `Monoid::normalize`.
class MonoidElement {
 public:
  MonoidElement() = default;

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  /// Sum of all exponents. For positive elements of integer factors this is
  /// the word length used by length-bounded ideals.
  Exponent total_degree() const;

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;

  /// Deterministic total order: positive elements first, ordered by total
  /// degree and then lexicographically on the expanded generator string;
  /// all other group elements after them in plain letter order.
  friend bool operator<(const MonoidElement& a, const MonoidElement& b);

 private:
  friend class Monoid;
  explicit MonoidElement(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::vector<Letter> letters_;
};

/// Three-way form of the ordering above: negative, zero or positive.
int compare(const MonoidElement& a, const MonoidElement& b);

struct Infinity {
  friend bool operator==(const Infinity&, const Infinity&) = default;
};

/// s ∨ t: a finite least upper bound, or the symbol Infinity when s and t
/// have no common upper bound.
class JoinResult {
 public:
  JoinResult(MonoidElement value) : value_(std::move(value)) {}
  JoinResult(Infinity) : value_(Infinity{}) {}

  bool is_infinite() const { return std::holds_alternative<Infinity>(value_); }
  bool is_finite() const { return !is_infinite(); }
  /// Throws std::logic_error when the join is infinite.
  const MonoidElement& value() const;

  friend bool operator==(const JoinResult&, const JoinResult&) = default;

 private:
  std::variant<Infinity, MonoidElement> value_;
};

/// θ(s): the image of s under the abelianisation to the direct sum. Only
/// nonzero coordinates are stored.
struct DirectSumImage {
  std::map<std::uint32_t, Exponent> coordinates;

  Exponent at(std::uint32_t factor) const;
  /// Componentwise maximum; the join in the direct sum.
  DirectSumImage join(const DirectSumImage& other) const;

  friend bool operator==(const DirectSumImage&, const DirectSumImage&) = default;
};

/// Words of total degree at most `max_degree`. For free products and total
/// orders this is join-closed; for direct sums it is only downward closed.
struct LengthBound {
  unsigned max_degree = 0;
};

/// Componentwise box in a direct sum (or a total order, with one entry).
struct BoxBound {
  std::vector<unsigned> limits;
};

using IdealBound = std::variant<LengthBound, BoxBound>;

std::string describe(const IdealBound& bound);

class Monoid {
 public:
  Monoid(MonoidKind kind, std::vector<Factor> factors);

  /// (N, +) with generator named "x".
  static Monoid naturals();
  /// Free product of n copies of N, generators a, b, c, ...
  static Monoid free_naturals(std::size_t n);
  /// N^n, generators a, b, c, ...
  static Monoid naturals_power(std::size_t n);

  MonoidKind kind() const { return kind_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t factor_count() const { return factors_.size(); }
  bool has_dense_factor() const;

  /// Joins of positive elements always lie in {s, t, ∞}.
  bool is_quasi_totally_ordered() const { return kind_ != MonoidKind::direct_sum; }

  MonoidElement identity() const { return {}; }
  MonoidElement generator(std::uint32_t factor, const Exponent& exponent = 1) const;
  MonoidElement from_coordinates(const std::vector<Exponent>& coords) const;

  /// Merges adjacent same-factor letters, drops zero exponents and, for
  /// direct sums, sorts letters by factor. Throws std::invalid_argument on an
  /// unknown factor or a fractional exponent of an integer factor.
  MonoidElement normalize(std::vector<Letter> raw) const;

  MonoidElement multiply(const MonoidElement& s, const MonoidElement& t) const;
  MonoidElement invert(const MonoidElement& g) const;
  bool is_positive(const MonoidElement& g) const;
  bool leq(const MonoidElement& s, const MonoidElement& t) const;
  JoinResult join(const MonoidElement& s, const MonoidElement& t) const;
  /// s⁻¹t for s ≤ t; throws std::invalid_argument otherwise.
  MonoidElement left_quotient(const MonoidElement& s, const MonoidElement& t) const;
  DirectSumImage theta(const MonoidElement& s) const;

  /// Finite ideal in graded-lexicographic order. Throws UnsupportedOperation
  /// for dense factors and for box bounds on free products.
  std::vector<MonoidElement> enumerate_ideal(const IdealBound& bound) const;

  /// Parses "e", words such as "a^2b", "b^-1a", "a^1/2", tuples "(1,0,2)"
  /// for direct sums and bare integers for total orders.
  MonoidElement parse(std::string_view text) const;
  std::string format(const MonoidElement& g) const;
  std::string format(const JoinResult& j) const;

 private:
  void validate_letter(const Letter& l) const;

  MonoidKind kind_;
  std::vector<Factor> factors_;
};

std::string format_exponent(const Exponent& e);

}  // namespace prodsys
