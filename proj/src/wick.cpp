#include "prodsys/wick.hpp"

#include "prodsys/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace prodsys {

namespace {

int compare_labels(const BasisLabel& a, const BasisLabel& b) {
  if (a < b) return -1;
  return b < a ? 1 : 0;
}

std::string format_coefficient(Complex c) {
  std::ostringstream out;
  out.precision(12);
  if (c.imag() == 0.0) {
    out << c.real();
  } else {
    out << '(' << c.real() << (c.imag() < 0 ? '-' : '+') << std::abs(c.imag()) << "j)";
  }
  return out.str();
}

}  // namespace

bool operator<(const WickKey& a, const WickKey& b) {
  if (int c = compare(a.left_grade, b.left_grade)) return c < 0;
  if (int c = compare_labels(a.left, b.left)) return c < 0;
  if (int c = compare(a.right_grade, b.right_grade)) return c < 0;
  return compare_labels(a.right, b.right) < 0;
}

WickElement WickElement::identity() { return basis_monomial(WickKey{}, 1.0); }

WickElement WickElement::basis_monomial(WickKey key, Complex c) {
  WickElement out;
  out.add(key, c);
  return out.prune();
}

WickElement WickElement::monomial(const FiberVector& x, const FiberVector& y, Complex c) {
  WickElement out;
  for (const auto& [lx, cx] : x.coords()) {
    for (const auto& [ly, cy] : y.coords()) {
      out.add(WickKey{x.grade(), lx, y.grade(), ly}, c * cx * std::conj(cy));
    }
  }
  return out.prune();
}

WickElement WickElement::canonicalize(const std::vector<std::pair<WickKey, Complex>>& raw) {
  WickElement out;
  for (const auto& [k, c] : raw) out.add(k, c);
  return out.prune();
}

bool WickElement::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.left_grade == kv.first.right_grade; });
}

void WickElement::add(const WickKey& key, Complex c) { terms_[key] += c; }

WickElement& WickElement::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

WickElement& WickElement::operator+=(const WickElement& other) {
  for (const auto& [k, c] : other.terms_) add(k, c);
  return prune();
}

WickElement operator+(WickElement a, const WickElement& b) { return a += b; }

WickElement operator-(WickElement a, const WickElement& b) { return a += (-1.0) * b; }

WickElement operator*(Complex c, const WickElement& a) {
  WickElement out;
  for (const auto& [k, v] : a.terms()) out.add(k, c * v);
  return out.prune();
}

double max_difference(const WickElement& a, const WickElement& b) {
  double worst = 0.0;
  for (const auto& [k, c] : a.terms()) {
    const auto it = b.terms().find(k);
    worst = std::max(worst, std::abs(c - (it == b.terms().end() ? Complex(0.0) : it->second)));
  }
  for (const auto& [k, c] : b.terms()) {
    if (!a.terms().count(k)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

bool approx_equal(const WickElement& a, const WickElement& b, double tol) { return max_difference(a, b) <= tol; }

WickElement adjoint(const WickElement& a) {
  WickElement out;
  for (const auto& [k, c] : a.terms()) {
    out.add(WickKey{k.right_grade, k.right, k.left_grade, k.left}, std::conj(c));
  }
  return out;
}

namespace {

// Product of two basis monomials; appends surviving terms to `out`.
// Returns an empty string on success, otherwise the reason for inexactness.
std::string multiply_monomials(const ProductSystem& sys, const WickKey& l, Complex cl, const WickKey& r,
                               Complex cr, WickElement& out) {
  const Monoid& m = sys.monoid();
  const MonoidElement& sw = l.right_grade;
  const MonoidElement& sx = r.left_grade;
  const JoinResult j = m.join(sw, sx);
  if (j.is_infinite()) return {};
  const Complex c = cl * cr;

  auto times = [&](const MonoidElement& s, const BasisLabel& a, const MonoidElement& t, const BasisLabel& b) {
    return sys.try_multiply_labels(s, a, t, b);
  };
  const std::string lost = "product leaves the retained support of the truncated system";

  if (m.leq(sw, sx)) {
    const MonoidElement q = m.left_quotient(sw, sx);
    auto [head, tail] = sys.factor_label(sx, sw, r.left);
    if (head != l.right) return {};
    auto left = times(l.left_grade, l.left, q, tail);
    if (!left) return lost;
    out.add(WickKey{m.multiply(l.left_grade, q), *left, r.right_grade, r.right}, c);
    return {};
  }
  if (m.leq(sx, sw)) {
    const MonoidElement q = m.left_quotient(sx, sw);
    auto [head, tail] = sys.factor_label(sw, sx, l.right);
    if (head != r.left) return {};
    auto right = times(r.right_grade, r.right, q, tail);
    if (!right) return lost;
    out.add(WickKey{l.left_grade, l.left, m.multiply(r.right_grade, q), *right}, c);
    return {};
  }

  const MonoidElement& join = j.value();
  const MonoidElement q1 = m.left_quotient(sw, join);
  const MonoidElement q2 = m.left_quotient(sx, join);
  if (sys.dim(q1).infinite || sys.dim(q2).infinite) {
    return "proper join " + m.format(join) + " meets an infinite quotient fiber";
  }
  for (const auto& f : sys.basis(q1)) {
    auto wf = times(sw, l.right, q1, f);
    if (!wf) return lost;
    auto [head, g] = sys.factor_label(join, sx, *wf);
    if (head != r.left) continue;
    auto left = times(l.left_grade, l.left, q1, f);
    auto right = times(r.right_grade, r.right, q2, g);
    if (!left || !right) return lost;
    out.add(WickKey{m.multiply(l.left_grade, q1), *left, m.multiply(r.right_grade, q2), *right}, c);
  }
  return {};
}

}  // namespace

Outcome<WickElement> wick_multiply(const ProductSystem& sys, const WickElement& a, const WickElement& b) {
  WickElement out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      std::string why = multiply_monomials(sys, ka, ca, kb, cb, out);
      if (!why.empty()) return Outcome<WickElement>::inexact(std::move(why));
    }
  }
  return Outcome<WickElement>::exact_value(std::move(out.prune()));
}

WickElement phi_delta(const WickElement& a) {
  WickElement out;
  for (const auto& [k, c] : a.terms()) {
    if (k.left_grade == k.right_grade) out.add(k, c);
  }
  return out;
}

MonoidElement gauge_degree(const Monoid& monoid, const WickKey& key) {
  return monoid.multiply(key.left_grade, monoid.invert(key.right_grade));
}

WickElement rho_of_compact(const ProductSystem& sys, const FiberOperator& op) {
  WickElement out;
  const MonoidElement& s = op.grade();
  if (op.is_identity()) {
    if (sys.dim(s).infinite) {
      throw UnsupportedOperation("the identity of the infinite fiber over " + sys.monoid().format(s) +
                                 " is not compact");
    }
    for (const auto& l : sys.basis(s)) out.add(WickKey{s, l, s, l}, 1.0);
    return out;
  }
  for (const auto& [key, c] : op.entries()) out.add(WickKey{s, key.first, s, key.second}, c);
  return out.prune();
}

Outcome<CovarianceCheck> covariance_check_symbolic(const ProductSystem& sys, const FiberOperator& s_op,
                                                   const FiberOperator& t_op) {
  const auto lhs = wick_multiply(sys, rho_of_compact(sys, s_op), rho_of_compact(sys, t_op));
  if (!lhs.exact()) return Outcome<CovarianceCheck>::inexact(lhs.inexact_reason);
  CovarianceCheck out;
  const auto aligned = compact_align(sys, s_op, t_op);
  WickElement rhs;
  if (!aligned) {
    out.infinite_join = true;
  } else {
    if (aligned->truncated()) {
      return Outcome<CovarianceCheck>::inexact("(S⊗1)(T⊗1) was cut at the working dimension");
    }
    rhs = rho_of_compact(sys, *aligned);
  }
  out.residual = max_difference(*lhs.value, rhs);
  out.holds = out.residual <= kWickTolerance;
  return Outcome<CovarianceCheck>::exact_value(out);
}

std::vector<MonoidElement> certificate_candidates(const Monoid& monoid, const WickElement& x) {
  std::set<MonoidElement> closure;
  for (const auto& [k, c] : x.terms()) closure.insert(k.left_grade);
  if (closure.empty()) closure.insert(monoid.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<MonoidElement> current(closure.begin(), closure.end());
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t k = i + 1; k < current.size(); ++k) {
        const JoinResult j = monoid.join(current[i], current[k]);
        if (j.is_finite() && closure.insert(j.value()).second) grew = true;
      }
    }
  }
  return {closure.begin(), closure.end()};
}

Outcome<FiberOperator> assemble_t(const ProductSystem& sys, const WickElement& x, const MonoidElement& a) {
  const Monoid& m = sys.monoid();
  FiberOperator t(a);
  for (const auto& [k, c] : x.terms()) {
    if (!m.leq(k.left_grade, a)) continue;
    const MonoidElement q = m.left_quotient(k.left_grade, a);
    if (sys.dim(q).infinite) {
      return Outcome<FiberOperator>::inexact("quotient fiber over " + m.format(q) + " is infinite");
    }
    FiberOperator rank_one(k.left_grade);
    rank_one.add(k.left, k.right, c);
    const FiberOperator lifted = promote(sys, rank_one, a);
    for (const auto& [key, v] : lifted.entries()) t.add(key.first, key.second, v);
  }
  return Outcome<FiberOperator>::exact_value(std::move(t.prune()));
}

Outcome<DiagonalNormCertificate> norm_diagonal(const ProductSystem& sys, const WickElement& x) {
  if (!x.is_diagonal()) throw std::invalid_argument("norm_diagonal needs a diagonal element");
  Outcome<DiagonalNormCertificate> best = Outcome<DiagonalNormCertificate>::exact_value({});
  bool first = true;
  for (const auto& a : certificate_candidates(sys.monoid(), x)) {
    const auto t = assemble_t(sys, x, a);
    if (!t.exact()) return Outcome<DiagonalNormCertificate>::inexact(t.inexact_reason);
    std::map<BasisLabel, Eigen::Index> index;
    for (const auto& [key, c] : t.value->entries()) {
      index.emplace(key.first, 0);
      index.emplace(key.second, 0);
    }
    Eigen::Index n = 0;
    for (auto& [l, i] : index) i = n++;
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [key, c] : t.value->entries()) dense(index[key.first], index[key.second]) += c;
    const double value = svd_norm(dense);
    if (first || value > best.value->value) {
      best.value = DiagonalNormCertificate{a, value, static_cast<std::size_t>(n)};
      first = false;
    }
  }
  return best;
}

std::string format_key(const Monoid& monoid, const WickKey& key) {
  return "i(" + monoid.format(key.left_grade) + ":" + format_label(key.left) + ")i*(" +
         monoid.format(key.right_grade) + ":" + format_label(key.right) + ")";
}

std::string format(const Monoid& monoid, const WickElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += format_coefficient(c) + "*" + format_key(monoid, k);
  }
  return out;
}

}  // namespace prodsys
