#include "prodsys/product_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace prodsys {

namespace {

std::size_t to_size(const Exponent& e) {
  if (boost::multiprecision::denominator(e) != 1 || e < 0) {
    throw std::invalid_argument("label length needs a nonnegative integer exponent, got " +
                                format_exponent(e));
  }
  return static_cast<std::size_t>(boost::multiprecision::numerator(e));
}

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (b != 0 && a > std::numeric_limits<std::size_t>::max() / b) {
    throw std::overflow_error("fiber dimension overflows size_t");
  }
  return a * b;
}

using ByKey = std::map<BasisLabel, std::vector<std::pair<BasisLabel, Complex>>>;

// Entries of `op` grouped by column (by_column = true) or by row.
ByKey group_entries(const FiberOperator& op, bool by_column) {
  ByKey out;
  for (const auto& [key, c] : op.entries()) {
    if (by_column) {
      out[key.second].emplace_back(key.first, c);
    } else {
      out[key.first].emplace_back(key.second, c);
    }
  }
  return out;
}

FiberOperator materialize(const ProductSystem& sys, const FiberOperator& op) {
  if (!op.is_identity()) return op;
  FiberOperator out(op.grade());
  for (const auto& l : sys.basis(op.grade())) out.add(l, l, 1.0);
  out.mark_truncated(op.truncated() || sys.dim(op.grade()).infinite);
  return out;
}

}  // namespace

std::string format_label(const BasisLabel& label) {
  const bool wide = std::any_of(label.begin(), label.end(), [](std::uint32_t s) { return s > 9; });
  std::ostringstream out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (wide && i) out << ',';
    out << label[i];
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// FiberVector / FiberOperator

FiberVector FiberVector::basis(MonoidElement grade, BasisLabel label, Complex c) {
  FiberVector v(std::move(grade));
  v.add(label, c);
  return v;
}

void FiberVector::add(const BasisLabel& label, Complex c) { coords_[label] += c; }

FiberVector& FiberVector::prune(double tol) {
  std::erase_if(coords_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

double FiberVector::norm() const {
  double sum = 0.0;
  for (const auto& [l, c] : coords_) sum += std::norm(c);
  return std::sqrt(sum);
}

Complex inner(const FiberVector& x, const FiberVector& y) {
  if (!(x.grade() == y.grade())) return 0.0;
  Complex sum = 0.0;
  for (const auto& [l, c] : x.coords()) {
    const auto it = y.coords().find(l);
    if (it != y.coords().end()) sum += c * std::conj(it->second);
  }
  return sum;
}

FiberOperator FiberOperator::identity(MonoidElement grade) {
  FiberOperator op(std::move(grade));
  op.identity_ = true;
  return op;
}

FiberOperator FiberOperator::rank_one(const FiberVector& x, const FiberVector& y) {
  if (!(x.grade() == y.grade())) throw std::invalid_argument("rank_one: vectors of different grades");
  FiberOperator op(x.grade());
  for (const auto& [lx, cx] : x.coords()) {
    for (const auto& [ly, cy] : y.coords()) op.add(lx, ly, cx * std::conj(cy));
  }
  return op.prune();
}

void FiberOperator::add(const BasisLabel& row, const BasisLabel& col, Complex c) {
  if (identity_) throw std::logic_error("cannot add entries to a symbolic identity");
  entries_[{row, col}] += c;
}

FiberOperator& FiberOperator::prune(double tol) {
  std::erase_if(entries_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

FiberVector FiberOperator::apply(const FiberVector& z) const {
  if (!(z.grade() == grade_)) throw std::invalid_argument("apply: vector grade differs from operator grade");
  if (identity_) return z;
  FiberVector out(grade_);
  for (const auto& [key, c] : entries_) {
    const auto it = z.coords().find(key.second);
    if (it != z.coords().end()) out.add(key.first, c * it->second);
  }
  return out.prune();
}

FiberOperator adjoint(const FiberOperator& op) {
  if (op.is_identity()) return op;
  FiberOperator out(op.grade());
  for (const auto& [key, c] : op.entries()) out.add(key.second, key.first, std::conj(c));
  out.mark_truncated(op.truncated());
  return out;
}

FiberOperator operator+(const FiberOperator& a, const FiberOperator& b) {
  if (!(a.grade() == b.grade())) throw std::invalid_argument("sum of operators on different fibers");
  if (a.is_identity() || b.is_identity()) {
    throw std::invalid_argument("sum with a symbolic identity; materialise it first");
  }
  FiberOperator out = a;
  for (const auto& [key, c] : b.entries()) out.add(key.first, key.second, c);
  out.mark_truncated(b.truncated());
  return out.prune();
}

FiberOperator operator*(Complex c, const FiberOperator& a) {
  if (a.is_identity()) throw std::invalid_argument("scaling a symbolic identity");
  FiberOperator out(a.grade());
  for (const auto& [key, v] : a.entries()) out.add(key.first, key.second, c * v);
  out.mark_truncated(a.truncated());
  return out.prune();
}

// ---------------------------------------------------------------------------
// ProductSystem

ProductSystem ProductSystem::word_graded(Monoid monoid, std::vector<GeneratorDim> dims) {
  if (dims.size() != monoid.factor_count()) {
    throw std::invalid_argument("need one generator dimension per factor");
  }
  const GeneratorDim* shared = nullptr;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (dims[f].dim == 0) throw std::invalid_argument("generator dimensions must be positive");
    if (monoid.factors()[f].kind == FactorKind::rationals_dense && !dims[f].trivial()) {
      throw std::invalid_argument("dense factors require dimension 1 (factor '" +
                                  monoid.factors()[f].name + "')");
    }
    if (monoid.kind() == MonoidKind::direct_sum && !dims[f].trivial()) {
      if (shared && !(*shared == dims[f])) {
        throw std::invalid_argument(
            "direct-sum systems concatenate tensor factors, so all nontrivial generator "
            "dimensions must agree");
      }
      shared = &dims[f];
    }
  }
  ProductSystem sys(std::move(monoid), SystemStyle::word_graded);
  sys.dims_ = std::move(dims);
  return sys;
}

ProductSystem ProductSystem::trivial(Monoid monoid) {
  std::vector<GeneratorDim> dims(monoid.factor_count(), GeneratorDim::finite(1));
  return word_graded(std::move(monoid), std::move(dims));
}

ProductSystem ProductSystem::von_neumann(Monoid monoid, std::uint32_t hilbert_dim, const IdealBound& support) {
  if (hilbert_dim == 0) throw std::invalid_argument("von Neumann systems need dim H >= 1");
  std::vector<MonoidElement> ideal = monoid.enumerate_ideal(support);
  ProductSystem sys(std::move(monoid), SystemStyle::vn_truncated);
  sys.dims_.assign(sys.monoid_.factor_count(), GeneratorDim::finite(1));
  sys.hilbert_dim_ = hilbert_dim;
  sys.support_ = std::move(ideal);
  for (std::size_t i = 0; i < sys.support_.size(); ++i) sys.support_index_.emplace(sys.support_[i], i);
  return sys;
}

std::vector<std::size_t> ProductSystem::index_set(const MonoidElement& s) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < support_.size(); ++r) {
    if (!monoid_.leq(s, support_[r])) out.push_back(r);
  }
  return out;
}

std::size_t ProductSystem::word_label_length(const MonoidElement& s) const {
  std::size_t n = 0;
  for (const auto& l : s.letters()) {
    if (!dims_[l.factor].trivial()) n += to_size(l.exponent);
  }
  return n;
}

std::vector<std::uint32_t> ProductSystem::alphabets(const MonoidElement& s) const {
  if (!monoid_.is_positive(s)) throw std::invalid_argument("fibers exist only over P");
  std::vector<std::uint32_t> out;
  if (style_ == SystemStyle::vn_truncated) {
    out.assign(index_set(s).size(), hilbert_dim_);
    return out;
  }
  for (const auto& l : s.letters()) {
    const auto& d = dims_[l.factor];
    if (!d.trivial()) out.insert(out.end(), to_size(l.exponent), d.dim);
  }
  return out;
}

FiberDim ProductSystem::dim(const MonoidElement& s) const {
  FiberDim out;
  for (std::uint32_t a : alphabets(s)) out.count = checked_mul(out.count, a);
  if (style_ == SystemStyle::word_graded) {
    for (const auto& l : s.letters()) out.infinite = out.infinite || dims_[l.factor].infinite;
  }
  return out;
}

std::vector<BasisLabel> ProductSystem::basis(const MonoidElement& s) const {
  const std::vector<std::uint32_t> alpha = alphabets(s);
  std::vector<BasisLabel> out;
  BasisLabel label(alpha.size(), 0);
  while (true) {
    out.push_back(label);
    std::size_t k = alpha.size();
    while (k > 0) {
      --k;
      if (++label[k] < alpha[k]) break;
      label[k] = 0;
      if (k == 0) return out;
    }
    if (alpha.empty()) return out;
  }
}

bool ProductSystem::is_label(const MonoidElement& s, const BasisLabel& label) const {
  const std::vector<std::uint32_t> alpha = alphabets(s);
  if (alpha.size() != label.size()) return false;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (label[k] >= alpha[k]) return false;
  }
  return true;
}

std::optional<BasisLabel> ProductSystem::try_multiply_labels(const MonoidElement& s, const BasisLabel& x,
                                                             const MonoidElement& t,
                                                             const BasisLabel& y) const {
  if (style_ == SystemStyle::word_graded) {
    BasisLabel out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
  }
  const auto is = index_set(s);
  const auto it = index_set(t);
  if (is.size() != x.size() || it.size() != y.size()) {
    throw std::invalid_argument("label does not match its grade");
  }
  std::map<std::size_t, std::uint32_t> slots;
  for (std::size_t k = 0; k < is.size(); ++k) slots[is[k]] = x[k];
  for (std::size_t k = 0; k < it.size(); ++k) {
    const MonoidElement r = monoid_.multiply(s, support_[it[k]]);
    const auto found = support_index_.find(r);
    if (found == support_index_.end()) {
      if (y[k] != 0) return std::nullopt;
      continue;
    }
    slots[found->second] = y[k];
  }
  const auto ist = index_set(monoid_.multiply(s, t));
  BasisLabel out;
  out.reserve(ist.size());
  for (std::size_t r : ist) {
    const auto found = slots.find(r);
    out.push_back(found == slots.end() ? 0 : found->second);
  }
  return out;
}

BasisLabel ProductSystem::multiply_labels(const MonoidElement& s, const BasisLabel& x,
                                          const MonoidElement& t, const BasisLabel& y) const {
  auto out = try_multiply_labels(s, x, t, y);
  if (!out) {
    throw LostSupport("product of grades " + monoid_.format(s) + " and " + monoid_.format(t) +
                      " needs tensor slots outside the retained support");
  }
  return *out;
}

std::pair<BasisLabel, BasisLabel> ProductSystem::factor_label(const MonoidElement& u, const MonoidElement& s,
                                                              const BasisLabel& label) const {
  const MonoidElement q = monoid_.left_quotient(s, u);
  if (style_ == SystemStyle::word_graded) {
    const std::size_t cut = word_label_length(s);
    if (cut > label.size()) throw std::invalid_argument("label too short for its grade");
    return {BasisLabel(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(cut)),
            BasisLabel(label.begin() + static_cast<std::ptrdiff_t>(cut), label.end())};
  }
  const auto iu = index_set(u);
  if (iu.size() != label.size()) throw std::invalid_argument("label does not match its grade");
  std::map<std::size_t, std::uint32_t> slots;
  for (std::size_t k = 0; k < iu.size(); ++k) slots[iu[k]] = label[k];
  BasisLabel left, right;
  for (std::size_t r : index_set(s)) left.push_back(slots.at(r));
  for (std::size_t a : index_set(q)) {
    const auto found = support_index_.find(monoid_.multiply(s, support_[a]));
    right.push_back(found == support_index_.end() ? 0 : slots.at(found->second));
  }
  return {std::move(left), std::move(right)};
}

// ---------------------------------------------------------------------------
// Operations

FiberVector multiply_vectors(const ProductSystem& sys, const FiberVector& x, const FiberVector& y) {
  FiberVector out(sys.monoid().multiply(x.grade(), y.grade()));
  for (const auto& [lx, cx] : x.coords()) {
    for (const auto& [ly, cy] : y.coords()) {
      out.add(sys.multiply_labels(x.grade(), lx, y.grade(), ly), cx * cy);
    }
  }
  return out.prune();
}

std::vector<LabelSplit> factor_basis(const ProductSystem& sys, const MonoidElement& u, const MonoidElement& s) {
  if (!sys.monoid().leq(s, u)) {
    throw std::invalid_argument("factor_basis: " + sys.monoid().format(s) + " is not below " +
                                sys.monoid().format(u));
  }
  std::vector<LabelSplit> out;
  for (auto& whole : sys.basis(u)) {
    auto [left, right] = sys.factor_label(u, s, whole);
    out.push_back(LabelSplit{std::move(whole), std::move(left), std::move(right)});
  }
  return out;
}

FiberOperator promote(const ProductSystem& sys, const FiberOperator& op, const MonoidElement& u) {
  const MonoidElement& s = op.grade();
  if (op.is_identity()) return FiberOperator::identity(u);
  const MonoidElement q = sys.monoid().left_quotient(s, u);
  const ByKey by_col = group_entries(op, true);
  FiberOperator out(u);
  for (const auto& split : factor_basis(sys, u, s)) {
    const auto it = by_col.find(split.left);
    if (it == by_col.end()) continue;
    for (const auto& [row, c] : it->second) {
      out.add(sys.multiply_labels(s, row, q, split.right), split.whole, c);
    }
  }
  out.mark_truncated(op.truncated() || sys.dim(q).infinite);
  return out.prune();
}

FiberOperator promote_left(const ProductSystem& sys, const FiberOperator& op, const MonoidElement& t) {
  const MonoidElement& s = op.grade();
  const MonoidElement ts = sys.monoid().multiply(t, s);
  if (op.is_identity()) return FiberOperator::identity(ts);
  const ByKey by_col = group_entries(op, true);
  FiberOperator out(ts);
  for (const auto& split : factor_basis(sys, ts, t)) {
    const auto it = by_col.find(split.right);
    if (it == by_col.end()) continue;
    for (const auto& [row, c] : it->second) {
      out.add(sys.multiply_labels(t, split.left, s, row), split.whole, c);
    }
  }
  out.mark_truncated(op.truncated() || sys.dim(t).infinite);
  return out.prune();
}

FiberOperator compose(const FiberOperator& a, const FiberOperator& b) {
  if (!(a.grade() == b.grade())) throw std::invalid_argument("compose: operators on different fibers");
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  const ByKey b_rows = group_entries(b, false);
  FiberOperator out(a.grade());
  for (const auto& [key, c] : a.entries()) {
    const auto it = b_rows.find(key.second);
    if (it == b_rows.end()) continue;
    for (const auto& [col, c2] : it->second) out.add(key.first, col, c * c2);
  }
  out.mark_truncated(a.truncated() || b.truncated());
  return out.prune();
}

FiberOperator tensor(const ProductSystem& sys, const FiberOperator& a, const FiberOperator& b) {
  const MonoidElement rq = sys.monoid().multiply(a.grade(), b.grade());
  if (a.is_identity() && b.is_identity()) return FiberOperator::identity(rq);
  const FiberOperator ma = materialize(sys, a);
  const FiberOperator mb = materialize(sys, b);
  FiberOperator out(rq);
  for (const auto& [ka, ca] : ma.entries()) {
    for (const auto& [kb, cb] : mb.entries()) {
      out.add(sys.multiply_labels(a.grade(), ka.first, b.grade(), kb.first),
              sys.multiply_labels(a.grade(), ka.second, b.grade(), kb.second), ca * cb);
    }
  }
  out.mark_truncated(ma.truncated() || mb.truncated());
  return out.prune();
}

std::optional<FiberOperator> compact_align(const ProductSystem& sys, const FiberOperator& s_op,
                                           const FiberOperator& t_op) {
  const Monoid& m = sys.monoid();
  const MonoidElement& s = s_op.grade();
  const MonoidElement& t = t_op.grade();
  const JoinResult j = m.join(s, t);
  if (j.is_infinite()) return std::nullopt;
  if (s == t) return compose(s_op, t_op);

  if (m.leq(s, t)) {
    // (S ⊗ 1) T: only the range of T is touched, so this is exact.
    if (t_op.is_identity()) return promote(sys, s_op, t);
    if (s_op.is_identity()) return t_op;
    const MonoidElement q = m.left_quotient(s, t);
    const ByKey s_cols = group_entries(s_op, true);
    FiberOperator out(t);
    for (const auto& [key, c] : t_op.entries()) {
      auto [head, tail] = sys.factor_label(t, s, key.first);
      const auto it = s_cols.find(head);
      if (it == s_cols.end()) continue;
      for (const auto& [row, c2] : it->second) out.add(sys.multiply_labels(s, row, q, tail), key.second, c2 * c);
    }
    out.mark_truncated(s_op.truncated() || t_op.truncated());
    return out.prune();
  }
  if (m.leq(t, s)) {
    // S (T ⊗ 1).
    if (s_op.is_identity()) return promote(sys, t_op, s);
    if (t_op.is_identity()) return s_op;
    const MonoidElement q = m.left_quotient(t, s);
    const ByKey t_rows = group_entries(t_op, false);
    FiberOperator out(s);
    for (const auto& [key, c] : s_op.entries()) {
      auto [head, tail] = sys.factor_label(s, t, key.second);
      const auto it = t_rows.find(head);
      if (it == t_rows.end()) continue;
      for (const auto& [col, c2] : it->second) out.add(key.first, sys.multiply_labels(t, col, q, tail), c * c2);
    }
    out.mark_truncated(s_op.truncated() || t_op.truncated());
    return out.prune();
  }
  return compose(promote(sys, s_op, j.value()), promote(sys, t_op, j.value()));
}

ProductSystem free_product_system(const std::vector<ProductSystem>& factors) {
  if (factors.empty()) throw std::invalid_argument("free product of no systems");
  if (factors.size() == 1) return factors.front();
  std::vector<Factor> fs;
  std::vector<GeneratorDim> dims;
  for (const auto& sys : factors) {
    if (sys.style() != SystemStyle::word_graded || sys.monoid().factor_count() != 1 ||
        sys.monoid().kind() == MonoidKind::direct_sum) {
      throw std::invalid_argument("free_product_system expects word-graded systems over total orders");
    }
    fs.push_back(Factor{sys.monoid().factors().front().kind, ""});
    dims.push_back(sys.generator_dims().front());
  }
  return ProductSystem::word_graded(Monoid(MonoidKind::free_product, std::move(fs)), std::move(dims));
}

Eigen::MatrixXcd to_dense(const ProductSystem& sys, const FiberOperator& op) {
  const auto labels = sys.basis(op.grade());
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (op.is_identity()) return Eigen::MatrixXcd::Identity(n, n);
  std::map<BasisLabel, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i) index.emplace(labels[static_cast<std::size_t>(i)], i);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [key, c] : op.entries()) out(index.at(key.first), index.at(key.second)) += c;
  return out;
}

double max_difference(const ProductSystem& sys, const FiberOperator& a, const FiberOperator& b) {
  if (!(a.grade() == b.grade())) return std::numeric_limits<double>::infinity();
  if (a.is_identity() && b.is_identity()) return 0.0;
  const FiberOperator ma = materialize(sys, a);
  const FiberOperator mb = materialize(sys, b);
  double worst = 0.0;
  for (const auto& [key, c] : ma.entries()) {
    const auto it = mb.entries().find(key);
    worst = std::max(worst, std::abs(c - (it == mb.entries().end() ? Complex(0.0) : it->second)));
  }
  for (const auto& [key, c] : mb.entries()) {
    if (!ma.entries().count(key)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

}  // namespace prodsys
