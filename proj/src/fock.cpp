#include "prodsys/fock.hpp"

#include <algorithm>
#include <cmath>

namespace prodsys {

namespace {

using Triplets = std::vector<Eigen::Triplet<Complex>>;

SparseMatrix from_triplets(std::size_t n, const Triplets& t) {
  SparseMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

void require_same(const FockOperator& a, const FockOperator& b) {
  if (a.basis != b.basis) throw std::invalid_argument("Fock operators over different bases");
}

double restricted_norm(const SparseMatrix& a, const std::vector<std::size_t>& cols) {
  const SparseMatrix r = columns(a, cols);
  if (max_abs(r) == 0.0) return 0.0;
  return operator_norm(r).value;
}

}  // namespace

unsigned grade_degree(const MonoidElement& s) {
  const Exponent d = s.total_degree();
  if (boost::multiprecision::denominator(d) != 1 || d < 0) {
    throw UnsupportedOperation("grade without an integer degree");
  }
  return static_cast<unsigned>(boost::multiprecision::numerator(d));
}

// ---------------------------------------------------------------------------
// FockBasis

FockBasis::FockBasis(ProductSystem sys, IdealBound bound)
    : sys_(std::move(sys)), bound_(std::move(bound)), grades_(sys_.monoid().enumerate_ideal(bound_)) {
  for (std::size_t g = 0; g < grades_.size(); ++g) {
    grade_index_.emplace(grades_[g], g);
    for (auto& label : sys_.basis(grades_[g])) {
      index_.emplace(std::make_pair(g, label), states_.size());
      states_.push_back(State{g, std::move(label)});
    }
  }
}

std::optional<std::size_t> FockBasis::grade_index(const MonoidElement& s) const {
  const auto it = grade_index_.find(s);
  if (it == grade_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FockBasis::index_of(const MonoidElement& s, const BasisLabel& label) const {
  const auto g = grade_index(s);
  if (!g) return std::nullopt;
  const auto it = index_.find({*g, label});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FockBasis::interior_grade(const MonoidElement& t, unsigned k) const {
  if (const auto* len = std::get_if<LengthBound>(&bound_)) {
    return grade_degree(t) + k <= len->max_degree;
  }
  const auto& box = std::get<BoxBound>(bound_);
  const DirectSumImage image = sys_.monoid().theta(t);
  for (std::size_t f = 0; f < box.limits.size(); ++f) {
    const Exponent c = image.at(static_cast<std::uint32_t>(f));
    if (c + k > box.limits[f]) return false;
  }
  return true;
}

std::vector<std::size_t> FockBasis::interior(unsigned k) const {
  std::vector<bool> ok(grades_.size());
  for (std::size_t g = 0; g < grades_.size(); ++g) ok[g] = interior_grade(grades_[g], k);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (ok[states_[i].grade]) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FockOperator arithmetic

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  require_same(a, b);
  return {a.basis, prune(SparseMatrix(a.matrix * b.matrix), kPruneTolerance), a.truncated || b.truncated};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  require_same(a, b);
  return {a.basis, prune(SparseMatrix(a.matrix + b.matrix), kPruneTolerance), a.truncated || b.truncated};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  require_same(a, b);
  return {a.basis, prune(SparseMatrix(a.matrix - b.matrix), kPruneTolerance), a.truncated || b.truncated};
}

FockOperator operator*(Complex c, const FockOperator& a) {
  return {a.basis, prune(SparseMatrix(c * a.matrix), kPruneTolerance), a.truncated};
}

FockOperator adjoint(const FockOperator& a) { return {a.basis, SparseMatrix(a.matrix.adjoint()), a.truncated}; }

FockOperator fock_identity(std::shared_ptr<const FockBasis> basis) {
  const std::size_t n = basis->size();
  return {std::move(basis), identity_matrix(n), false};
}

FockOperator fock_phi(std::shared_ptr<const FockBasis> basis, const FiberVector& x) {
  const ProductSystem& sys = basis->system();
  const Monoid& m = sys.monoid();
  Triplets trips;
  bool truncated = false;
  const auto& states = basis->states();
  for (std::size_t j = 0; j < states.size(); ++j) {
    const MonoidElement& t = basis->grades()[states[j].grade];
    const MonoidElement target = m.multiply(x.grade(), t);
    const auto g = basis->grade_index(target);
    for (const auto& [lx, c] : x.coords()) {
      std::optional<std::size_t> row;
      if (g) {
        if (auto label = sys.try_multiply_labels(x.grade(), lx, t, states[j].label)) {
          row = basis->index_of(target, *label);
        }
      }
      if (!row) {
        truncated = true;
        continue;
      }
      trips.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(j), c);
    }
  }
  return {basis, prune(from_triplets(basis->size(), trips), kPruneTolerance), truncated};
}

FockOperator rho_proj(std::shared_ptr<const FockBasis> basis, const MonoidElement& s) {
  const Monoid& m = basis->system().monoid();
  Triplets trips;
  for (std::size_t j = 0; j < basis->size(); ++j) {
    if (m.leq(s, basis->grade_of(j))) trips.emplace_back(j, j, 1.0);
  }
  const std::size_t n = basis->size();
  return {std::move(basis), from_triplets(n, trips), false};
}

FockOperator rho_op(std::shared_ptr<const FockBasis> basis, const FiberOperator& op) {
  if (op.is_identity()) return rho_proj(std::move(basis), op.grade());
  const ProductSystem& sys = basis->system();
  const Monoid& m = sys.monoid();
  const MonoidElement& s = op.grade();
  std::map<BasisLabel, std::vector<std::pair<BasisLabel, Complex>>> by_col;
  for (const auto& [key, c] : op.entries()) by_col[key.second].emplace_back(key.first, c);
  Triplets trips;
  for (std::size_t j = 0; j < basis->size(); ++j) {
    const MonoidElement& t = basis->grade_of(j);
    if (!m.leq(s, t)) continue;
    const MonoidElement q = m.left_quotient(s, t);
    auto [head, tail] = sys.factor_label(t, s, basis->states()[j].label);
    const auto it = by_col.find(head);
    if (it == by_col.end()) continue;
    for (const auto& [row, c] : it->second) {
      const auto i = basis->index_of(t, sys.multiply_labels(s, row, q, tail));
      trips.emplace_back(static_cast<Eigen::Index>(i.value()), static_cast<Eigen::Index>(j), c);
    }
  }
  const std::size_t n = basis->size();
  return {std::move(basis), prune(from_triplets(n, trips), kPruneTolerance), op.truncated()};
}

FockOperator alpha_endo(const MonoidElement& t, const FockOperator& a) {
  const ProductSystem& sys = a.basis->system();
  FockOperator out{a.basis, SparseMatrix(a.matrix.rows(), a.matrix.cols()), a.truncated || sys.dim(t).infinite};
  for (const auto& u : sys.basis(t)) {
    const FockOperator l = fock_phi(a.basis, FiberVector::basis(t, u));
    out.matrix += l.matrix * a.matrix * SparseMatrix(l.matrix.adjoint());
    out.truncated = out.truncated || l.truncated;
  }
  out.matrix = prune(out.matrix, kPruneTolerance);
  return out;
}

FockOperator represent(std::shared_ptr<const FockBasis> basis, const WickElement& x) {
  std::map<std::pair<MonoidElement, BasisLabel>, FockOperator> cache;
  auto creation = [&](const MonoidElement& s, const BasisLabel& l) -> const FockOperator& {
    auto key = std::make_pair(s, l);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, fock_phi(basis, FiberVector::basis(s, l))).first;
    return it->second;
  };
  FockOperator out{basis, SparseMatrix(basis->size(), basis->size()), false};
  for (const auto& [k, c] : x.terms()) {
    const FockOperator& v = creation(k.left_grade, k.left);
    const FockOperator& w = creation(k.right_grade, k.right);
    out.matrix += c * (v.matrix * SparseMatrix(w.matrix.adjoint()));
    out.truncated = out.truncated || v.truncated || w.truncated;
  }
  out.matrix = prune(out.matrix, kPruneTolerance);
  return out;
}

FockOperator expectation_spatial(const FockOperator& a) {
  const FockBasis& basis = *a.basis;
  SparseMatrix m = a.matrix;
  m.prune([&basis](Eigen::Index i, Eigen::Index j, const Complex&) {
    return basis.states()[static_cast<std::size_t>(i)].grade == basis.states()[static_cast<std::size_t>(j)].grade;
  });
  return {a.basis, m, a.truncated};
}

unsigned creation_depth(const WickElement& x) {
  unsigned depth = 0;
  for (const auto& [k, c] : x.terms()) depth = std::max(depth, grade_degree(k.left_grade));
  return depth;
}

// ---------------------------------------------------------------------------
// Representations

SparseMatrix FockRepresentation::creation(const MonoidElement& s, const BasisLabel& label) const {
  return fock_phi(basis_, FiberVector::basis(s, label)).matrix;
}

SequenceRepresentation::SequenceRepresentation(ProductSystem sys, Family family, std::size_t n)
    : sys_(std::move(sys)), family_(family), n_(n) {
  if (sys_.style() != SystemStyle::word_graded) {
    throw std::invalid_argument("sequence models need a word-graded system");
  }
  if (n_ == 0) throw std::invalid_argument("sequence models need N >= 1");
  bool seen = false;
  for (const auto& d : sys_.generator_dims()) {
    if (d.trivial()) continue;
    if (seen && d.dim != d_) throw std::invalid_argument("sequence models need one common generator dimension");
    d_ = d.dim;
    seen = true;
  }
}

std::string SequenceRepresentation::name() const {
  return family_ == Family::cuntz ? "cuntz" : "toeplitz";
}

SparseMatrix SequenceRepresentation::isometry(std::uint32_t k) const {
  Triplets trips;
  const std::size_t shift = family_ == Family::cuntz ? 0 : 1;
  for (std::size_t col = 0; col < n_; ++col) {
    const std::size_t row = d_ * col + k + shift;
    if (row < n_) trips.emplace_back(row, col, 1.0);
  }
  return from_triplets(n_, trips);
}

SparseMatrix SequenceRepresentation::creation(const MonoidElement& s, const BasisLabel& label) const {
  if (!sys_.is_label(s, label)) throw std::invalid_argument("label does not belong to E_" + sys_.monoid().format(s));
  Triplets trips;
  const std::size_t shift = family_ == Family::cuntz ? 0 : 1;
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t row = col;
    bool inside = true;
    for (auto it = label.rbegin(); it != label.rend() && inside; ++it) {
      row = d_ * row + *it + shift;
      inside = row < n_;
    }
    if (inside) trips.emplace_back(row, col, 1.0);
  }
  return from_triplets(n_, trips);
}

std::vector<std::size_t> SequenceRepresentation::interior(unsigned depth) const {
  const std::size_t top = family_ == Family::cuntz ? d_ - 1 : d_;
  std::vector<std::size_t> out;
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t x = col;
    bool inside = true;
    for (unsigned k = 0; k < depth && inside; ++k) {
      x = d_ * x + top;
      inside = x < n_;
    }
    if (inside) out.push_back(col);
  }
  return out;
}

SparseMatrix phi(const Representation& rep, const FiberVector& x) {
  const auto n = static_cast<Eigen::Index>(rep.dimension());
  SparseMatrix out(n, n);
  for (const auto& [l, c] : x.coords()) out += c * rep.creation(x.grade(), l);
  return out;
}

SparseMatrix rho_unit(const Representation& rep, const MonoidElement& s) {
  const auto n = static_cast<Eigen::Index>(rep.dimension());
  SparseMatrix out(n, n);
  for (const auto& u : rep.system().basis(s)) {
    const SparseMatrix v = rep.creation(s, u);
    out += v * SparseMatrix(v.adjoint());
  }
  return prune(out, kPruneTolerance);
}

SparseMatrix rho(const Representation& rep, const FiberOperator& op) {
  if (op.is_identity()) return rho_unit(rep, op.grade());
  const auto n = static_cast<Eigen::Index>(rep.dimension());
  SparseMatrix out(n, n);
  for (const auto& [key, c] : op.entries()) {
    out += c * (rep.creation(op.grade(), key.first) * SparseMatrix(rep.creation(op.grade(), key.second).adjoint()));
  }
  return prune(out, kPruneTolerance);
}

SparseMatrix alpha(const Representation& rep, const MonoidElement& t, const SparseMatrix& a) {
  SparseMatrix out(a.rows(), a.cols());
  for (const auto& u : rep.system().basis(t)) {
    const SparseMatrix v = rep.creation(t, u);
    out += v * a * SparseMatrix(v.adjoint());
  }
  return prune(out, kPruneTolerance);
}

SparseMatrix represent(const Representation& rep, const WickElement& x) {
  const auto n = static_cast<Eigen::Index>(rep.dimension());
  SparseMatrix out(n, n);
  for (const auto& [k, c] : x.terms()) {
    out += c * (rep.creation(k.left_grade, k.left) * SparseMatrix(rep.creation(k.right_grade, k.right).adjoint()));
  }
  return prune(out, kPruneTolerance);
}

FaithfulnessResult faithfulness_condition(const Representation& rep, const std::vector<MonoidElement>& grades,
                                          const std::vector<std::size_t>& cols, bool finite_fibers_only) {
  FaithfulnessResult out;
  SparseMatrix product = identity_matrix(rep.dimension());
  const SparseMatrix one = identity_matrix(rep.dimension());
  for (const auto& s : grades) {
    if (finite_fibers_only && rep.system().dim(s).infinite) continue;
    product = prune(SparseMatrix(product * (one - rho_unit(rep, s))), kPruneTolerance);
    ++out.factors;
  }
  for (std::size_t c : cols) {
    const double norm = product.col(static_cast<Eigen::Index>(c)).norm();
    if (norm > kPruneTolerance) {
      out.holds = true;
      out.witness = c;
      out.witness_norm = norm;
      break;
    }
  }
  return out;
}

KillingWitness killing_witness_search(const Representation& rep, const MonoidElement& a,
                                      const std::vector<FiberVector>& f, const std::vector<MonoidElement>& c,
                                      double eps, const std::vector<MonoidElement>& search_grades,
                                      const std::vector<std::size_t>& cols) {
  KillingWitness out;
  const SparseMatrix one = identity_matrix(rep.dimension());
  SparseMatrix r = one;
  for (const auto& g : c) r = prune(SparseMatrix(r * (one - rho_unit(rep, g))), kPruneTolerance);

  auto achieved = [&](const SparseMatrix& q) {
    const SparseMatrix aq = alpha(rep, a, q);
    double worst = 0.0;
    for (const auto& x : f) worst = std::max(worst, restricted_norm(SparseMatrix(aq * phi(rep, x)), cols));
    return worst;
  };

  if (max_abs(columns(r, cols)) > kPruneTolerance) {
    out.kind = KillingWitness::Kind::projection;
    out.projection = r;
    out.achieved = achieved(r);
    out.candidates_tried = 1;
    return out;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : search_grades) {
    for (const auto& label : rep.system().basis(g)) {
      ++out.candidates_tried;
      const SparseMatrix y = rep.creation(g, label);
      const double value = achieved(SparseMatrix(y * SparseMatrix(y.adjoint())));
      best = std::min(best, value);
      if (value < eps) {
        out.kind = KillingWitness::Kind::vector;
        out.vector = FiberVector::basis(g, label);
        out.achieved = value;
        return out;
      }
    }
  }
  out.achieved = best;
  return out;
}

double aperiodic_residual(const Representation& rep, const FiberVector& v, const std::vector<MonoidElement>& d,
                          const std::vector<std::size_t>& cols) {
  const SparseMatrix pv = phi(rep, v);
  const SparseMatrix q = pv * SparseMatrix(pv.adjoint());
  double worst = 0.0;
  for (const auto& g : d) worst = std::max(worst, restricted_norm(SparseMatrix(q * alpha(rep, g, q)), cols));
  return worst;
}

std::optional<AperiodicWitness> aperiodic_search(const Representation& rep, const FiberVector& y,
                                                 const std::vector<MonoidElement>& d,
                                                 const std::vector<MonoidElement>& search_grades,
                                                 const std::vector<std::size_t>& cols, double eps) {
  for (const auto& g : search_grades) {
    for (const auto& label : rep.system().basis(g)) {
      const FiberVector z = FiberVector::basis(g, label);
      const double value = aperiodic_residual(rep, multiply_vectors(rep.system(), y, z), d, cols);
      if (value < eps) return AperiodicWitness{z, value};
    }
  }
  return std::nullopt;
}

}  // namespace prodsys
