#include "prodsys/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace prodsys {

namespace {

template <class Matrix>
NormEstimate power_iteration(const Matrix& a, const NormOptions& opts) {
  NormEstimate out;
  const Eigen::Index n = a.cols();
  if (n == 0 || a.rows() == 0) {
    out.converged = true;
    return out;
  }
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {gauss(rng), gauss(rng)};
  v.normalize();

  double lambda = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::VectorXcd av = a * v;
    const Eigen::VectorXcd w = a.adjoint() * av;
    lambda = av.squaredNorm();
    out.iterations = it;
    const double wn = w.norm();
    if (wn == 0.0) {
      out.converged = true;
      break;
    }
    if ((w - lambda * v).norm() <= opts.tolerance * lambda) {
      out.converged = true;
      break;
    }
    v = w / wn;
  }
  out.value = std::sqrt(std::max(lambda, 0.0));
  return out;
}

}  // namespace

NormEstimate operator_norm(const SparseMatrix& a, const NormOptions& opts) { return power_iteration(a, opts); }

NormEstimate operator_norm(const Eigen::MatrixXcd& a, const NormOptions& opts) {
  return power_iteration(a, opts);
}

double svd_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

SparseMatrix columns(const SparseMatrix& a, const std::vector<std::size_t>& cols) {
  SparseMatrix out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  std::vector<Eigen::Triplet<std::complex<double>>> trips;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    for (SparseMatrix::InnerIterator it(a, static_cast<Eigen::Index>(cols[k])); it; ++it) {
      trips.emplace_back(it.row(), static_cast<Eigen::Index>(k), it.value());
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

double max_deviation(const SparseMatrix& a, const SparseMatrix& b, const std::vector<std::size_t>& cols) {
  const SparseMatrix diff = columns(a, cols) - columns(b, cols);
  return max_abs(diff);
}

double max_abs(const SparseMatrix& a) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

SparseMatrix identity_matrix(std::size_t n) {
  SparseMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.setIdentity();
  return out;
}

SparseMatrix prune(SparseMatrix a, double tol) {
  a.prune([tol](Eigen::Index, Eigen::Index, const std::complex<double>& v) { return std::abs(v) >= tol; });
  return a;
}

}  // namespace prodsys
