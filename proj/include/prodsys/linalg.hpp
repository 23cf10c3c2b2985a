#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace prodsys {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

struct NormOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
  std::uint64_t seed = 0x70c4u;
};

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// ‖A‖ by power iteration on A*A from a seeded random start. Stops when
/// ‖A*Av − λv‖ ≤ tolerance·λ.
NormEstimate operator_norm(const SparseMatrix& a, const NormOptions& opts = {});
NormEstimate operator_norm(const Eigen::MatrixXcd& a, const NormOptions& opts = {});

/// Largest singular value via a dense SVD; used where an independent route
/// to the norm is wanted.
double svd_norm(const Eigen::MatrixXcd& a);

/// Restriction to the given columns (all rows kept).
SparseMatrix columns(const SparseMatrix& a, const std::vector<std::size_t>& cols);
/// max |a_ij − b_ij| over the given columns.
double max_deviation(const SparseMatrix& a, const SparseMatrix& b, const std::vector<std::size_t>& cols);
double max_abs(const SparseMatrix& a);

SparseMatrix identity_matrix(std::size_t n);
SparseMatrix prune(SparseMatrix a, double tol);

}  // namespace prodsys
