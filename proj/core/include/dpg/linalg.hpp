#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dpg {

/// Raised when a linear solve fails: non-convergence, loss of positive
/// definiteness, or numerical singularity.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted and unique per row.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_offsets_(rows + 1, 0) {}

  /// Duplicate entries are summed.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const Eigen::MatrixXd& dense, double drop_tol = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  /// Entry (i, j), zero if not stored.
  double coeff(std::size_t i, std::size_t j) const;

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;
  Eigen::VectorXd diagonal() const;
  SparseMatrix transpose() const;
  Eigen::MatrixXd to_dense() const;
  double max_abs() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// max_ij |M_ij - M_ji|; M must be square.
double max_asymmetry(const SparseMatrix& m);

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Inverse diagonal of an SPD matrix, built once and reused across solves.
struct JacobiPreconditioner {
  explicit JacobiPreconditioner(const SparseMatrix& matrix);
  Eigen::VectorXd inv_diagonal;
};

/// Jacobi-preconditioned conjugate gradients. Stops when
/// ||S x - rhs|| <= rel_tol ||rhs||; max_iter <= 0 selects 10 n. Throws
/// SolverError on non-convergence or nonpositive curvature p^T S p <= 0.
CgResult cg_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, const JacobiPreconditioner& precond,
                  double rel_tol = 1e-12, int max_iter = 0, const Eigen::VectorXd* initial_guess = nullptr);

CgResult cg_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, double rel_tol = 1e-12,
                  int max_iter = 0);

/// Dense LU with partial pivoting. Throws SolverError when a pivot falls
/// below 1e-14 ||M||_max.
Eigen::VectorXd lu_solve(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs);

/// Sparse LU (COLAMD ordering, partial pivoting). Throws SolverError when the
/// factorization breaks down or the residual check fails.
Eigen::VectorXd lu_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs);

} // namespace dpg
