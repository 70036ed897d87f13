#include "dpg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace dpg {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t current_row = 0;
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw std::out_of_range("SparseMatrix::from_triplets: entry outside matrix shape");
    }
    while (current_row < t.row) {
      m.row_offsets_[++current_row] = m.values_.size();
    }
    if (m.values_.size() > m.row_offsets_[current_row] && m.col_indices_.back() == t.col) {
      m.values_.back() += t.value;
    } else {
      m.col_indices_.push_back(t.col);
      m.values_.push_back(t.value);
    }
  }
  while (current_row < rows) {
    m.row_offsets_[++current_row] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXd& dense, double drop_tol) {
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      if (std::abs(dense(i, j)) > drop_tol) {
        t.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), dense(i, j)});
      }
    }
  }
  return from_triplets(static_cast<std::size_t>(dense.rows()), static_cast<std::size_t>(dense.cols()), std::move(t));
}

double SparseMatrix::coeff(std::size_t i, std::size_t j) const {
  const auto begin = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_.at(i));
  const auto end = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_.at(i + 1));
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? values_[static_cast<std::size_t>(it - col_indices_.begin())] : 0.0;
}

Eigen::VectorXd SparseMatrix::operator*(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != cols_) {
    throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows_));
  for (std::size_t i = 0; i < rows_; ++i) {
    double sum = 0.0;
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      sum += values_[p] * x[static_cast<Eigen::Index>(col_indices_[p])];
    }
    y[static_cast<Eigen::Index>(i)] = sum;
  }
  return y;
}

Eigen::VectorXd SparseMatrix::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(std::min(rows_, cols_)));
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      t.push_back({col_indices_[p], i, values_[p]});
    }
  }
  return from_triplets(cols_, rows_, std::move(t));
}

Eigen::MatrixXd SparseMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col_indices_[p])) = values_[p];
    }
  }
  return d;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double max_asymmetry(const SparseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("max_asymmetry: matrix is not square");
  }
  double worst = 0.0;
  const auto& offsets = m.row_offsets();
  const auto& cols = m.col_indices();
  const auto& vals = m.values();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p) {
      worst = std::max(worst, std::abs(vals[p] - m.coeff(cols[p], i)));
    }
  }
  return worst;
}

JacobiPreconditioner::JacobiPreconditioner(const SparseMatrix& matrix) {
  const Eigen::VectorXd d = matrix.diagonal();
  inv_diagonal.resize(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) {
      throw SolverError("cg: nonpositive diagonal entry " + std::to_string(d[i]) + " at row " + std::to_string(i) +
                        " (matrix is not positive definite)");
    }
    inv_diagonal[i] = 1.0 / d[i];
  }
}

CgResult cg_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, const JacobiPreconditioner& precond,
                  double rel_tol, int max_iter, const Eigen::VectorXd* initial_guess) {
  const auto n = static_cast<Eigen::Index>(matrix.rows());
  if (matrix.rows() != matrix.cols() || rhs.size() != n || precond.inv_diagonal.size() != n) {
    throw std::invalid_argument("cg: dimension mismatch");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("cg: rel_tol must lie in (0, 1)");
  }
  if (max_iter <= 0) {
    max_iter = static_cast<int>(std::max<Eigen::Index>(10 * n, 1));
  }

  CgResult result;
  result.x = initial_guess ? *initial_guess : Eigen::VectorXd::Zero(n);
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    result.x.setZero();
    return result;
  }
  Eigen::VectorXd r = rhs - matrix * result.x;
  Eigen::VectorXd z = precond.inv_diagonal.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  double res = r.norm();
  const double target = rel_tol * rhs_norm;
  int it = 0;
  while (res > target) {
    if (it >= max_iter) {
      std::ostringstream msg;
      msg << "cg: no convergence after " << it << " iterations (relative residual " << res / rhs_norm << ")";
      throw SolverError(msg.str());
    }
    const Eigen::VectorXd Sp = matrix * p;
    const double curvature = p.dot(Sp);
    if (!(curvature > 0.0)) {
      throw SolverError("cg: nonpositive curvature p^T S p = " + std::to_string(curvature) + " at iteration " +
                        std::to_string(it) + " (matrix is not positive definite)");
    }
    const double alpha = rz / curvature;
    result.x += alpha * p;
    r -= alpha * Sp;
    ++it;
    // Refresh the residual periodically against drift in the recurrence.
    if (it % 50 == 0) r = rhs - matrix * result.x;
    res = r.norm();
    z = precond.inv_diagonal.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  result.iterations = it;
  result.relative_residual = res / rhs_norm;
  return result;
}

CgResult cg_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, double rel_tol, int max_iter) {
  return cg_solve(matrix, rhs, JacobiPreconditioner(matrix), rel_tol, max_iter);
}

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs) {
  const Eigen::Index n = matrix.rows();
  if (matrix.cols() != n || rhs.size() != n) {
    throw std::invalid_argument("lu_solve: matrix must be square and match rhs");
  }
  Eigen::MatrixXd lu = matrix;
  Eigen::VectorXd x = rhs;
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double pivot_floor = 1e-14 * scale;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    lu.col(col).tail(n - col).cwiseAbs().maxCoeff(&pivot);
    pivot += col;
    if (!(std::abs(lu(pivot, col)) > pivot_floor)) {
      throw SolverError("lu_solve: matrix is singular to working precision (column " + std::to_string(col) + ")");
    }
    if (pivot != col) {
      lu.row(pivot).swap(lu.row(col));
      std::swap(x[pivot], x[col]);
    }
    for (Eigen::Index row = col + 1; row < n; ++row) {
      const double factor = lu(row, col) / lu(col, col);
      if (factor == 0.0) continue;
      lu.row(row).tail(n - col) -= factor * lu.row(col).tail(n - col);
      x[row] -= factor * x[col];
    }
  }
  for (Eigen::Index row = n - 1; row >= 0; --row) {
    x[row] = (x[row] - lu.row(row).tail(n - row - 1).dot(x.tail(n - row - 1))) / lu(row, row);
  }
  return x;
}

Eigen::VectorXd lu_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs) {
  const auto n = static_cast<Eigen::Index>(matrix.rows());
  if (matrix.rows() != matrix.cols() || rhs.size() != n) {
    throw std::invalid_argument("lu_solve: matrix must be square and match rhs");
  }
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(matrix.nonzeros());
  const auto& offsets = matrix.row_offsets();
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p) {
      entries.emplace_back(static_cast<int>(i), static_cast<int>(matrix.col_indices()[p]), matrix.values()[p]);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.setPivotThreshold(1.0);
  lu.compute(m);
  if (lu.info() != Eigen::Success) {
    throw SolverError("lu_solve: sparse factorization failed (" + lu.lastErrorMessage() + ")");
  }
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw SolverError("lu_solve: sparse solve failed");
  }
  const double scale = matrix.max_abs();
  const double residual = (matrix * x - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * (scale * x.cwiseAbs().maxCoeff() + rhs.cwiseAbs().maxCoeff())) {
    throw SolverError("lu_solve: residual check failed (matrix singular to working precision?)");
  }
  return x;
}

} // namespace dpg
