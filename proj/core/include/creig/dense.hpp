#ifndef CREIG_DENSE_HPP
#define CREIG_DENSE_HPP

#include <vector>

#include "creig/csr.hpp"

namespace creig {

/// Column-major dense matrix. Columns double as coefficient vectors of
/// eigenpair sets and subspace bases.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static DenseMatrix identity(int n);
  static DenseMatrix from_csr(const CsrMatrix& a);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * rows_ + i]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * rows_ + i]; }

  double* col(int j) { return data_.data() + static_cast<std::size_t>(j) * rows_; }
  const double* col(int j) const { return data_.data() + static_cast<std::size_t>(j) * rows_; }

  DofVector column(int j) const;
  void set_column(int j, const DofVector& v);
  void append_column(const DofVector& v);

  DofVector multiply(const DofVector& x) const;  // A x

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// In-place lower Cholesky factor of an SPD matrix. Throws SolverError if a
/// pivot is nonpositive.
DenseMatrix cholesky(const DenseMatrix& m);

/// Solves L y = b (forward) or L^T y = b (backward) for a lower factor L.
DofVector solve_lower(const DenseMatrix& l, const DofVector& b);
DofVector solve_lower_transposed(const DenseMatrix& l, const DofVector& b);

struct DenseEigenResult {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix vectors;              // M-orthonormal columns
};

/// Full spectrum of the symmetric pencil A x = lambda M x with M SPD.
/// Reduction: symmetric diagonal scaling, Cholesky of M, transformation to a
/// standard symmetric problem, Householder tridiagonalization, implicit-shift
/// QL with eigenvector accumulation.
DenseEigenResult dense_gevp(const DenseMatrix& a, const DenseMatrix& m);

/// Standard symmetric eigenproblem (all pairs, ascending).
DenseEigenResult dense_symmetric_eigen(const DenseMatrix& a);

}  // namespace creig

#endif
