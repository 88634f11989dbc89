#ifndef CREIG_CSR_HPP
#define CREIG_CSR_HPP

#include <iosfwd>
#include <vector>

namespace creig {

using DofVector = std::vector<double>;

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Symmetric sparse matrix in compressed-row form. Column indices are
/// strictly increasing within each row; duplicates are summed on build.
class CsrMatrix {
public:
  CsrMatrix() = default;
  static CsrMatrix from_triplets(int nrows, int ncols, std::vector<Triplet> triplets);

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  /// y = A x
  void multiply(const double* x, double* y) const;
  DofVector multiply(const DofVector& x) const;

  /// y = A^T x
  DofVector multiply_transposed(const DofVector& x) const;

  /// x^T A y
  double inner(const DofVector& x, const DofVector& y) const;

  double symmetry_defect() const;  // max |a_ij - a_ji|
  std::vector<double> diagonal() const;

  /// MatrixMarket coordinate dump (general, 1-based).
  void write_matrix_market(std::ostream& out) const;

private:
  int nrows_ = 0;
  int ncols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

// blas-ish helpers used throughout the solvers
double dot(const DofVector& x, const DofVector& y);
double norm2(const DofVector& x);
void axpy(double alpha, const DofVector& x, DofVector& y);  // y += alpha x
void scale(double alpha, DofVector& x);

}  // namespace creig

#endif
