#include "creig/csr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace creig {

CsrMatrix CsrMatrix::from_triplets(int nrows, int ncols, std::vector<Triplet> triplets) {
  if (nrows < 0 || ncols < 0)
    throw std::invalid_argument("CsrMatrix: negative dimension");
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw std::invalid_argument("CsrMatrix: triplet index out of range");

  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m;
  m.nrows_ = nrows;
  m.ncols_ = ncols;
  m.row_offsets_.assign(nrows + 1, 0);
  for (std::size_t i = 0; i < triplets.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col)
      sum += triplets[j++].value;
    m.col_indices_.push_back(triplets[i].col);
    m.values_.push_back(sum);
    ++m.row_offsets_[triplets[i].row + 1];
    i = j;
  }
  for (int r = 0; r < nrows; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

void CsrMatrix::multiply(const double* x, double* y) const {
  for (int r = 0; r < nrows_; ++r) {
    double sum = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      sum += values_[k] * x[col_indices_[k]];
    y[r] = sum;
  }
}

DofVector CsrMatrix::multiply(const DofVector& x) const {
  if (static_cast<int>(x.size()) != ncols_)
    throw std::invalid_argument("CsrMatrix::multiply: size mismatch");
  DofVector y(nrows_);
  multiply(x.data(), y.data());
  return y;
}

DofVector CsrMatrix::multiply_transposed(const DofVector& x) const {
  if (static_cast<int>(x.size()) != nrows_)
    throw std::invalid_argument("CsrMatrix::multiply_transposed: size mismatch");
  DofVector y(ncols_, 0.0);
  for (int r = 0; r < nrows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      y[col_indices_[k]] += values_[k] * x[r];
  return y;
}

double CsrMatrix::inner(const DofVector& x, const DofVector& y) const {
  if (static_cast<int>(x.size()) != nrows_ || static_cast<int>(y.size()) != ncols_)
    throw std::invalid_argument("CsrMatrix::inner: size mismatch");
  double sum = 0.0;
  for (int r = 0; r < nrows_; ++r) {
    double row = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      row += values_[k] * y[col_indices_[k]];
    sum += x[r] * row;
  }
  return sum;
}

double CsrMatrix::symmetry_defect() const {
  double defect = 0.0;
  for (int r = 0; r < nrows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      const int c = col_indices_[k];
      double transposed = 0.0;
      for (int k2 = row_offsets_[c]; k2 < row_offsets_[c + 1]; ++k2)
        if (col_indices_[k2] == r) { transposed = values_[k2]; break; }
      defect = std::max(defect, std::abs(values_[k] - transposed));
    }
  return defect;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(nrows_, 0.0);
  for (int r = 0; r < nrows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      if (col_indices_[k] == r) d[r] = values_[k];
  return d;
}

void CsrMatrix::write_matrix_market(std::ostream& out) const {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << nrows_ << ' ' << ncols_ << ' ' << nnz() << '\n';
  out.precision(17);
  for (int r = 0; r < nrows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      out << r + 1 << ' ' << col_indices_[k] + 1 << ' ' << values_[k] << '\n';
}

double dot(const DofVector& x, const DofVector& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double norm2(const DofVector& x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, const DofVector& x, DofVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, DofVector& x) {
  for (double& v : x) v *= alpha;
}

}  // namespace creig
