#include "creig/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "creig/pcg.hpp"

namespace creig {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_csr(const CsrMatrix& a) {
  DenseMatrix m(a.rows(), a.cols());
  const auto& offsets = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  for (int r = 0; r < a.rows(); ++r)
    for (int k = offsets[r]; k < offsets[r + 1]; ++k) m(r, cols[k]) = vals[k];
  return m;
}

DofVector DenseMatrix::column(int j) const {
  return DofVector(col(j), col(j) + rows_);
}

void DenseMatrix::set_column(int j, const DofVector& v) {
  std::copy(v.begin(), v.end(), col(j));
}

void DenseMatrix::append_column(const DofVector& v) {
  if (rows_ == 0) rows_ = static_cast<int>(v.size());
  if (static_cast<int>(v.size()) != rows_)
    throw std::invalid_argument("DenseMatrix::append_column: size mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++cols_;
}

DofVector DenseMatrix::multiply(const DofVector& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
  DofVector y(rows_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    const double* cj = col(j);
    const double xj = x[j];
    for (int i = 0; i < rows_; ++i) y[i] += cj[i] * xj;
  }
  return y;
}

DenseMatrix cholesky(const DenseMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("cholesky: matrix not square");
  DenseMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (diag <= 0.0) throw SolverError("cholesky: matrix not positive definite");
    l(j, j) = std::sqrt(diag);
    for (int i = j + 1; i < n; ++i) {
      double sum = m(i, j);
      for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      l(i, j) = sum / l(j, j);
    }
  }
  return l;
}

DofVector solve_lower(const DenseMatrix& l, const DofVector& b) {
  const int n = l.rows();
  DofVector y(b);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
    y[i] /= l(i, i);
  }
  return y;
}

DofVector solve_lower_transposed(const DenseMatrix& l, const DofVector& b) {
  const int n = l.rows();
  DofVector y(b);
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
    y[i] /= l(i, i);
  }
  return y;
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulation of the orthogonal transformation in z.
void tridiagonalize(DenseMatrix& z, std::vector<double>& d, std::vector<double>& e) {
  const int n = z.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = z(i, j);
          const double gj = e[j] - hh * f;
          e[j] = gj;
          for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + gj * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (int j = 0; j < i; ++j) {
        double g = 0.0;
        for (int k = 0; k < i; ++k) g += z(i, k) * z(k, j);
        for (int k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (int j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
  }
}

// Implicit-shift QL on a symmetric tridiagonal matrix, rotations accumulated
// into the columns of z.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, DenseMatrix& z) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw SolverError("tridiagonal_ql: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < z.rows(); ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

DenseEigenResult sort_pairs(std::vector<double> d, DenseMatrix z) {
  const int n = static_cast<int>(d.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&d](int a, int b) { return d[a] < d[b]; });

  DenseEigenResult result;
  result.eigenvalues.resize(n);
  result.vectors = DenseMatrix(z.rows(), n);
  for (int j = 0; j < n; ++j) {
    result.eigenvalues[j] = d[order[j]];
    for (int i = 0; i < z.rows(); ++i) result.vectors(i, j) = z(i, order[j]);
  }
  return result;
}

}  // namespace

DenseEigenResult dense_symmetric_eigen(const DenseMatrix& a) {
  DenseMatrix z = a;
  std::vector<double> d, e;
  tridiagonalize(z, d, e);
  tridiagonal_ql(d, e, z);
  return sort_pairs(std::move(d), std::move(z));
}

DenseEigenResult dense_gevp(const DenseMatrix& a, const DenseMatrix& m) {
  const int n = a.rows();
  if (a.cols() != n || m.rows() != n || m.cols() != n)
    throw std::invalid_argument("dense_gevp: dimension mismatch");
  if (n == 0) return {};

  // Symmetric diagonal scaling keeps the Cholesky factor well conditioned
  // when mass entries differ in magnitude between basis blocks.
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    if (m(i, i) <= 0.0) throw SolverError("dense_gevp: mass diagonal not positive");
    s[i] = 1.0 / std::sqrt(m(i, i));
  }
  DenseMatrix as(n, n), ms(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      as(i, j) = s[i] * a(i, j) * s[j];
      ms(i, j) = s[i] * m(i, j) * s[j];
    }

  const DenseMatrix l = cholesky(ms);

  // C = L^{-1} As L^{-T}
  DenseMatrix y(n, n);
  for (int j = 0; j < n; ++j) y.set_column(j, solve_lower(l, as.column(j)));
  DenseMatrix c(n, n);
  for (int j = 0; j < n; ++j) {
    DofVector row(n);
    for (int k = 0; k < n; ++k) row[k] = y(j, k);
    c.set_column(j, solve_lower(l, row));
  }

  std::vector<double> d, e;
  tridiagonalize(c, d, e);
  tridiagonal_ql(d, e, c);
  DenseEigenResult result = sort_pairs(std::move(d), std::move(c));

  // Back-transform to pencil eigenvectors: x = S L^{-T} z, M-orthonormal.
  for (int j = 0; j < n; ++j) {
    DofVector x = solve_lower_transposed(l, result.vectors.column(j));
    for (int i = 0; i < n; ++i) x[i] *= s[i];
    result.vectors.set_column(j, x);
  }
  return result;
}

}  // namespace creig
