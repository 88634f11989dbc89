#include "creig/eigensolver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "creig/pcg.hpp"

namespace creig {

void fix_sign(DofVector& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (!v.empty() && v[imax] < 0.0) scale(-1.0, v);
}

DenseMatrix ah_orthonormalize(const DenseMatrix& vectors, const CsrMatrix& a,
                              double drop_tol) {
  DenseMatrix basis(vectors.rows(), 0);
  std::vector<DofVector> a_basis;  // A times each kept column

  for (int j = 0; j < vectors.cols(); ++j) {
    DofVector v = vectors.column(j);
    const double norm0 = std::sqrt(a.inner(v, v));
    if (norm0 <= 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < basis.cols(); ++k) {
        const double proj = dot(a_basis[k], v);
        const double* bk = basis.col(k);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * bk[i];
      }
    const double norm1 = std::sqrt(std::max(a.inner(v, v), 0.0));
    if (norm1 < drop_tol * norm0) continue;
    scale(1.0 / norm1, v);
    basis.append_column(v);
    a_basis.push_back(a.multiply(v));
  }
  if (basis.cols() == 0)
    throw SolverError("ah_orthonormalize: all columns dropped, empty basis");
  return basis;
}

namespace {

void parallel_columns(int count, int threads, const std::function<void(int)>& work) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int nthreads = std::min(threads, count);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

EigenpairSet reference_eigensolve(const CsrMatrix& a, const CsrMatrix& m, int count,
                                  double tol, const ReferenceOptions& opts) {
  if (count < 1) throw std::invalid_argument("reference_eigensolve: count must be >= 1");
  const int n = a.rows();
  const int block = std::min(count + std::max(opts.buffer, 0), n);
  if (count > n)
    throw std::invalid_argument("reference_eigensolve: count exceeds problem size");

  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  DenseMatrix x(n, block);
  for (int j = 0; j < block; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = uniform(rng);
  x = ah_orthonormalize(x, a, 1e-12);

  JacobiPreconditioner jacobi(a);
  std::vector<double> lambdas(block, 0.0);
  std::vector<double> relres(block, 1.0);
  DenseMatrix x_prev;

  const int pcg_cap = 20 * n + 1000;
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    // Ritz values and residuals of the current block.
    bool done = true;
    for (int j = 0; j < block; ++j) {
      DofVector xj = x.column(j);
      DofVector ax = a.multiply(xj);
      DofVector mx = m.multiply(xj);
      lambdas[j] = dot(xj, ax) / dot(xj, mx);
      DofVector r = ax;
      axpy(-lambdas[j], mx, r);
      relres[j] = norm2(r) / norm2(ax);
      if (j < count && relres[j] > tol) done = false;
    }
    if (done && outer > 0) break;
    if (outer == opts.max_outer - 1) {
      std::ostringstream msg;
      msg << "reference_eigensolve: no convergence after " << opts.max_outer
          << " iterations; attained residuals:";
      for (int j = 0; j < count; ++j) msg << ' ' << relres[j];
      throw SolverError(msg.str());
    }

    // Correction directions w = x - lambda A^{-1} M x: same span as adding
    // A^{-1} M x itself, but formed as an explicit difference so the basis
    // stays well conditioned once the iterates converge.
    DenseMatrix w(n, block);
    parallel_columns(block, opts.threads, [&](int j) {
      const double inner_tol =
          std::clamp(0.02 * relres[j], std::max(0.05 * tol, 1e-14), 1e-2);
      DofVector rhs = m.multiply(x.column(j));
      PcgResult sol = pcg_solve(a, rhs, inner_tol, pcg_cap, &jacobi);
      DofVector wj = x.column(j);
      axpy(-lambdas[j], sol.x, wj);
      w.set_column(j, wj);
    });

    DenseMatrix subspace(n, 0);
    for (int j = 0; j < block; ++j) subspace.append_column(x.column(j));
    for (int j = 0; j < block; ++j) subspace.append_column(w.column(j));
    if (x_prev.cols() > 0)
      for (int j = 0; j < block; ++j) {
        DofVector dj = x.column(j);
        axpy(-1.0, x_prev.column(j), dj);
        subspace.append_column(dj);
      }
    DenseMatrix basis = ah_orthonormalize(subspace, a, 1e-8);

    const int dim = basis.cols();
    DenseMatrix a_red(dim, dim), m_red(dim, dim);
    std::vector<DofVector> a_cols(dim), m_cols(dim);
    for (int j = 0; j < dim; ++j) {
      a_cols[j] = a.multiply(basis.column(j));
      m_cols[j] = m.multiply(basis.column(j));
    }
    for (int j = 0; j < dim; ++j) {
      DofVector bj = basis.column(j);
      for (int i = 0; i <= j; ++i) {
        DofVector bi = basis.column(i);
        a_red(i, j) = a_red(j, i) = dot(bi, a_cols[j]);
        m_red(i, j) = m_red(j, i) = dot(bi, m_cols[j]);
      }
    }
    DenseEigenResult reduced = dense_gevp(a_red, m_red);

    x_prev = x;
    for (int j = 0; j < block; ++j) {
      DofVector lifted = basis.multiply(reduced.vectors.column(j));
      // M-orthonormal reduced vectors lift to a_h(x,x) = lambda
      scale(1.0 / std::sqrt(reduced.eigenvalues[j]), lifted);
      fix_sign(lifted);
      x.set_column(j, lifted);
    }
  }

  EigenpairSet result;
  result.vectors = DenseMatrix(n, block);
  result.eigenvalues.resize(block);
  for (int j = 0; j < block; ++j) {
    result.eigenvalues[j] = lambdas[j];
    DofVector xj = x.column(j);
    fix_sign(xj);
    result.vectors.set_column(j, xj);
  }
  return result;
}

}  // namespace creig
