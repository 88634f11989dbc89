#ifndef CREIG_EIGENSOLVER_HPP
#define CREIG_EIGENSOLVER_HPP

#include "creig/csr.hpp"
#include "creig/dense.hpp"

namespace creig {

/// Ascending eigenvalues with a_h-orthonormal coefficient vectors
/// (one column per pair).
struct EigenpairSet {
  std::vector<double> eigenvalues;
  DenseMatrix vectors;

  int count() const { return static_cast<int>(eigenvalues.size()); }
  double reciprocal(int i) const { return 1.0 / eigenvalues[i]; }
};

/// Makes the columns a_h-orthonormal by two-pass modified Gram-Schmidt in
/// the A-inner product. Columns whose post-projection norm falls below
/// drop_tol times their original norm are removed. Throws SolverError when
/// every column is dropped.
DenseMatrix ah_orthonormalize(const DenseMatrix& vectors, const CsrMatrix& a,
                              double drop_tol);

/// Deterministic sign convention: largest-magnitude coefficient positive.
void fix_sign(DofVector& v);

struct ReferenceOptions {
  int buffer = 3;       // extra pairs carried so gap quantities are available
  int max_outer = 120;
  unsigned seed = 20240817;
  int threads = 0;      // 0 or 1: single-threaded deterministic mode
};

/// The smallest `count` eigenpairs of A x = lambda M x (plus buffer pairs),
/// a_h-orthonormal, by block inverse iteration with Rayleigh-Ritz over the
/// three-term subspace [X, A^{-1}MX, X_prev]. Inner solves use PCG with a
/// Jacobi preconditioner. Residual tolerance ||Au - lambda Mu|| <= tol ||Au||
/// is enforced on the first `count` pairs; buffer pairs may be looser.
EigenpairSet reference_eigensolve(const CsrMatrix& a, const CsrMatrix& m, int count,
                                  double tol, const ReferenceOptions& opts = {});

}  // namespace creig

#endif
