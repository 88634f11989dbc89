#ifndef CREIG_AUGMENTED_HPP
#define CREIG_AUGMENTED_HPP

#include <vector>

#include "creig/analysis.hpp"
#include "creig/csr.hpp"
#include "creig/dense.hpp"
#include "creig/eigensolver.hpp"
#include "creig/mesh.hpp"
#include "creig/transfer.hpp"

namespace creig {

/// Conditioned basis of the augmented space: embedded coarse functions
/// joined with the current fine-space iterates.
struct AugmentedBasis {
  DenseMatrix columns;  // a_h-orthonormal after conditioning
  int coarse_dim = 0;   // coarse columns that survived
  int iterate_dim = 0;  // iterate columns that survived
};

/// Concatenates the embedded coarse basis with the iterate columns and
/// conditions the result by Gram-Schmidt in the broken energy inner product.
/// Iterate columns already dependent on the coarse block are dropped;
/// iterate_dim records how many survived (0 means the iteration cannot
/// proceed; the algorithm drivers treat that as a degenerate basis).
AugmentedBasis build_augmented_basis(const EmbeddingMatrix& p,
                                     const DenseMatrix& iterates,
                                     const CsrMatrix& a, double drop_tol = 1e-10);

/// Rayleigh-Ritz on the augmented space: solves the reduced pencil
/// (B^T A B, B^T M B) densely and lifts the k smallest pairs to fine DOFs,
/// normalized to a_h(u,u) = 1.
EigenpairSet solve_augmented_gevp(const CsrMatrix& a, const CsrMatrix& m,
                                  const AugmentedBasis& basis, int k);

/// One fine-space linear solve per pair: u_hat_i = A^{-1}(lambda_i M u_i),
/// by PCG to the given tolerance. Solves for distinct i are independent and
/// run on `threads` workers (0 or 1 = serial). Non-convergence is rethrown
/// with the pair index attached. An optional preconditioner is shared across
/// solves; null selects Jacobi.
DenseMatrix expansion_solve(const CsrMatrix& a, const CsrMatrix& m,
                            const EigenpairSet& pairs, double tol,
                            int threads = 0,
                            const Preconditioner* preconditioner = nullptr);

/// Index (0-based) of the pair whose a_h-normalized vector has the largest
/// |a_h(u_j, direction)|; ties go to the smallest index. Rejects the zero
/// direction.
int select_largest_component(const EigenpairSet& pairs, const DofVector& direction,
                             const CsrMatrix& a);

/// For each reference vector, the a_h- and b-norm distance to its
/// a_h-orthogonal projection onto span(approx). Throws SolverError if the
/// approx columns are numerically dependent.
std::vector<ErrorPair> spectral_projection_error(const EigenpairSet& reference,
                                                 const DenseMatrix& approx,
                                                 const CsrMatrix& a,
                                                 const CsrMatrix& m);

struct AlgorithmOptions {
  int max_iters = 20;
  double tol = 0.0;          // stop once every tracked err_a <= tol; 0 = run all
  double linear_tol = 1e-12; // fine-space PCG tolerance
  double drop_tol = 1e-10;   // basis conditioning
  int threads = 0;           // expansion solves; 0 = serial deterministic
};

/// Trajectory of one augmented-subspace run. Outer index of `eigenvalues`
/// is the iteration; err_a/err_b are indexed [pair][iteration].
struct IterationReport {
  std::vector<std::vector<double>> eigenvalues;
  std::vector<std::vector<double>> err_a;
  std::vector<std::vector<double>> err_b;
  std::vector<double> rate_a;  // fitted contraction per tracked pair
  std::vector<double> rate_b;
  DenseMatrix final_vectors;
  std::vector<long> pcg_iterations;  // total inner iterations per outer step
  int iterations = 0;
  bool selection_switched = false;   // single-pair runs only
};

/// Augmented subspace iteration for the k smallest eigenpairs. Initial
/// iterates are the embedded eigenvectors of the coarse conforming pencil.
/// Errors are spectral-projection distances of the reference vectors to the
/// span of the current iterates.
IterationReport run_algorithm_k(const TriMesh& coarse, const TriMesh& fine, int k,
                                const EigenpairSet& reference,
                                const AlgorithmOptions& opts = {});

/// Single-pair variant: carries one iterate and picks, after each reduced
/// solve, the Ritz pair with the largest component along the expansion
/// direction. `target_index` is 0-based into the reference set.
IterationReport run_algorithm_one(const TriMesh& coarse, const TriMesh& fine,
                                  int target_index, const EigenpairSet& reference,
                                  const AlgorithmOptions& opts = {});

}  // namespace creig

#endif
