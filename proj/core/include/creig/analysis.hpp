#ifndef CREIG_ANALYSIS_HPP
#define CREIG_ANALYSIS_HPP

#include <vector>

#include "creig/assembly.hpp"
#include "creig/csr.hpp"
#include "creig/eigensolver.hpp"
#include "creig/mesh.hpp"
#include "creig/transfer.hpp"

namespace creig {

/// Exact Dirichlet-Laplace eigenpair of the unit square:
/// u(x,y) = c sin(m pi x) sin(n pi y) with lambda = (m^2+n^2) pi^2 and
/// c = 2/sqrt(lambda), so that the energy norm of u is 1.
struct ContinuumEigenpair {
  int m = 1;
  int n = 1;
  double lambda = 0.0;
  double amplitude = 0.0;

  double value(double x, double y) const;
  Point gradient(double x, double y) const;
  double b_norm() const;  // 1/sqrt(lambda)
};

/// The `count` smallest exact eigenpairs, sorted by eigenvalue with ties
/// broken (m,n)-lexicographically; degenerate pairs are both present.
std::vector<ContinuumEigenpair> exact_eigenpairs_square(int count);

struct ErrorPair {
  double err_a = 0.0;
  double err_b = 0.0;
};

/// Finite element projection of the exact eigenfunction: solves
/// A x = lambda * load(u) with PCG. The load uses the degree-4 rule.
DofVector fe_projection(const TriMesh& mesh, const CsrMatrix& a,
                        const ContinuumEigenpair& pair, double tol);

/// Broken energy and L2 errors between the exact eigenfunction and the CR
/// function with the given coefficients, via per-triangle quadrature.
ErrorPair continuum_error(const TriMesh& mesh, const DofVector& coeffs,
                          const ContinuumEigenpair& pair, int quad_degree = 4);

/// Broken a_h inner product of the exact eigenfunction with a CR function.
double ah_inner_exact(const TriMesh& mesh, const ContinuumEigenpair& pair,
                      const DofVector& coeffs, int quad_degree = 4);

/// Checks, for every reference pair j, the identity
/// (lambda_j,h - lambda) b(P_h u, u_j,h) = lambda b(u - P_h u, u_j,h),
/// realized with the quadrature load on both sides. Returns the worst
/// absolute deviation over j, relative to the largest term magnitude (some
/// modes zero out both sides by symmetry, so per-j ratios are meaningless).
double verify_strang_identity(const TriMesh& mesh, const CsrMatrix& a,
                              const CsrMatrix& m, const ContinuumEigenpair& pair,
                              const EigenpairSet& reference, double solver_tol);

/// Reciprocal eigenvalue gaps for one target.
struct GapData {
  int target = 0;              // 1-based index into the target list
  double mu = 0.0;             // 1/lambda of the target
  double mu_bar = 0.0;         // 1/lambda_{i,h}
  double delta_k_i = 0.0;      // min_{k<j} |1/lambda_j,h - 1/lambda_i|
  int realized_j = 0;          // minimizing j (1-based)
  double delta_lambda = 0.0;   // min over j outside the degenerate cluster
  bool degenerate_cluster = false;
};

/// Gap quantities for each target; requires the reference to carry at least
/// k+1 eigenvalues. For a target inside a degenerate cluster the per-vector
/// gap is zero and delta_lambda falls back to the gap outside the cluster.
std::vector<GapData> gap_data(const EigenpairSet& reference,
                              const std::vector<ContinuumEigenpair>& targets, int k);

struct BoundRow {
  int mesh_n = 0;
  int i = 0;
  int k = 0;  // 0 marks the single-projector (cluster) variant
  double lhs_a = 0.0, rhs_a = 0.0;
  double lhs_b = 0.0, rhs_b = 0.0;
  bool pass = false;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  bool all_pass() const;
};

/// Verifies the explicit spectral-projection bounds for the first k exact
/// eigenpairs against a fine reference solve. Degenerate eigenvalues are
/// handled clusterwise in the single-projector variant.
BoundReport verify_projection_bounds(const TriMesh& mesh, int k,
                                     double solver_tol = 1e-12);

/// Worst-case best-approximation error of the discrete solution operator's
/// range by the embedded coarse space, measured b -> a_h, by power iteration
/// on the associated symmetric operator. Diagnostic accuracy ~1%.
double estimate_eta_a(const CsrMatrix& a, const CsrMatrix& m,
                      const EmbeddingMatrix& embedding, int iters);

/// Geometric mean of successive error ratios over the admissible window
/// (entries above the stagnation floor, first ratio excluded). Throws
/// std::invalid_argument with fewer than 3 admissible entries.
double fit_rate(const std::vector<double>& errors, double floor = 0.0);

/// (v^T A v) / (v^T M v); rejects the zero vector.
double rayleigh_quotient(const CsrMatrix& a, const CsrMatrix& m, const DofVector& v);

}  // namespace creig

#endif
