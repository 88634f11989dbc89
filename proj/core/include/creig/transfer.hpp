#ifndef CREIG_TRANSFER_HPP
#define CREIG_TRANSFER_HPP

#include "creig/csr.hpp"
#include "creig/mesh.hpp"
#include "creig/dense.hpp"
#include "creig/pcg.hpp"

namespace creig {

/// Embedding of the coarse conforming P1 space into the fine CR space:
/// P[e, v] is the coarse hat function of interior vertex v at the midpoint
/// of the fine interior edge e. Each row has at most 3 nonzeros.
struct EmbeddingMatrix {
  CsrMatrix p;  // (fine free CR DOFs) x (coarse interior P1 DOFs)
};

/// Requires the fine mesh to be a repeated regular refinement of the coarse
/// one (including zero refinements); rejects non-nested pairs.
EmbeddingMatrix p1_to_cr_embedding(const TriMesh& coarse, const TriMesh& fine);

/// Two-grid V-cycle preconditioner for the fine CR stiffness: Jacobi
/// smoothing around a coarse correction through the P1 embedding. The coarse
/// operator is factored densely once.
class TwoGridPreconditioner final : public Preconditioner {
public:
  TwoGridPreconditioner(const CsrMatrix& a_fine, const CsrMatrix& a_coarse,
                        const EmbeddingMatrix& embedding, int smoothing_sweeps = 2,
                        double damping = 0.7);
  void apply(const DofVector& r, DofVector& z) const override;

private:
  const CsrMatrix& a_;
  const CsrMatrix& p_;
  DenseMatrix coarse_factor_;  // Cholesky of the coarse stiffness
  std::vector<double> inverse_diagonal_;
  int sweeps_;
  double damping_;
};

}  // namespace creig

#endif
