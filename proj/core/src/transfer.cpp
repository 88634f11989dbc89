#include "creig/transfer.hpp"

#include <cmath>
#include <stdexcept>

#include "creig/assembly.hpp"

namespace creig {

EmbeddingMatrix p1_to_cr_embedding(const TriMesh& coarse, const TriMesh& fine) {
  int ratio = fine.n() / coarse.n();
  const bool nested = fine.n() % coarse.n() == 0 && ratio > 0 &&
                      (ratio & (ratio - 1)) == 0;  // power-of-two multiple
  if (!nested)
    throw std::invalid_argument("p1_to_cr_embedding: meshes are not nested");

  const CrDofMap fine_dofs(fine);
  const P1DofMap coarse_dofs(coarse);
  const auto midpoints = edge_midpoints(fine);

  std::vector<Triplet> triplets;
  triplets.reserve(3 * fine_dofs.free_count);
  for (int e = 0; e < fine.edge_count(); ++e) {
    const int row = fine_dofs.edge_to_dof[e];
    if (row < 0) continue;
    const int t = locate_triangle(coarse, midpoints[e]);
    const auto l = barycentric_coordinates(coarse, t, midpoints[e]);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(l[i]) < 1e-12) continue;  // midpoint on the opposite edge
      const int col = coarse_dofs.vertex_to_dof[coarse.triangles[t][i]];
      if (col >= 0) triplets.push_back({row, col, l[i]});
    }
  }
  return {CsrMatrix::from_triplets(fine_dofs.free_count, coarse_dofs.free_count,
                                   std::move(triplets))};
}

TwoGridPreconditioner::TwoGridPreconditioner(const CsrMatrix& a_fine,
                                             const CsrMatrix& a_coarse,
                                             const EmbeddingMatrix& embedding,
                                             int smoothing_sweeps, double damping)
    : a_(a_fine),
      p_(embedding.p),
      coarse_factor_(cholesky(DenseMatrix::from_csr(a_coarse))),
      inverse_diagonal_(a_fine.diagonal()),
      sweeps_(smoothing_sweeps),
      damping_(damping) {
  for (double& d : inverse_diagonal_) d = 1.0 / d;
}

void TwoGridPreconditioner::apply(const DofVector& r, DofVector& z) const {
  const int n = a_.rows();
  z.assign(n, 0.0);
  DofVector residual = r;

  auto smooth = [&] {
    for (int s = 0; s < sweeps_; ++s) {
      for (int i = 0; i < n; ++i) z[i] += damping_ * inverse_diagonal_[i] * residual[i];
      residual = r;
      DofVector az = a_.multiply(z);
      axpy(-1.0, az, residual);
    }
  };

  smooth();
  DofVector coarse_rhs = p_.multiply_transposed(residual);
  DofVector coarse = solve_lower_transposed(coarse_factor_,
                                            solve_lower(coarse_factor_, coarse_rhs));
  DofVector correction = p_.multiply(coarse);
  axpy(1.0, correction, z);
  residual = r;
  DofVector az = a_.multiply(z);
  axpy(-1.0, az, residual);
  smooth();
}

}  // namespace creig
