#ifndef CREIG_ASSEMBLY_HPP
#define CREIG_ASSEMBLY_HPP

#include <array>
#include <functional>
#include <utility>

#include "creig/csr.hpp"
#include "creig/mesh.hpp"

namespace creig {

using ScalarField = std::function<double(double, double)>;

/// Maps edges to free Crouzeix-Raviart DOFs. Boundary edges are eliminated;
/// free DOFs are numbered by sorted edge index.
struct CrDofMap {
  std::vector<int> edge_to_dof;  // -1 for boundary edges
  int free_count = 0;

  explicit CrDofMap(const TriMesh& mesh);
};

/// Maps vertices to interior P1 DOFs (Dirichlet vertices eliminated).
struct P1DofMap {
  std::vector<int> vertex_to_dof;  // -1 for boundary vertices
  int free_count = 0;

  explicit P1DofMap(const TriMesh& mesh);
};

/// Gradients of the three barycentric coordinates on triangle t.
std::array<Point, 3> barycentric_gradients(const TriMesh& mesh, int t);

/// Barycentric coordinates of p with respect to triangle t.
std::array<double, 3> barycentric_coordinates(const TriMesh& mesh, int t, Point p);

/// Containing triangle index by direct index arithmetic on the structured mesh.
int locate_triangle(const TriMesh& mesh, Point p);

/// Local P1 stiffness on triangle t: S_ij = |K| grad(l_i) . grad(l_j).
/// The CR local stiffness equals 4 * S entrywise.
std::array<std::array<double, 3>, 3> p1_local_stiffness(const TriMesh& mesh, int t);

/// CR stiffness and (diagonal) mass over the free edge DOFs.
std::pair<CsrMatrix, CsrMatrix> assemble_cr(const TriMesh& mesh);

/// Conforming P1 stiffness and mass over the interior vertices.
std::pair<CsrMatrix, CsrMatrix> assemble_p1(const TriMesh& mesh);

/// Load vector r_e = sum_K int_K f phi_e, evaluated with the triangle
/// quadrature rule of the given degree. Boundary-edge components omitted.
DofVector cr_load_vector(const TriMesh& mesh, const ScalarField& f, int quad_degree);

/// Pointwise values of the piecewise-linear CR function with the given free
/// DOF coefficients (boundary-edge basis values treated as 0).
std::vector<double> evaluate_cr(const TriMesh& mesh, const DofVector& coeffs,
                                const std::vector<Point>& points);

}  // namespace creig

#endif
