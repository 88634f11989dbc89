#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "creig/assembly.hpp"
#include "creig/quadrature.hpp"

using namespace creig;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Exact integral of l0^a l1^b l2^c over a triangle of area |K|.
double barycentric_integral(int a, int b, int c, double area) {
  return factorial(a) * factorial(b) * factorial(c) * 2.0 * area /
         factorial(a + b + c + 2);
}

double quad_integral(const TriangleQuadrature& rule, int a, int b, int c, double area) {
  double sum = 0.0;
  for (const auto& node : rule.nodes)
    sum += node.weight * std::pow(node.l0, a) * std::pow(node.l1, b) *
           std::pow(node.l2, c);
  return sum * area;
}

}  // namespace

TEST_CASE("quadrature rules integrate their advertised degree exactly") {
  const double area = 0.37;
  const auto& deg2 = triangle_quadrature(2);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      const int c = 2 - a - b;
      CHECK(quad_integral(deg2, a, b, c, area) ==
            doctest::Approx(barycentric_integral(a, b, c, area)).epsilon(1e-13));
    }
  const auto& deg4 = triangle_quadrature(4);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + c <= 4; ++c)
        CHECK(quad_integral(deg4, a, b, c, area) ==
              doctest::Approx(barycentric_integral(a, b, c, area)).epsilon(1e-12));
  CHECK_THROWS_AS(triangle_quadrature(1), std::invalid_argument);
}

TEST_CASE("dof maps eliminate boundary entities") {
  const TriMesh mesh = TriMesh::uniform(4);
  const CrDofMap cr(mesh);
  CHECK(cr.free_count == mesh.interior_edge_count());
  int assigned = 0;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (mesh.boundary_edge[e]) {
      CHECK(cr.edge_to_dof[e] == -1);
    } else {
      CHECK(cr.edge_to_dof[e] == assigned++);
    }
  }
  const P1DofMap p1(mesh);
  CHECK(p1.free_count == (4 - 1) * (4 - 1));
}

TEST_CASE("nonconforming mass matrix is exactly diagonal") {
  const TriMesh mesh = TriMesh::uniform(4);
  const auto [a, m] = assemble_cr(mesh);
  CHECK(m.nnz() == m.rows());
  const auto& cols = m.col_indices();
  const auto& offsets = m.row_offsets();
  for (int r = 0; r < m.rows(); ++r) {
    REQUIRE(offsets[r + 1] - offsets[r] == 1);
    CHECK(cols[offsets[r]] == r);
    // every interior edge touches two triangles of area 1/(2n^2)
    CHECK(m.values()[offsets[r]] == doctest::Approx(1.0 / (3.0 * 16.0)).epsilon(1e-14));
  }
}

TEST_CASE("edge-based local stiffness is four times the vertex-based one") {
  const TriMesh mesh = TriMesh::uniform(3);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto s = p1_local_stiffness(mesh, t);
    const auto g = barycentric_gradients(mesh, t);
    const double area = mesh.triangle_area(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double cr_entry = 4.0 * area * (g[i].x * g[j].x + g[i].y * g[j].y);
        CHECK(std::abs(cr_entry - 4.0 * s[i][j]) < 1e-13);
      }
  }
}

TEST_CASE("stiffness matrices are symmetric with positive diagonal") {
  const TriMesh mesh = TriMesh::uniform(3);
  const auto [a_cr, m_cr] = assemble_cr(mesh);
  const auto [a_p1, m_p1] = assemble_p1(mesh);
  CHECK(a_cr.symmetry_defect() < 1e-14);
  CHECK(a_p1.symmetry_defect() < 1e-14);
  for (double d : a_cr.diagonal()) CHECK(d > 0.0);
  for (double d : a_p1.diagonal()) CHECK(d > 0.0);
}

TEST_CASE("smallest conforming pencil: single interior vertex") {
  const TriMesh mesh = TriMesh::uniform(2);
  const auto [a, m] = assemble_p1(mesh);
  REQUIRE(a.rows() == 1);
  CHECK(a.values()[0] == doctest::Approx(4.0));
  // six incident triangles, local mass diagonal |K|/6 each
  CHECK(m.values()[0] == doctest::Approx(6.0 * (1.0 / 8.0) / 6.0));
}

TEST_CASE("load vector of a piecewise-linear integrand equals a mass product") {
  // With the degree-2 (edge midpoint) rule the load of a function that is
  // itself in the CR space reduces exactly to M times its coefficients.
  const TriMesh mesh = TriMesh::uniform(2);
  const CrDofMap dofs(mesh);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DofVector coeffs(dofs.free_count);
  for (double& c : coeffs) c = uni(rng);

  const auto [a, m] = assemble_cr(mesh);
  const DofVector expected = m.multiply(coeffs);
  const DofVector load = cr_load_vector(
      mesh,
      [&](double x, double y) {
        return evaluate_cr(mesh, coeffs, {Point{x, y}})[0];
      },
      2);
  REQUIRE(load.size() == expected.size());
  for (std::size_t i = 0; i < load.size(); ++i)
    CHECK(load[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("load assembly rejects non-finite integrands") {
  const TriMesh mesh = TriMesh::uniform(2);
  CHECK_THROWS_AS(cr_load_vector(
                      mesh, [](double, double) { return std::nan(""); }, 2),
                  std::invalid_argument);
}

TEST_CASE("point location and barycentric coordinates round trip") {
  const TriMesh mesh = TriMesh::uniform(5);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p{uni(rng), uni(rng)};
    const int t = locate_triangle(mesh, p);
    REQUIRE(t >= 0);
    REQUIRE(t < mesh.triangle_count());
    const auto l = barycentric_coordinates(mesh, t, p);
    double x = 0.0, y = 0.0, sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      CHECK(l[i] >= -1e-12);
      sum += l[i];
      x += l[i] * mesh.vertices[mesh.triangles[t][i]].x;
      y += l[i] * mesh.vertices[mesh.triangles[t][i]].y;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x == doctest::Approx(p.x).epsilon(1e-12));
    CHECK(y == doctest::Approx(p.y).epsilon(1e-12));
  }
}
