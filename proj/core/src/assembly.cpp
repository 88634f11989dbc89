#include "creig/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "creig/quadrature.hpp"

namespace creig {

CrDofMap::CrDofMap(const TriMesh& mesh) {
  edge_to_dof.assign(mesh.edge_count(), -1);
  for (int e = 0; e < mesh.edge_count(); ++e)
    if (!mesh.boundary_edge[e]) edge_to_dof[e] = free_count++;
}

P1DofMap::P1DofMap(const TriMesh& mesh) {
  const int n = mesh.n();
  vertex_to_dof.assign(mesh.vertex_count(), -1);
  for (int j = 1; j < n; ++j)
    for (int i = 1; i < n; ++i)
      vertex_to_dof[j * (n + 1) + i] = free_count++;
}

std::array<Point, 3> barycentric_gradients(const TriMesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const Point p0 = mesh.vertices[tri[0]];
  const Point p1 = mesh.vertices[tri[1]];
  const Point p2 = mesh.vertices[tri[2]];
  const double two_area = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
  if (two_area <= 0.0)
    throw std::invalid_argument("assembly: degenerate or inverted triangle");
  return {Point{(p1.y - p2.y) / two_area, (p2.x - p1.x) / two_area},
          Point{(p2.y - p0.y) / two_area, (p0.x - p2.x) / two_area},
          Point{(p0.y - p1.y) / two_area, (p1.x - p0.x) / two_area}};
}

std::array<double, 3> barycentric_coordinates(const TriMesh& mesh, int t, Point p) {
  const auto g = barycentric_gradients(mesh, t);
  const auto& tri = mesh.triangles[t];
  std::array<double, 3> l;
  for (int i = 0; i < 3; ++i) {
    const Point v = mesh.vertices[tri[i]];
    l[i] = 1.0 + g[i].x * (p.x - v.x) + g[i].y * (p.y - v.y);
  }
  return l;
}

int locate_triangle(const TriMesh& mesh, Point p) {
  if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
    throw std::invalid_argument("locate_triangle: point outside unit square");
  const int n = mesh.n();
  const int i = std::min(static_cast<int>(p.x * n), n - 1);
  const int j = std::min(static_cast<int>(p.y * n), n - 1);
  const double xr = p.x * n - i;
  const double yr = p.y * n - j;
  const int cell = 2 * (j * n + i);
  return yr <= xr ? cell : cell + 1;  // lower-right vs upper-left of the diagonal
}

std::array<std::array<double, 3>, 3> p1_local_stiffness(const TriMesh& mesh, int t) {
  const auto g = barycentric_gradients(mesh, t);
  const double area = mesh.triangle_area(t);
  std::array<std::array<double, 3>, 3> s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s[i][j] = area * (g[i].x * g[j].x + g[i].y * g[j].y);
  return s;
}

std::pair<CsrMatrix, CsrMatrix> assemble_cr(const TriMesh& mesh) {
  const CrDofMap dofs(mesh);
  std::vector<Triplet> stiff;
  std::vector<Triplet> mass;
  stiff.reserve(9 * mesh.triangle_count());
  mass.reserve(3 * mesh.triangle_count());

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto s = p1_local_stiffness(mesh, t);
    const double area = mesh.triangle_area(t);
    for (int i = 0; i < 3; ++i) {
      const int di = dofs.edge_to_dof[mesh.tri_edges[t][i]];
      if (di < 0) continue;
      // int_K (1-2l_i)^2 = |K|/3; cross terms vanish
      mass.push_back({di, di, area / 3.0});
      for (int j = 0; j < 3; ++j) {
        const int dj = dofs.edge_to_dof[mesh.tri_edges[t][j]];
        if (dj < 0) continue;
        stiff.push_back({di, dj, 4.0 * s[i][j]});
      }
    }
  }
  const int m = dofs.free_count;
  return {CsrMatrix::from_triplets(m, m, std::move(stiff)),
          CsrMatrix::from_triplets(m, m, std::move(mass))};
}

std::pair<CsrMatrix, CsrMatrix> assemble_p1(const TriMesh& mesh) {
  const P1DofMap dofs(mesh);
  std::vector<Triplet> stiff;
  std::vector<Triplet> mass;
  stiff.reserve(9 * mesh.triangle_count());
  mass.reserve(9 * mesh.triangle_count());

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto s = p1_local_stiffness(mesh, t);
    const double area = mesh.triangle_area(t);
    for (int i = 0; i < 3; ++i) {
      const int di = dofs.vertex_to_dof[mesh.triangles[t][i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int dj = dofs.vertex_to_dof[mesh.triangles[t][j]];
        if (dj < 0) continue;
        stiff.push_back({di, dj, s[i][j]});
        mass.push_back({di, dj, area / 12.0 * (i == j ? 2.0 : 1.0)});
      }
    }
  }
  const int m = dofs.free_count;
  return {CsrMatrix::from_triplets(m, m, std::move(stiff)),
          CsrMatrix::from_triplets(m, m, std::move(mass))};
}

DofVector cr_load_vector(const TriMesh& mesh, const ScalarField& f, int quad_degree) {
  const auto& quad = triangle_quadrature(quad_degree);
  const CrDofMap dofs(mesh);
  DofVector load(dofs.free_count, 0.0);

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Point p0 = mesh.vertices[tri[0]];
    const Point p1 = mesh.vertices[tri[1]];
    const Point p2 = mesh.vertices[tri[2]];
    const double area = mesh.triangle_area(t);
    for (const auto& node : quad.nodes) {
      const double x = node.l0 * p0.x + node.l1 * p1.x + node.l2 * p2.x;
      const double y = node.l0 * p0.y + node.l1 * p1.y + node.l2 * p2.y;
      const double fv = f(x, y);
      if (!std::isfinite(fv))
        throw std::invalid_argument("cr_load_vector: non-finite value at quadrature node");
      const double l[3] = {node.l0, node.l1, node.l2};
      for (int i = 0; i < 3; ++i) {
        const int d = dofs.edge_to_dof[mesh.tri_edges[t][i]];
        if (d >= 0) load[d] += node.weight * area * fv * (1.0 - 2.0 * l[i]);
      }
    }
  }
  return load;
}

std::vector<double> evaluate_cr(const TriMesh& mesh, const DofVector& coeffs,
                                const std::vector<Point>& points) {
  const CrDofMap dofs(mesh);
  if (static_cast<int>(coeffs.size()) != dofs.free_count)
    throw std::invalid_argument("evaluate_cr: coefficient size mismatch");

  std::vector<double> values(points.size(), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const int t = locate_triangle(mesh, points[p]);
    const auto l = barycentric_coordinates(mesh, t, points[p]);
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
      const int d = dofs.edge_to_dof[mesh.tri_edges[t][i]];
      if (d >= 0) v += coeffs[d] * (1.0 - 2.0 * l[i]);
    }
    values[p] = v;
  }
  return values;
}

}  // namespace creig
