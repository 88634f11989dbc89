#include "creig/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace creig {

TriMesh TriMesh::uniform(int n) {
  if (n < 1) throw std::invalid_argument("TriMesh::uniform: n must be >= 1");

  TriMesh mesh;
  mesh.n_ = n;

  mesh.vertices.resize((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices[j * (n + 1) + i] = {static_cast<double>(i) / n,
                                        static_cast<double>(j) / n};

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  mesh.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j);
      const int c = vid(i + 1, j + 1), d = vid(i, j + 1);
      mesh.triangles.push_back({a, b, c});  // lower-right triangle
      mesh.triangles.push_back({a, c, d});  // upper-left triangle
    }

  std::vector<std::array<int, 2>> all;
  all.reserve(6 * n * n);
  for (const auto& tri : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      int u = tri[(e + 1) % 3], v = tri[(e + 2) % 3];
      all.push_back({std::min(u, v), std::max(u, v)});
    }
  std::sort(all.begin(), all.end());

  std::vector<int> multiplicity;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    mesh.edges.push_back(all[i]);
    multiplicity.push_back(static_cast<int>(j - i));
    i = j;
  }

  mesh.boundary_edge.resize(mesh.edges.size());
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    mesh.boundary_edge[e] = (multiplicity[e] == 1);

  auto edge_index = [&mesh](int u, int v) {
    std::array<int, 2> key{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
    return static_cast<int>(it - mesh.edges.begin());
  };
  mesh.tri_edges.resize(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e)
      mesh.tri_edges[t][e] = edge_index(tri[(e + 1) % 3], tri[(e + 2) % 3]);
  }
  return mesh;
}

double TriMesh::mesh_size() const { return std::sqrt(2.0) / n_; }

int TriMesh::boundary_edge_count() const {
  return static_cast<int>(std::count(boundary_edge.begin(), boundary_edge.end(), true));
}

double TriMesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const Point& p0 = vertices[tri[0]];
  const Point& p1 = vertices[tri[1]];
  const Point& p2 = vertices[tri[2]];
  return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

std::vector<Point> edge_midpoints(const TriMesh& mesh) {
  std::vector<Point> mids(mesh.edges.size());
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const Point& a = mesh.vertices[mesh.edges[e][0]];
    const Point& b = mesh.vertices[mesh.edges[e][1]];
    mids[e] = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  }
  return mids;
}

void dump_mesh(const TriMesh& mesh, std::ostream& out) {
  out << mesh.n() << ' ' << mesh.vertex_count() << ' ' << mesh.triangle_count()
      << ' ' << mesh.edge_count() << '\n';
  for (const auto& v : mesh.vertices) out << v.x << ' ' << v.y << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    out << mesh.edges[e][0] << ' ' << mesh.edges[e][1] << ' '
        << (mesh.boundary_edge[e] ? 1 : 0) << '\n';
}

}  // namespace creig
