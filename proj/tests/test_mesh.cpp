#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "creig/mesh.hpp"

using namespace creig;

TEST_CASE("uniform mesh entity counts") {
  for (int n : {1, 2, 3, 4, 7}) {
    const TriMesh mesh = TriMesh::uniform(n);
    CHECK(mesh.vertex_count() == (n + 1) * (n + 1));
    CHECK(mesh.triangle_count() == 2 * n * n);
    CHECK(mesh.edge_count() == 3 * n * n + 2 * n);
    CHECK(mesh.boundary_edge_count() == 4 * n);
    CHECK(mesh.interior_edge_count() == 3 * n * n - 2 * n);
  }
}

TEST_CASE("invalid size rejected") {
  CHECK_THROWS_AS(TriMesh::uniform(0), std::invalid_argument);
  CHECK_THROWS_AS(TriMesh::uniform(-2), std::invalid_argument);
}

TEST_CASE("mesh size is the diagonal length") {
  for (int n : {1, 2, 8})
    CHECK(TriMesh::uniform(n).mesh_size() == doctest::Approx(std::sqrt(2.0) / n));
}

TEST_CASE("triangle areas are uniform and tile the square") {
  const TriMesh mesh = TriMesh::uniform(3);
  double total = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    CHECK(mesh.triangle_area(t) == doctest::Approx(1.0 / 18.0));
    total += mesh.triangle_area(t);
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("refinement reproduces the doubled uniform mesh exactly") {
  const TriMesh refined = TriMesh::uniform(3).refine();
  const TriMesh direct = TriMesh::uniform(6);
  REQUIRE(refined.vertex_count() == direct.vertex_count());
  REQUIRE(refined.triangle_count() == direct.triangle_count());
  for (int v = 0; v < direct.vertex_count(); ++v) {
    CHECK(refined.vertices[v].x == direct.vertices[v].x);
    CHECK(refined.vertices[v].y == direct.vertices[v].y);
  }
  for (int t = 0; t < direct.triangle_count(); ++t)
    CHECK(refined.triangles[t] == direct.triangles[t]);
  for (int e = 0; e < direct.edge_count(); ++e)
    CHECK(refined.edges[e] == direct.edges[e]);
}

TEST_CASE("edges are canonical and sorted without duplicates") {
  const TriMesh mesh = TriMesh::uniform(4);
  std::set<std::array<int, 2>> seen;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto& edge = mesh.edges[e];
    CHECK(edge[0] < edge[1]);
    if (e > 0) CHECK(mesh.edges[e - 1] < edge);
    seen.insert(edge);
  }
  CHECK(static_cast<int>(seen.size()) == mesh.edge_count());
}

TEST_CASE("tri_edges lists the edge opposite each vertex") {
  const TriMesh mesh = TriMesh::uniform(2);
  for (int t = 0; t < mesh.triangle_count(); ++t)
    for (int i = 0; i < 3; ++i) {
      const auto& edge = mesh.edges[mesh.tri_edges[t][i]];
      // the opposite edge joins the other two triangle vertices
      CHECK(edge[0] != mesh.triangles[t][i]);
      CHECK(edge[1] != mesh.triangles[t][i]);
      const int a = mesh.triangles[t][(i + 1) % 3];
      const int b = mesh.triangles[t][(i + 2) % 3];
      CHECK(std::min(a, b) == edge[0]);
      CHECK(std::max(a, b) == edge[1]);
    }
}

TEST_CASE("boundary edges lie on the boundary, interior ones do not") {
  const TriMesh mesh = TriMesh::uniform(3);
  const auto mids = edge_midpoints(mesh);
  REQUIRE(mids.size() == static_cast<std::size_t>(mesh.edge_count()));
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const bool on_boundary = mids[e].x == 0.0 || mids[e].x == 1.0 ||
                             mids[e].y == 0.0 || mids[e].y == 1.0;
    CHECK(mesh.boundary_edge[e] == on_boundary);
  }
}

TEST_CASE("edge midpoints average the endpoints") {
  const TriMesh mesh = TriMesh::uniform(2);
  const auto mids = edge_midpoints(mesh);
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const auto& edge = mesh.edges[e];
    CHECK(mids[e].x ==
          doctest::Approx(0.5 * (mesh.vertices[edge[0]].x + mesh.vertices[edge[1]].x)));
    CHECK(mids[e].y ==
          doctest::Approx(0.5 * (mesh.vertices[edge[0]].y + mesh.vertices[edge[1]].y)));
  }
}

TEST_CASE("mesh dump carries the advertised header") {
  const TriMesh mesh = TriMesh::uniform(2);
  std::ostringstream out;
  dump_mesh(mesh, out);
  std::istringstream in(out.str());
  int n = 0, nv = 0, nt = 0, ne = 0;
  in >> n >> nv >> nt >> ne;
  CHECK(n == 2);
  CHECK(nv == mesh.vertex_count());
  CHECK(nt == mesh.triangle_count());
  CHECK(ne == mesh.edge_count());
}
