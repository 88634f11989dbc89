#ifndef CREIG_MESH_HPP
#define CREIG_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

namespace creig {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Structured triangulation of the unit square with full edge topology.
///
/// The square is divided into n x n cells and every cell is split along
/// the diagonal from its lower-left to its upper-right corner. Edges are
/// stored with canonical (min,max) vertex ordering and sorted
/// lexicographically, which fixes a deterministic DOF numbering.
class TriMesh {
public:
  /// Builds the n x n triangulation. Throws std::invalid_argument for n < 1.
  static TriMesh uniform(int n);

  /// Regular refinement: every triangle is split into 4 congruent children.
  /// The result is identical to uniform(2n).
  TriMesh refine() const { return uniform(2 * n_); }

  int n() const { return n_; }

  /// Mesh size h, the length of the longest edge (= sqrt(2)/n).
  double mesh_size() const;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int boundary_edge_count() const;
  int interior_edge_count() const { return edge_count() - boundary_edge_count(); }

  double triangle_area(int t) const;

  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;  // vertex indices, ccw
  std::vector<std::array<int, 2>> edges;      // (min,max), sorted lexicographically
  std::vector<std::array<int, 3>> tri_edges;  // tri_edges[t][i] opposite vertex i
  std::vector<bool> boundary_edge;

private:
  int n_ = 0;
};

/// Midpoint of every edge, in edge index order.
std::vector<Point> edge_midpoints(const TriMesh& mesh);

/// Text dump for debugging: header "n vertices triangles edges",
/// then one line per vertex, triangle and edge.
void dump_mesh(const TriMesh& mesh, std::ostream& out);

}  // namespace creig

#endif
