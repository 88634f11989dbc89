#ifndef CREIG_QUADRATURE_HPP
#define CREIG_QUADRATURE_HPP

#include <vector>

namespace creig {

/// Symmetric quadrature rule on the reference triangle, given in
/// barycentric coordinates. Weights sum to 1 and scale with the area.
struct TriangleQuadrature {
  struct Node {
    double l0, l1, l2;  // barycentric coordinates
    double weight;
  };
  std::vector<Node> nodes;
  int degree = 0;
};

/// degree 2: the 3-point edge-midpoint rule, exact for quadratics.
/// degree >= 3: the symmetric 6-point degree-4 rule.
const TriangleQuadrature& triangle_quadrature(int degree);

}  // namespace creig

#endif
