#include "creig/quadrature.hpp"

#include <stdexcept>

namespace creig {

namespace {

TriangleQuadrature make_midpoint_rule() {
  TriangleQuadrature q;
  q.degree = 2;
  const double w = 1.0 / 3.0;
  q.nodes = {{0.5, 0.5, 0.0, w}, {0.0, 0.5, 0.5, w}, {0.5, 0.0, 0.5, w}};
  return q;
}

TriangleQuadrature make_degree4_rule() {
  // Dunavant degree-4, 6 points, two symmetric orbits.
  TriangleQuadrature q;
  q.degree = 4;
  const double a1 = 0.445948490915965, b1 = 1.0 - 2.0 * a1;
  const double w1 = 0.223381589678011;
  const double a2 = 0.091576213509771, b2 = 1.0 - 2.0 * a2;
  const double w2 = 0.109951743655322;
  q.nodes = {{b1, a1, a1, w1}, {a1, b1, a1, w1}, {a1, a1, b1, w1},
             {b2, a2, a2, w2}, {a2, b2, a2, w2}, {a2, a2, b2, w2}};
  return q;
}

}  // namespace

const TriangleQuadrature& triangle_quadrature(int degree) {
  static const TriangleQuadrature midpoint = make_midpoint_rule();
  static const TriangleQuadrature degree4 = make_degree4_rule();
  if (degree < 2) throw std::invalid_argument("triangle_quadrature: degree must be >= 2");
  return degree <= 2 ? midpoint : degree4;
}

}  // namespace creig
