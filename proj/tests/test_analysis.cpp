#include <doctest.h>

#include <cmath>
#include <numbers>

#include "creig/analysis.hpp"
#include "creig/assembly.hpp"
#include "creig/augmented.hpp"
#include "creig/transfer.hpp"

using namespace creig;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("lowest square eigenvalues and normalization") {
  const auto pairs = exact_eigenpairs_square(5);
  REQUIRE(pairs.size() == 5);
  CHECK(pairs[0].lambda == doctest::Approx(2 * kPi2));
  CHECK(pairs[1].lambda == doctest::Approx(5 * kPi2));
  CHECK(pairs[2].lambda == doctest::Approx(5 * kPi2));
  CHECK(pairs[3].lambda == doctest::Approx(8 * kPi2));
  CHECK(pairs[4].lambda == doctest::Approx(10 * kPi2));
  // degenerate pair ordered (m,n) lexicographically
  CHECK(pairs[1].m == 1);
  CHECK(pairs[2].m == 2);
  CHECK(pairs[0].b_norm() ==
        doctest::Approx(1.0 / (std::numbers::pi * std::sqrt(2.0))).epsilon(1e-14));
  // boundary values vanish
  CHECK(pairs[0].value(0.0, 0.37) == doctest::Approx(0.0));
  CHECK(pairs[3].value(0.41, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(exact_eigenpairs_square(0), std::invalid_argument);
}

TEST_CASE("error norms of the zero approximation equal the exact norms") {
  const TriMesh mesh = TriMesh::uniform(8);
  const CrDofMap dofs(mesh);
  const auto pairs = exact_eigenpairs_square(2);
  const ErrorPair err = continuum_error(mesh, DofVector(dofs.free_count, 0.0), pairs[0]);
  CHECK(err.err_a == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(err.err_b == doctest::Approx(pairs[0].b_norm()).epsilon(1e-6));
}

TEST_CASE("elliptic projection satisfies its defining residual equation") {
  const TriMesh mesh = TriMesh::uniform(8);
  const auto [a, m] = assemble_cr(mesh);
  const auto pair = exact_eigenpairs_square(1)[0];
  const DofVector x = fe_projection(mesh, a, pair, 1e-12);
  DofVector rhs = cr_load_vector(
      mesh, [&](double px, double py) { return pair.value(px, py); }, 4);
  scale(pair.lambda, rhs);
  DofVector r = a.multiply(x);
  axpy(-1.0, rhs, r);
  CHECK(norm2(r) <= 1e-12 * norm2(rhs));
}

TEST_CASE("projection errors converge at first and second order") {
  const auto pair = exact_eigenpairs_square(1)[0];
  double prev_a = 0.0, prev_b = 0.0;
  for (int n : {8, 16, 32}) {
    const TriMesh mesh = TriMesh::uniform(n);
    const auto [a, m] = assemble_cr(mesh);
    const DofVector x = fe_projection(mesh, a, pair, 1e-12);
    const ErrorPair err = continuum_error(mesh, x, pair);
    if (prev_a > 0.0) {
      CHECK(prev_a / err.err_a == doctest::Approx(2.0).epsilon(0.15));
      CHECK(prev_b / err.err_b == doctest::Approx(4.0).epsilon(0.15));
    }
    prev_a = err.err_a;
    prev_b = err.err_b;
  }
}

TEST_CASE("interpolating a fine function reproduces small volume error") {
  // CR midpoint interpolation of the exact eigenfunction: the L2 error
  // quarters per refinement
  const auto pair = exact_eigenpairs_square(1)[0];
  double prev = 0.0;
  for (int n : {8, 16}) {
    const TriMesh mesh = TriMesh::uniform(n);
    const CrDofMap dofs(mesh);
    const auto mids = edge_midpoints(mesh);
    DofVector coeffs(dofs.free_count, 0.0);
    for (int e = 0; e < mesh.edge_count(); ++e)
      if (dofs.edge_to_dof[e] >= 0)
        coeffs[dofs.edge_to_dof[e]] = pair.value(mids[e].x, mids[e].y);
    const ErrorPair err = continuum_error(mesh, coeffs, pair);
    if (prev > 0.0) CHECK(prev / err.err_b == doctest::Approx(4.0).epsilon(0.2));
    prev = err.err_b;
  }
}

TEST_CASE("eigenvalue identity residual stays at solver accuracy") {
  for (int n : {8, 12}) {
    const TriMesh mesh = TriMesh::uniform(n);
    const auto [a, m] = assemble_cr(mesh);
    const EigenpairSet reference = reference_eigensolve(a, m, 4, 1e-11);
    for (const auto& pair : exact_eigenpairs_square(2)) {
      const double residual =
          verify_strang_identity(mesh, a, m, pair, reference, 1e-12);
      CHECK(residual <= 1e-8);
    }
  }
}

TEST_CASE("reciprocal gaps from an idealized spectrum") {
  EigenpairSet idealized;
  idealized.eigenvalues = {2 * kPi2, 5 * kPi2, 5 * kPi2, 8 * kPi2, 10 * kPi2};
  idealized.vectors = DenseMatrix::identity(5);
  const auto targets = exact_eigenpairs_square(4);

  const auto gaps = gap_data(idealized, targets, 4);
  REQUIRE(gaps.size() == 4);
  CHECK(gaps[0].delta_k_i ==
        doctest::Approx(1.0 / (2 * kPi2) - 1.0 / (10 * kPi2)).epsilon(1e-13));
  CHECK(gaps[0].realized_j == 5);
  CHECK(gaps[0].mu == doctest::Approx(1.0 / (2 * kPi2)));
  CHECK_FALSE(gaps[0].degenerate_cluster);

  // degenerate cluster: gap measured outside the pair
  CHECK(gaps[1].degenerate_cluster);
  CHECK(gaps[2].degenerate_cluster);
  CHECK(gaps[1].delta_lambda ==
        doctest::Approx(1.0 / (5 * kPi2) - 1.0 / (8 * kPi2)).epsilon(1e-13));

  const auto gaps_k1 = gap_data(idealized, {targets[0]}, 1);
  CHECK(gaps_k1[0].realized_j == 2);
  CHECK(gaps_k1[0].delta_k_i ==
        doctest::Approx(1.0 / (2 * kPi2) - 1.0 / (5 * kPi2)).epsilon(1e-13));

  CHECK_THROWS_AS(gap_data(idealized, targets, 5), std::invalid_argument);
}

TEST_CASE("projection bounds hold on a small mesh") {
  const BoundReport report = verify_projection_bounds(TriMesh::uniform(8), 1);
  CHECK(report.all_pass());
  REQUIRE(!report.rows.empty());
  for (const auto& row : report.rows) {
    CHECK(row.lhs_a <= row.rhs_a);
    CHECK(row.lhs_b <= row.rhs_b);
    CHECK(row.mesh_n == 8);
  }
}

TEST_CASE("rate fitting follows the documented window") {
  CHECK(fit_rate({1.0, 0.1, 0.01}) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit_rate({1.0, 0.5, 0.25, 0.125}) == doctest::Approx(0.5).epsilon(1e-12));
  // first ratio (pre-asymptotic) is excluded
  CHECK(fit_rate({1.0, 0.9, 0.09, 0.009}) == doctest::Approx(0.1).epsilon(1e-12));
  // entries below the stagnation floor are cut off
  CHECK(fit_rate({1.0, 0.1, 0.01, 1e-3, 1e-17, 1e-17}) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(fit_rate({1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({1.0, 1e-20, 1e-20, 1e-20}), std::invalid_argument);
  // custom floor widens or narrows the admissible window
  CHECK(fit_rate({1.0, 0.5, 0.25, 0.125, 0.11}, 0.12) == doctest::Approx(0.5));
}

TEST_CASE("rayleigh quotient is stationary, homogeneous and bounded below") {
  const TriMesh mesh = TriMesh::uniform(6);
  const auto [a, m] = assemble_cr(mesh);
  const EigenpairSet reference = reference_eigensolve(a, m, 2, 1e-11);

  const DofVector v = reference.vectors.column(0);
  CHECK(rayleigh_quotient(a, m, v) ==
        doctest::Approx(reference.eigenvalues[0]).epsilon(1e-10));

  DofVector scaled = v;
  scale(-3.7, scaled);
  CHECK(rayleigh_quotient(a, m, scaled) ==
        doctest::Approx(rayleigh_quotient(a, m, v)).epsilon(1e-12));

  DofVector random(a.rows());
  for (int i = 0; i < a.rows(); ++i) random[i] = std::sin(1.0 + 3.0 * i);
  CHECK(rayleigh_quotient(a, m, random) >= reference.eigenvalues[0] - 1e-9);

  CHECK_THROWS_AS(rayleigh_quotient(a, m, DofVector(a.rows(), 0.0)),
                  std::invalid_argument);
}

TEST_CASE("coarse-space approximation estimate shrinks with refinement") {
  const TriMesh fine = TriMesh::uniform(32);
  const auto [a, m] = assemble_cr(fine);
  const double eta_4 =
      estimate_eta_a(a, m, p1_to_cr_embedding(TriMesh::uniform(4), fine), 80);
  const double eta_8 =
      estimate_eta_a(a, m, p1_to_cr_embedding(TriMesh::uniform(8), fine), 80);
  CHECK(eta_4 > eta_8);                    // monotone under enlargement
  CHECK(eta_4 / eta_8 > 1.4);              // about first order in H
  CHECK(eta_4 / eta_8 < 2.8);
}
