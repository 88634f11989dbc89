#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "creig/assembly.hpp"
#include "creig/dense.hpp"
#include "creig/eigensolver.hpp"
#include "creig/mesh.hpp"
#include "creig/pcg.hpp"

using namespace creig;

namespace {

CsrMatrix laplacian_1d(int n) {
  std::vector<Triplet> trips;
  for (int i = 0; i < n; ++i) {
    trips.push_back({i, i, 2.0});
    if (i > 0) {
      trips.push_back({i, i - 1, -1.0});
      trips.push_back({i - 1, i, -1.0});
    }
  }
  return CsrMatrix::from_triplets(n, n, trips);
}

}  // namespace

TEST_CASE("conjugate gradients reproduce a direct dense solve") {
  const int n = 40;
  const CsrMatrix a = laplacian_1d(n);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DofVector b(n);
  for (double& v : b) v = uni(rng);

  DenseMatrix dense = DenseMatrix::from_csr(a);
  const DenseMatrix l = cholesky(dense);
  const DofVector exact = solve_lower_transposed(l, solve_lower(l, b));

  for (const Preconditioner* precond :
       {static_cast<const Preconditioner*>(nullptr)}) {
    const PcgResult result = pcg_solve(a, b, 1e-12, 10 * n, precond);
    CHECK(result.converged);
    DofVector diff = result.x;
    axpy(-1.0, exact, diff);
    CHECK(norm2(diff) < 1e-9);
  }
  IdentityPreconditioner identity;
  JacobiPreconditioner jacobi(a);
  for (const Preconditioner* precond :
       {static_cast<const Preconditioner*>(&identity),
        static_cast<const Preconditioner*>(&jacobi)}) {
    const DofVector x = pcg_solve_checked(a, b, 1e-12, 10 * n, precond);
    DofVector diff = x;
    axpy(-1.0, exact, diff);
    CHECK(norm2(diff) < 1e-9);
  }
}

TEST_CASE("zero right-hand side yields the zero solution immediately") {
  const CsrMatrix a = laplacian_1d(8);
  const PcgResult result = pcg_solve(a, DofVector(8, 0.0), 1e-12, 100);
  CHECK(result.converged);
  CHECK(norm2(result.x) == 0.0);
}

TEST_CASE("indefinite systems are rejected through curvature detection") {
  const CsrMatrix a =
      CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
  CHECK_THROWS_AS(pcg_solve(a, {1.0, 1.0}, 1e-10, 50), SolverError);
}

TEST_CASE("iteration cap failure is reported by the checked variant") {
  const CsrMatrix a = laplacian_1d(60);
  DofVector b(60, 1.0);
  CHECK_THROWS_AS(pcg_solve_checked(a, b, 1e-14, 2), SolverError);
}

TEST_CASE("sign convention puts the largest coefficient positive") {
  DofVector v{0.5, -2.0, 1.0};
  fix_sign(v);
  CHECK(v[1] == doctest::Approx(2.0));
  CHECK(v[0] == doctest::Approx(-0.5));
  fix_sign(v);  // idempotent once positive
  CHECK(v[1] == doctest::Approx(2.0));
}

TEST_CASE("energy orthonormalization produces an identity Gram matrix") {
  const TriMesh mesh = TriMesh::uniform(4);
  const auto [a, m] = assemble_cr(mesh);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DenseMatrix vectors(a.rows(), 5);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < a.rows(); ++i) vectors(i, j) = uni(rng);
  const DenseMatrix basis = ah_orthonormalize(vectors, a, 1e-12);
  REQUIRE(basis.cols() == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(a.inner(basis.column(i), basis.column(j)) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("dependent columns are dropped, fully dependent input throws") {
  const TriMesh mesh = TriMesh::uniform(3);
  const auto [a, m] = assemble_cr(mesh);
  DenseMatrix vectors(a.rows(), 2);
  for (int i = 0; i < a.rows(); ++i) {
    vectors(i, 0) = 1.0 + i;
    vectors(i, 1) = 2.0 * (1.0 + i);  // scalar multiple
  }
  const DenseMatrix basis = ah_orthonormalize(vectors, a, 1e-10);
  CHECK(basis.cols() == 1);
  CHECK_THROWS_AS(ah_orthonormalize(DenseMatrix(a.rows(), 1), a, 1e-10), SolverError);
}

TEST_CASE("sparse eigensolver agrees with the dense pencil on a small mesh") {
  const TriMesh mesh = TriMesh::uniform(4);
  const auto [a, m] = assemble_cr(mesh);
  const DenseEigenResult oracle =
      dense_gevp(DenseMatrix::from_csr(a), DenseMatrix::from_csr(m));

  const EigenpairSet pairs = reference_eigensolve(a, m, 3, 1e-10);
  REQUIRE(pairs.count() >= 3);
  for (int i = 0; i < 3; ++i)
    CHECK(pairs.eigenvalues[i] ==
          doctest::Approx(oracle.eigenvalues[i]).epsilon(1e-8));

  // a_h-orthonormal vectors with small pencil residuals
  for (int i = 0; i < 3; ++i) {
    const DofVector x = pairs.vectors.column(i);
    CHECK(a.inner(x, x) == doctest::Approx(1.0).epsilon(1e-8));
    DofVector r = a.multiply(x);
    axpy(-pairs.eigenvalues[i], m.multiply(x), r);
    CHECK(norm2(r) <= 1e-9 * norm2(a.multiply(x)));
  }
}

TEST_CASE("computed eigenvalues approximate the continuum from below") {
  const TriMesh mesh = TriMesh::uniform(8);
  const auto [a, m] = assemble_cr(mesh);
  const EigenpairSet pairs = reference_eigensolve(a, m, 4, 1e-9);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double exact[4] = {2 * pi2, 5 * pi2, 5 * pi2, 8 * pi2};
  for (int i = 0; i < 4; ++i) {
    CHECK(pairs.eigenvalues[i] < exact[i]);
    CHECK(pairs.eigenvalues[i] > 0.85 * exact[i]);
  }
}

TEST_CASE("invalid eigensolver requests are rejected") {
  const TriMesh mesh = TriMesh::uniform(2);
  const auto [a, m] = assemble_cr(mesh);
  CHECK_THROWS_AS(reference_eigensolve(a, m, 0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(reference_eigensolve(a, m, a.rows() + 1, 1e-8),
                  std::invalid_argument);
}
