#include <benchmark/benchmark.h>

#include "creig/assembly.hpp"
#include "creig/dense.hpp"
#include "creig/pcg.hpp"
#include "creig/transfer.hpp"

using namespace creig;

static void BM_AssembleCr(benchmark::State& state) {
  const TriMesh mesh = TriMesh::uniform(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto [a, m] = assemble_cr(mesh);
    benchmark::DoNotOptimize(a.nnz());
  }
}
BENCHMARK(BM_AssembleCr)->Arg(16)->Arg(32)->Arg(64);

static void BM_PcgSolve(benchmark::State& state) {
  const TriMesh mesh = TriMesh::uniform(static_cast<int>(state.range(0)));
  const auto [a, m] = assemble_cr(mesh);
  DofVector b(a.rows(), 1.0);
  JacobiPreconditioner jacobi(a);
  for (auto _ : state) {
    const PcgResult r = pcg_solve(a, b, 1e-8, 40 * a.rows(), &jacobi);
    benchmark::DoNotOptimize(r.iterations);
  }
}
BENCHMARK(BM_PcgSolve)->Arg(16)->Arg(32)->Arg(64);

static void BM_TwoGridPcg(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TriMesh coarse = TriMesh::uniform(n / 4);
  const TriMesh fine = TriMesh::uniform(n);
  const auto [a, m] = assemble_cr(fine);
  const auto [ac, mc] = assemble_p1(coarse);
  const EmbeddingMatrix p = p1_to_cr_embedding(coarse, fine);
  TwoGridPreconditioner precond(a, ac, p);
  DofVector b(a.rows(), 1.0);
  for (auto _ : state) {
    const PcgResult r = pcg_solve(a, b, 1e-8, 40 * a.rows(), &precond);
    benchmark::DoNotOptimize(r.iterations);
  }
}
BENCHMARK(BM_TwoGridPcg)->Arg(32)->Arg(64);

static void BM_DenseGevp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DenseMatrix a(n, n), mm(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0 + i * 0.01;
    mm(i, i) = 1.0 + 0.001 * i;
    if (i > 0) a(i, i - 1) = a(i - 1, i) = -1.0;
  }
  for (auto _ : state) {
    const DenseEigenResult r = dense_gevp(a, mm);
    benchmark::DoNotOptimize(r.eigenvalues[0]);
  }
}
BENCHMARK(BM_DenseGevp)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
