#include "creig/augmented.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "creig/assembly.hpp"
#include "creig/pcg.hpp"

namespace creig {

namespace {

void parallel_columns(int count, int threads, const std::function<void(int)>& work) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int nthreads = std::min(threads, count);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

AugmentedBasis build_augmented_basis(const EmbeddingMatrix& p,
                                     const DenseMatrix& iterates,
                                     const CsrMatrix& a, double drop_tol) {
  const int n = p.p.rows();
  const int nc = p.p.cols();
  if (iterates.rows() != n)
    throw std::invalid_argument("build_augmented_basis: iterate row count mismatch");

  AugmentedBasis result;
  result.columns = DenseMatrix(n, 0);
  std::vector<DofVector> a_basis;

  auto push = [&](DofVector v) -> bool {
    const double norm0 = std::sqrt(std::max(a.inner(v, v), 0.0));
    if (norm0 <= 0.0) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < result.columns.cols(); ++j) {
        const double proj = dot(a_basis[j], v);
        const double* bj = result.columns.col(j);
        for (int i = 0; i < n; ++i) v[i] -= proj * bj[i];
      }
    const double norm1 = std::sqrt(std::max(a.inner(v, v), 0.0));
    if (norm1 < drop_tol * norm0) return false;
    scale(1.0 / norm1, v);
    result.columns.append_column(v);
    a_basis.push_back(a.multiply(v));
    return true;
  };

  for (int j = 0; j < nc; ++j) {
    DofVector ej(nc, 0.0);
    ej[j] = 1.0;
    if (push(p.p.multiply(ej))) ++result.coarse_dim;
  }
  for (int j = 0; j < iterates.cols(); ++j)
    if (push(iterates.column(j))) ++result.iterate_dim;

  if (result.columns.cols() == 0)
    throw SolverError("build_augmented_basis: empty basis after conditioning");
  return result;
}

EigenpairSet solve_augmented_gevp(const CsrMatrix& a, const CsrMatrix& m,
                                  const AugmentedBasis& basis, int k) {
  const DenseMatrix& b = basis.columns;
  const int dim = b.cols();
  if (k < 1 || k > dim)
    throw std::invalid_argument("solve_augmented_gevp: k out of range");

  DenseMatrix a_red(dim, dim), m_red(dim, dim);
  std::vector<DofVector> a_cols(dim), m_cols(dim);
  for (int j = 0; j < dim; ++j) {
    a_cols[j] = a.multiply(b.column(j));
    m_cols[j] = m.multiply(b.column(j));
  }
  for (int j = 0; j < dim; ++j) {
    const DofVector bj = b.column(j);
    for (int i = 0; i <= j; ++i) {
      const DofVector bi = b.column(i);
      a_red(i, j) = a_red(j, i) = dot(bi, a_cols[j]);
      m_red(i, j) = m_red(j, i) = dot(bi, m_cols[j]);
    }
  }
  const DenseEigenResult reduced = dense_gevp(a_red, m_red);

  EigenpairSet result;
  result.vectors = DenseMatrix(b.rows(), k);
  result.eigenvalues.assign(reduced.eigenvalues.begin(), reduced.eigenvalues.begin() + k);
  for (int j = 0; j < k; ++j) {
    DofVector lifted = b.multiply(reduced.vectors.column(j));
    scale(1.0 / std::sqrt(reduced.eigenvalues[j]), lifted);
    fix_sign(lifted);
    result.vectors.set_column(j, lifted);
  }
  return result;
}

namespace {

DenseMatrix expansion_solve_counted(const CsrMatrix& a, const CsrMatrix& m,
                                    const EigenpairSet& pairs, double tol,
                                    int threads, const Preconditioner* precond,
                                    long* iteration_total) {
  const int k = pairs.count();
  const int cap = 40 * a.rows() + 1000;
  DenseMatrix result(a.rows(), k);
  std::vector<long> iters(k, 0);
  std::vector<std::string> failures(k);

  parallel_columns(k, threads, [&](int i) {
    DofVector rhs = m.multiply(pairs.vectors.column(i));
    scale(pairs.eigenvalues[i], rhs);
    try {
      PcgResult sol = pcg_solve(a, rhs, tol, cap, precond);
      if (!sol.converged) {
        std::ostringstream msg;
        msg << "expansion_solve: pair " << i << " stalled at relative residual "
            << sol.relative_residual;
        failures[i] = msg.str();
        return;
      }
      iters[i] = sol.iterations;
      result.set_column(i, sol.x);
    } catch (const SolverError& err) {
      std::ostringstream msg;
      msg << "expansion_solve: pair " << i << ": " << err.what();
      failures[i] = msg.str();
    }
  });

  for (const auto& f : failures)
    if (!f.empty()) throw SolverError(f);
  if (iteration_total)
    for (long it : iters) *iteration_total += it;
  return result;
}

}  // namespace

DenseMatrix expansion_solve(const CsrMatrix& a, const CsrMatrix& m,
                            const EigenpairSet& pairs, double tol, int threads,
                            const Preconditioner* preconditioner) {
  return expansion_solve_counted(a, m, pairs, tol, threads, preconditioner, nullptr);
}

int select_largest_component(const EigenpairSet& pairs, const DofVector& direction,
                             const CsrMatrix& a) {
  const double dnorm = a.inner(direction, direction);
  if (!(dnorm > 0.0))
    throw std::invalid_argument("select_largest_component: zero direction");
  const DofVector ad = a.multiply(direction);
  int best = 0;
  double best_score = -1.0;
  for (int j = 0; j < pairs.count(); ++j) {
    const double score = std::abs(dot(pairs.vectors.column(j), ad));
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

std::vector<ErrorPair> spectral_projection_error(const EigenpairSet& reference,
                                                 const DenseMatrix& approx,
                                                 const CsrMatrix& a,
                                                 const CsrMatrix& m) {
  const DenseMatrix basis = ah_orthonormalize(approx, a, 1e-12);
  if (basis.cols() != approx.cols())
    throw SolverError("spectral_projection_error: approx columns are dependent");

  std::vector<ErrorPair> errors;
  for (int i = 0; i < reference.count(); ++i) {
    DofVector u = reference.vectors.column(i);
    const DofVector au = a.multiply(u);
    for (int j = 0; j < basis.cols(); ++j) {
      const double c = dot(basis.column(j), au);
      const double* bj = basis.col(j);
      for (std::size_t l = 0; l < u.size(); ++l) u[l] -= c * bj[l];
    }
    errors.push_back({std::sqrt(std::max(a.inner(u, u), 0.0)),
                      std::sqrt(std::max(m.inner(u, u), 0.0))});
  }
  return errors;
}

namespace {

// Shared driver for both algorithm variants. The augmented eigenproblem is
// assembled in block form: the coarse block of the reduced pencil is the
// coarse conforming pencil itself (exact through the embedding), so only the
// iterate rows and columns change per iteration. Iterate columns are first
// made a_h-orthogonal to the embedded coarse space, which keeps the reduced
// mass well conditioned without orthonormalizing the full basis.
class AugmentedEngine {
public:
  AugmentedEngine(const TriMesh& coarse, const TriMesh& fine,
                  const AlgorithmOptions& opts)
      : opts_(opts), embedding_(p1_to_cr_embedding(coarse, fine)) {
    auto [a, m] = assemble_cr(fine);
    a_ = std::move(a);
    m_ = std::move(m);
    auto [ac, mc] = assemble_p1(coarse);
    a_coarse_ = DenseMatrix::from_csr(ac);
    m_coarse_ = DenseMatrix::from_csr(mc);
    coarse_factor_ = cholesky(a_coarse_);
    jacobi_ = std::make_unique<JacobiPreconditioner>(a_);
  }

  const CsrMatrix& a() const { return a_; }
  const CsrMatrix& m() const { return m_; }
  int coarse_dim() const { return a_coarse_.rows(); }

  // Coarse-pencil eigenpairs embedded into the fine space, a_h-normalized.
  EigenpairSet initial_iterates(int count) {
    const DenseEigenResult coarse = dense_gevp(a_coarse_, m_coarse_);
    if (count > static_cast<int>(coarse.eigenvalues.size()))
      throw std::invalid_argument("augmented iteration: coarse space smaller than k");
    EigenpairSet init;
    init.vectors = DenseMatrix(a_.rows(), count);
    init.eigenvalues.assign(coarse.eigenvalues.begin(),
                            coarse.eigenvalues.begin() + count);
    for (int j = 0; j < count; ++j) {
      DofVector lifted = embedding_.p.multiply(coarse.vectors.column(j));
      scale(1.0 / std::sqrt(coarse.eigenvalues[j]), lifted);
      fix_sign(lifted);
      init.vectors.set_column(j, lifted);
    }
    return init;
  }

  struct StepResult {
    EigenpairSet candidates;   // smallest reduced pairs lifted to fine DOFs
    DenseMatrix expansion;     // raw fine-space solves (selection directions)
    long pcg_iterations = 0;
  };

  StepResult step(const EigenpairSet& iterates, int candidate_count) {
    StepResult out;
    out.expansion = expansion_solve_counted(a_, m_, iterates, opts_.linear_tol,
                                            opts_.threads, jacobi_.get(),
                                            &out.pcg_iterations);

    // Strip the coarse a_h-component, then orthonormalize what remains.
    DenseMatrix stripped(a_.rows(), 0);
    for (int j = 0; j < out.expansion.cols(); ++j) {
      DofVector v = out.expansion.column(j);
      DofVector coarse_rhs = embedding_.p.multiply_transposed(a_.multiply(v));
      DofVector c = solve_lower_transposed(coarse_factor_,
                                           solve_lower(coarse_factor_, coarse_rhs));
      DofVector correction = embedding_.p.multiply(c);
      axpy(-1.0, correction, v);
      stripped.append_column(v);
    }
    DenseMatrix z;
    try {
      z = ah_orthonormalize(stripped, a_, opts_.drop_tol);
    } catch (const SolverError&) {
      throw SolverError(
          "augmented iteration: all iterate columns collapsed into the coarse space");
    }

    const int nc = coarse_dim();
    const int nz = z.cols();
    const int dim = nc + nz;
    DenseMatrix a_red(dim, dim), m_red(dim, dim);
    for (int j = 0; j < nc; ++j)
      for (int i = 0; i < nc; ++i) {
        a_red(i, j) = a_coarse_(i, j);
        m_red(i, j) = m_coarse_(i, j);
      }
    std::vector<DofVector> az(nz), mz(nz);
    for (int j = 0; j < nz; ++j) {
      az[j] = a_.multiply(z.column(j));
      mz[j] = m_.multiply(z.column(j));
      const DofVector pa = embedding_.p.multiply_transposed(az[j]);
      const DofVector pm = embedding_.p.multiply_transposed(mz[j]);
      for (int i = 0; i < nc; ++i) {
        a_red(i, nc + j) = a_red(nc + j, i) = pa[i];
        m_red(i, nc + j) = m_red(nc + j, i) = pm[i];
      }
      for (int i = 0; i <= j; ++i) {
        const DofVector zi = z.column(i);
        a_red(nc + i, nc + j) = a_red(nc + j, nc + i) = dot(zi, az[j]);
        m_red(nc + i, nc + j) = m_red(nc + j, nc + i) = dot(zi, mz[j]);
      }
    }

    const DenseEigenResult reduced = dense_gevp(a_red, m_red);
    const int cand = std::min(candidate_count, dim);
    out.candidates.vectors = DenseMatrix(a_.rows(), cand);
    out.candidates.eigenvalues.assign(reduced.eigenvalues.begin(),
                                      reduced.eigenvalues.begin() + cand);
    for (int j = 0; j < cand; ++j) {
      const DofVector y = reduced.vectors.column(j);
      DofVector head(y.begin(), y.begin() + nc);
      DofVector lifted = embedding_.p.multiply(head);
      for (int l = 0; l < nz; ++l) {
        const double* zl = z.col(l);
        const double w = y[nc + l];
        for (int i = 0; i < a_.rows(); ++i) lifted[i] += w * zl[i];
      }
      scale(1.0 / std::sqrt(reduced.eigenvalues[j]), lifted);
      fix_sign(lifted);
      out.candidates.vectors.set_column(j, lifted);
    }
    return out;
  }

private:
  AlgorithmOptions opts_;
  EmbeddingMatrix embedding_;
  CsrMatrix a_, m_;
  DenseMatrix a_coarse_, m_coarse_, coarse_factor_;
  std::unique_ptr<JacobiPreconditioner> jacobi_;
};

EigenpairSet reference_subset(const EigenpairSet& reference, int first, int count) {
  EigenpairSet sub;
  sub.vectors = DenseMatrix(reference.vectors.rows(), count);
  for (int j = 0; j < count; ++j) {
    sub.eigenvalues.push_back(reference.eigenvalues[first + j]);
    sub.vectors.set_column(j, reference.vectors.column(first + j));
  }
  return sub;
}

void record_iteration(IterationReport& report, const EigenpairSet& iterates,
                      const EigenpairSet& tracked, const CsrMatrix& a,
                      const CsrMatrix& m) {
  report.eigenvalues.push_back(iterates.eigenvalues);
  const auto errors = spectral_projection_error(tracked, iterates.vectors, a, m);
  for (std::size_t i = 0; i < errors.size(); ++i) {
    report.err_a[i].push_back(errors[i].err_a);
    report.err_b[i].push_back(errors[i].err_b);
  }
}

void finish_report(IterationReport& report, const EigenpairSet& iterates) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < report.err_a.size(); ++i) {
    try {
      report.rate_a.push_back(fit_rate(report.err_a[i]));
    } catch (const std::invalid_argument&) {
      report.rate_a.push_back(nan);
    }
    try {
      report.rate_b.push_back(fit_rate(report.err_b[i]));
    } catch (const std::invalid_argument&) {
      report.rate_b.push_back(nan);
    }
  }
  report.final_vectors = iterates.vectors;
  report.iterations = static_cast<int>(report.eigenvalues.size()) - 1;
}

bool below_tolerance(const IterationReport& report, double tol) {
  if (tol <= 0.0) return false;
  for (const auto& row : report.err_a)
    if (row.back() > tol) return false;
  return true;
}

}  // namespace

IterationReport run_algorithm_k(const TriMesh& coarse, const TriMesh& fine, int k,
                                const EigenpairSet& reference,
                                const AlgorithmOptions& opts) {
  if (k < 1) throw std::invalid_argument("run_algorithm_k: k must be >= 1");
  if (reference.count() < k)
    throw std::invalid_argument("run_algorithm_k: reference has fewer than k pairs");

  AugmentedEngine engine(coarse, fine, opts);
  const EigenpairSet tracked = reference_subset(reference, 0, k);

  IterationReport report;
  report.err_a.resize(k);
  report.err_b.resize(k);
  report.pcg_iterations.push_back(0);

  EigenpairSet iterates = engine.initial_iterates(k);
  record_iteration(report, iterates, tracked, engine.a(), engine.m());

  for (int ell = 1; ell <= opts.max_iters; ++ell) {
    auto step = engine.step(iterates, k);
    iterates = std::move(step.candidates);
    report.pcg_iterations.push_back(step.pcg_iterations);
    record_iteration(report, iterates, tracked, engine.a(), engine.m());
    if (below_tolerance(report, opts.tol)) break;
  }
  finish_report(report, iterates);
  return report;
}

IterationReport run_algorithm_one(const TriMesh& coarse, const TriMesh& fine,
                                  int target_index, const EigenpairSet& reference,
                                  const AlgorithmOptions& opts) {
  if (target_index < 0 || target_index >= reference.count())
    throw std::invalid_argument("run_algorithm_one: target index out of range");

  AugmentedEngine engine(coarse, fine, opts);
  const EigenpairSet tracked = reference_subset(reference, target_index, 1);

  IterationReport report;
  report.err_a.resize(1);
  report.err_b.resize(1);
  report.pcg_iterations.push_back(0);

  const EigenpairSet coarse_pairs = engine.initial_iterates(target_index + 1);
  EigenpairSet iterate = reference_subset(coarse_pairs, target_index, 1);
  record_iteration(report, iterate, tracked, engine.a(), engine.m());

  int previous_selection = target_index;
  for (int ell = 1; ell <= opts.max_iters; ++ell) {
    auto step = engine.step(iterate, target_index + 4);
    const int chosen = select_largest_component(step.candidates,
                                                step.expansion.column(0), engine.a());
    if (ell > 1 && chosen != previous_selection) report.selection_switched = true;
    previous_selection = chosen;
    iterate = reference_subset(step.candidates, chosen, 1);
    report.pcg_iterations.push_back(step.pcg_iterations);
    record_iteration(report, iterate, tracked, engine.a(), engine.m());
    if (below_tolerance(report, opts.tol)) break;
  }
  finish_report(report, iterate);
  return report;
}

}  // namespace creig
