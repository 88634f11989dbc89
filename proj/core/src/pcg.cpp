#include "creig/pcg.hpp"

#include <cmath>
#include <string>

namespace creig {

JacobiPreconditioner::JacobiPreconditioner(const CsrMatrix& a)
    : inverse_diagonal_(a.diagonal()) {
  for (double& d : inverse_diagonal_) {
    if (d <= 0.0) throw SolverError("JacobiPreconditioner: nonpositive diagonal");
    d = 1.0 / d;
  }
}

void JacobiPreconditioner::apply(const DofVector& r, DofVector& z) const {
  z.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = inverse_diagonal_[i] * r[i];
}

PcgResult pcg_solve(const CsrMatrix& a, const DofVector& rhs, double tol,
                    int max_iters, const Preconditioner* precond) {
  if (tol <= 0.0) throw std::invalid_argument("pcg_solve: tol must be positive");
  const int n = a.rows();
  PcgResult result;
  result.x.assign(n, 0.0);

  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    result.converged = true;
    return result;
  }

  std::unique_ptr<Preconditioner> default_precond;
  if (!precond) {
    default_precond = std::make_unique<JacobiPreconditioner>(a);
    precond = default_precond.get();
  }

  DofVector r = rhs;  // r = rhs - A*0
  DofVector z(n), p(n), ap(n);
  precond->apply(r, z);
  p = z;
  double rho = dot(r, z);
  double res_norm = norm2(r);

  while (result.iterations < max_iters && res_norm > tol * rhs_norm) {
    a.multiply(p.data(), ap.data());
    const double curvature = dot(p, ap);
    if (curvature <= 0.0)
      throw SolverError("pcg_solve: negative curvature, matrix not SPD");
    const double alpha = rho / curvature;
    axpy(alpha, p, result.x);
    axpy(-alpha, ap, r);
    precond->apply(r, z);
    const double rho_next = dot(r, z);
    const double beta = rho_next / rho;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rho = rho_next;
    res_norm = norm2(r);
    ++result.iterations;
  }

  result.relative_residual = res_norm / rhs_norm;
  result.converged = res_norm <= tol * rhs_norm;
  return result;
}

DofVector pcg_solve_checked(const CsrMatrix& a, const DofVector& rhs, double tol,
                            int max_iters, const Preconditioner* precond) {
  PcgResult result = pcg_solve(a, rhs, tol, max_iters, precond);
  if (!result.converged)
    throw SolverError("pcg_solve: no convergence after " +
                      std::to_string(result.iterations) + " iterations, residual " +
                      std::to_string(result.relative_residual));
  return std::move(result.x);
}

}  // namespace creig
