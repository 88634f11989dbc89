#ifndef CREIG_PCG_HPP
#define CREIG_PCG_HPP

#include <memory>
#include <stdexcept>

#include "creig/csr.hpp"

namespace creig {

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Preconditioner {
public:
  virtual ~Preconditioner() = default;
  virtual void apply(const DofVector& r, DofVector& z) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
public:
  void apply(const DofVector& r, DofVector& z) const override { z = r; }
};

class JacobiPreconditioner final : public Preconditioner {
public:
  explicit JacobiPreconditioner(const CsrMatrix& a);
  void apply(const DofVector& r, DofVector& z) const override;

private:
  std::vector<double> inverse_diagonal_;
};

struct PcgResult {
  DofVector x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradients for SPD systems. Stops when
/// ||A x - rhs||_2 <= tol * ||rhs||_2. Throws SolverError on a negative
/// curvature direction (indefinite matrix). A null preconditioner means
/// Jacobi.
PcgResult pcg_solve(const CsrMatrix& a, const DofVector& rhs, double tol,
                    int max_iters, const Preconditioner* precond = nullptr);

/// As pcg_solve but throws SolverError when max_iters is exhausted.
DofVector pcg_solve_checked(const CsrMatrix& a, const DofVector& rhs, double tol,
                            int max_iters, const Preconditioner* precond = nullptr);

}  // namespace creig

#endif
