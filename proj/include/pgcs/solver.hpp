#ifndef PGCS_SOLVER_HPP
#define PGCS_SOLVER_HPP

#include <Eigen/LU>

#include "pgcs/assembly.hpp"

namespace pgcs {

// LU factorization (partial pivoting) of the dense system matrix. Reports
// singularity when a pivot magnitude drops to unit-roundoff * ||W||_inf *
// order. Immutable after construction; concurrent solves are fine.
class SystemFactorization {
 public:
  explicit SystemFactorization(Matrix w);

  Vector solve(const Vector& rhs) const;
  Vector solve_transpose(const Vector& rhs) const;
  Matrix solve_matrix(const Matrix& rhs) const;
  Matrix inverse() const;

  double inf_norm() const { return inf_norm_; }
  int order() const { return static_cast<int>(lu_.rows()); }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double inf_norm_ = 0.0;
};

// Direct dense solution of the coupled equation. Throws SingularSystemError
// when unique solvability fails, SizeCapError above the dense cap.
PgcsSolution solve_pgcs(const PgcsProblem& problem);

// Minimum-Euclidean-norm solution of the underdetermined consistent system
// h * u = r (h short-fat, full row rank). QR of h^T with an SVD fallback on
// rank warnings; throws RankDeficientError when the numerical rank is below
// the row count.
Vector min_norm_least_squares(const Matrix& h, const Vector& r);
Vector min_norm_ls_solve(const ScaledDataOperator& op, const Vector& r);

// Largest singular value by dense SVD.
double spectral_norm_dense(const Matrix& m);

struct SpectralRadiusResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Perron root estimate of an entrywise-nonnegative matrix by power iteration
// (all-ones start, ratio test at relative tolerance 1e-8, seeded random
// restarts on stagnation). A non-converged result carries the best estimate.
SpectralRadiusResult spectral_radius_nonneg(const Matrix& m,
                                            int max_iterations = 10000);

}  // namespace pgcs

#endif
