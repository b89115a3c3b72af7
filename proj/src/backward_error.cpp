#include "pgcs/backward_error.hpp"

#include <cmath>

#include "pgcs/assembly.hpp"
#include "pgcs/solver.hpp"

namespace pgcs {

BackwardErrorReport backward_error_bounds(const PgcsProblem& problem,
                                          const PgcsSolution& candidate,
                                          const ToleranceSet& tol) {
  validate_or_throw(problem);
  const ScaledDataOperator h(candidate, tol, problem.p, problem.m, problem.n);
  const Vector r = stack_residual(residual(problem, candidate));
  const Vector u = min_norm_ls_solve(h, r);
  BackwardErrorReport report;
  report.upper = u.norm();
  report.lower = report.upper / std::sqrt(6.0 * problem.p);
  report.attaining =
      unpack_perturbation_vector(u, tol, problem.p, problem.m, problem.n);
  return report;
}

}  // namespace pgcs
