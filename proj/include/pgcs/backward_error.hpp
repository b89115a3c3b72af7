#ifndef PGCS_BACKWARD_ERROR_HPP
#define PGCS_BACKWARD_ERROR_HPP

#include "pgcs/problem.hpp"

namespace pgcs {

// Bracket for the normwise backward error of a candidate solution:
// lower = ||u||_2 / sqrt(6p), upper = ||u||_2 where u is the minimum-norm
// tolerance-scaled perturbation reproducing the residual. The attaining
// perturbation, added to the problem, makes the candidate solve it exactly.
struct BackwardErrorReport {
  double lower = 0.0;
  double upper = 0.0;
  PerturbationSet attaining;
};

BackwardErrorReport backward_error_bounds(const PgcsProblem& problem,
                                          const PgcsSolution& candidate,
                                          const ToleranceSet& tol);

}  // namespace pgcs

#endif
