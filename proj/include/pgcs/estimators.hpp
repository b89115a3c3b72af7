#ifndef PGCS_ESTIMATORS_HPP
#define PGCS_ESTIMATORS_HPP

#include <cstdint>
#include <functional>

#include "pgcs/problem.hpp"

namespace pgcs {

// Implicit linear operator: matvec plus transposed matvec.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<Vector(const Vector&)> apply;
  std::function<Vector(const Vector&)> apply_transpose;
};

enum class WallisMode { exact, approx };

// Wallis factor w_p = E|g . z| / ||g||_2 for z uniform on the unit sphere in
// R^p: w_1 = 1, w_2 = 2/pi, w_p = w_{p-2} (p-2)/(p-1). Approx mode uses
// sqrt(2 / (pi (p - 1/2))).
double wallis(int p, WallisMode mode = WallisMode::exact);

struct PceOptions {
  double eps_prob = 1e-3;   // failure probability of the upper bound
  double delta_gap = 1e-2;  // target relative bracket width
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // RNG stream for the starting vector
  int max_iterations = 0;    // 0 = Krylov dimension bound
};

// Spectral-norm bracket: alpha is a certified lower bound (largest Ritz
// singular value of the Lanczos bidiagonalization), beta an upper bound
// holding with probability >= 1 - eps_prob over the random start.
struct PceResult {
  double alpha = 0.0;
  double beta = 0.0;
  double estimate = 0.0;  // (alpha + beta) / 2
  double eps_prob = 0.0;
  double delta_gap = 0.0;
  int iterations = 0;
  bool converged = false;  // beta / alpha <= 1 + delta_gap
};

PceResult pce_spectral_norm(const LinearOperator& op, const PceOptions& opts);

// Probabilistic estimates of the normwise and effective condition numbers,
// from brackets on the weighted derivative norm and the inverse norm.
struct PceConditionEstimates {
  double k_n1 = 0.0;
  double k_e = 0.0;
  PceResult weighted_derivative_norm;  // bracket of ||W^{-1} H1||_2
  PceResult inverse_norm;              // bracket of ||W^{-1}||_2
};

PceConditionEstimates pce_condition_numbers(const PgcsProblem& problem,
                                            const PgcsSolution& solution,
                                            const ToleranceSet& tol,
                                            const PceOptions& opts);

// Small-sample statistical estimates of the mixed and componentwise
// condition numbers. kappa_abs holds the calibrated per-entry absolute
// condition vector the step-4 formulas are evaluated on.
struct SceResult {
  double mixed_est = 0.0;
  double componentwise_est = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  Vector kappa_abs;
};

SceResult sce_condition_numbers(const PgcsProblem& problem,
                                const PgcsSolution& solution, int samples,
                                std::uint64_t seed);

}  // namespace pgcs

#endif
