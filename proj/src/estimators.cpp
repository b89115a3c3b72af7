#include "pgcs/estimators.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "pgcs/assembly.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/rng.hpp"
#include "pgcs/solver.hpp"

namespace pgcs {
namespace {

// d with P(|first sphere coordinate| <= d) <= eps, from the marginal density
// bound f(c) <= Gamma(M/2) / (sqrt(pi) Gamma((M-1)/2)). Conservative vs the
// exact quantile, which only widens the upper bound.
double start_component_quantile(Eigen::Index dim, double eps) {
  if (dim < 2) return 1.0;
  const double log_density_peak = std::lgamma(0.5 * static_cast<double>(dim)) -
                                  std::lgamma(0.5 * (static_cast<double>(dim) - 1.0)) -
                                  0.5 * std::log(M_PI);
  return 0.5 * eps * std::exp(-log_density_peak);
}

void project_out(const std::vector<Vector>& basis, Vector& x) {
  for (const Vector& w : basis) x -= w.dot(x) * w;
}

// Root of sum_i log(t - ritz_sq_i) = target beyond the largest Ritz value.
double solve_log_root(const Vector& ritz_sq, double target) {
  const double t_max = ritz_sq.maxCoeff();
  const auto lhs = [&](double t) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ritz_sq.size(); ++i)
      s += std::log(t - ritz_sq[i]);
    return s;
  };
  double lo = t_max * (1.0 + 1e-15) + std::numeric_limits<double>::min();
  double hi = std::max(2.0 * t_max, 1.0);
  while (lhs(hi) < target) hi *= 4.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lhs(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double wallis(int p, WallisMode mode) {
  if (p < 1) throw ValidationError("wallis: p must be >= 1");
  if (mode == WallisMode::approx) {
    return std::sqrt(2.0 / (M_PI * (static_cast<double>(p) - 0.5)));
  }
  if (p == 1) return 1.0;
  if (p == 2) return 2.0 / M_PI;
  double value = (p % 2 == 1) ? 1.0 : 2.0 / M_PI;
  for (int k = (p % 2 == 1) ? 3 : 4; k <= p; k += 2) {
    value *= static_cast<double>(k - 2) / static_cast<double>(k - 1);
  }
  return value;
}

PceResult pce_spectral_norm(const LinearOperator& op, const PceOptions& opts) {
  if (op.rows < 1 || op.cols < 1) {
    throw DimensionError("pce_spectral_norm: operator dimensions must be >= 1");
  }
  if (!(opts.eps_prob > 0.0 && opts.eps_prob < 1.0) ||
      !(opts.delta_gap > 0.0 && opts.delta_gap < 1.0)) {
    throw ValidationError(
        "pce_spectral_norm: eps_prob and delta_gap must lie in (0, 1)");
  }
  const Eigen::Index krylov_cap =
      std::min(std::min(op.rows, op.cols) + 2, op.cols);
  int max_iterations = static_cast<int>(krylov_cap);
  if (opts.max_iterations > 0) {
    max_iterations = std::min(max_iterations, opts.max_iterations);
  }

  PceResult result;
  result.eps_prob = opts.eps_prob;
  result.delta_gap = opts.delta_gap;

  CounterRng rng(opts.seed, opts.stream);
  Vector v = rng.unit_sphere(op.cols);
  const double quantile = start_component_quantile(op.cols, opts.eps_prob);

  std::vector<Vector> left_basis, right_basis;
  right_basis.push_back(v);
  std::vector<double> diag;       // bidiagonal alpha_j
  std::vector<double> offdiag;    // bidiagonal beta_j (residual norms)
  double alpha = 0.0;
  double beta = std::numeric_limits<double>::infinity();

  while (result.iterations < max_iterations) {
    ++result.iterations;
    Vector p = op.apply(v);
    project_out(left_basis, p);
    const double a = p.norm();
    if (a <= 1e-15 * std::max(1.0, alpha)) {
      if (alpha == 0.0) beta = 0.0;  // the operator is numerically zero
      break;
    }
    const Vector u = p / a;
    left_basis.push_back(u);
    diag.push_back(a);

    Vector r = op.apply_transpose(u);
    project_out(right_basis, r);
    project_out(right_basis, r);
    const double b = r.norm();
    offdiag.push_back(b);

    const int k = static_cast<int>(diag.size());
    Matrix bidiag = Matrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      bidiag(i, i) = diag[static_cast<std::size_t>(i)];
      if (i + 1 < k) bidiag(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
    }
    const Vector ritz = Eigen::JacobiSVD<Matrix>(bidiag).singularValues();
    alpha = ritz(0);

    // Recurrence products floored at roundoff scale so near-exhaustion noise
    // cannot pull the bound below the true norm.
    double log_products = 0.0;
    for (std::size_t j = 0; j < diag.size(); ++j) {
      const double floored = std::max(offdiag[j], 1e-15 * alpha);
      log_products +=
          std::log(std::max(diag[j] * floored,
                            std::numeric_limits<double>::min()));
    }
    const double target = log_products - std::log(quantile);
    const Vector ritz_sq = ritz.array().square();
    beta = std::sqrt(solve_log_root(ritz_sq, target));

    if (beta <= alpha * (1.0 + opts.delta_gap)) break;
    if (b <= 1e-15 * alpha) break;  // Krylov space exhausted
    v = r / b;
    right_basis.push_back(v);
  }

  result.alpha = alpha;
  result.beta = std::isfinite(beta) ? beta : alpha;
  result.estimate = 0.5 * (result.alpha + result.beta);
  result.converged = result.beta <= result.alpha * (1.0 + opts.delta_gap) ||
                     (result.alpha == 0.0 && result.beta == 0.0);
  return result;
}

PceConditionEstimates pce_condition_numbers(const PgcsProblem& problem,
                                            const PgcsSolution& solution,
                                            const ToleranceSet& tol,
                                            const PceOptions& opts) {
  validate_or_throw(problem);
  const SystemFactorization factorization(
      SystemOperator::from_problem(problem).dense());
  const ScaledDataOperator h1(solution, tol, problem.p, problem.m, problem.n);
  const int order = system_order(problem.p, problem.m, problem.n);

  LinearOperator weighted;
  weighted.rows = order;
  weighted.cols = h1.cols();
  weighted.apply = [&](const Vector& x) {
    return factorization.solve(h1.apply(x));
  };
  weighted.apply_transpose = [&](const Vector& y) {
    return h1.apply_transpose(factorization.solve_transpose(y));
  };

  LinearOperator inverse;
  inverse.rows = order;
  inverse.cols = order;
  inverse.apply = [&](const Vector& x) { return factorization.solve(x); };
  inverse.apply_transpose = [&](const Vector& y) {
    return factorization.solve_transpose(y);
  };

  PceOptions first = opts;
  first.stream = opts.stream * 2 + 1;
  PceOptions second = opts;
  second.stream = opts.stream * 2 + 2;

  PceConditionEstimates est;
  est.weighted_derivative_norm = pce_spectral_norm(weighted, first);
  est.inverse_norm = pce_spectral_norm(inverse, second);

  const double z_fro = solution_frobenius_norm(solution);
  const double g_fro = stack_rhs(problem).norm();
  est.k_n1 = est.weighted_derivative_norm.estimate / z_fro;
  est.k_e = est.inverse_norm.estimate * g_fro / z_fro;
  return est;
}

SceResult sce_condition_numbers(const PgcsProblem& problem,
                                const PgcsSolution& solution, int samples,
                                std::uint64_t seed) {
  validate_or_throw(problem);
  const int p = problem.p, m = problem.m, n = problem.n;
  const Eigen::Index q = data_dimension(p, m, n);
  const Eigen::Index order = system_order(p, m, n);
  if (samples < 1 || samples > q) {
    throw ValidationError("sce_condition_numbers: samples must lie in [1, q]");
  }

  const SystemFactorization factorization(
      SystemOperator::from_problem(problem).dense());
  const ScaledDataOperator h2(solution, ToleranceSet::unit(p), p, m, n);
  const Vector t = pack_data_vector(problem);

  CounterRng rng(seed, 0);
  Matrix directions(q, samples);
  bool orthonormal = false;
  for (int attempt = 0; attempt < 4 && !orthonormal; ++attempt) {
    for (int j = 0; j < samples; ++j) {
      directions.col(j) = rng.normal_vector(q);
    }
    orthonormal = true;
    // Modified Gram-Schmidt with one reorthogonalization pass.
    for (int j = 0; j < samples && orthonormal; ++j) {
      const double original = directions.col(j).norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j; ++i) {
          directions.col(j) -=
              directions.col(i).dot(directions.col(j)) * directions.col(i);
        }
      }
      const double remaining = directions.col(j).norm();
      if (remaining <= 1e-12 * original) {
        orthonormal = false;
        break;
      }
      directions.col(j) /= remaining;
    }
  }
  if (!orthonormal) {
    throw DegenerateDirectionsError(
        "sce_condition_numbers: could not orthonormalize direction bundles "
        "after resampling");
  }

  Vector accumulated = Vector::Zero(order);
  for (int j = 0; j < samples; ++j) {
    const Vector weighted = directions.col(j).cwiseProduct(t);
    const Vector rhs = -h2.apply(weighted);
    const Vector derivative = factorization.solve(rhs);
    accumulated += derivative.array().square().matrix();
  }

  const double sample_factor = wallis(samples, WallisMode::approx) /
                               wallis(static_cast<int>(q), WallisMode::approx);
  // Row-sum calibration at the row space's intrinsic dimension: converts the
  // two-norm row estimate into the absolute (one-norm) condition vector scale.
  const double row_sum_factor = static_cast<double>(order) *
                                wallis(static_cast<int>(order), WallisMode::approx);

  SceResult result;
  result.samples = samples;
  result.seed = seed;
  result.kappa_abs =
      sample_factor * row_sum_factor * accumulated.array().sqrt().matrix();

  const Vector z = stack_solution(solution);
  result.mixed_est =
      result.kappa_abs.lpNorm<Eigen::Infinity>() / z.cwiseAbs().maxCoeff();
  Vector divided(result.kappa_abs.size());
  for (Eigen::Index i = 0; i < divided.size(); ++i) {
    divided[i] = z[i] != 0.0 ? result.kappa_abs[i] / std::abs(z[i])
                             : result.kappa_abs[i];
  }
  result.componentwise_est = divided.lpNorm<Eigen::Infinity>();
  return result;
}

}  // namespace pgcs
