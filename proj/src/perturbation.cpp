#include "pgcs/perturbation.hpp"

#include <cmath>
#include <limits>

#include "pgcs/assembly.hpp"
#include "pgcs/estimators.hpp"
#include "pgcs/solver.hpp"

namespace pgcs {
namespace {

double max_scaled_block_norm(const PerturbationSet& delta,
                             const ToleranceSet& tol) {
  double eps = 0.0;
  const int p = static_cast<int>(delta.dA.size());
  for (int k = 0; k < p; ++k) {
    eps = std::max({eps, delta.dA[k].norm() / tol.alpha[k],
                    delta.dB[k].norm() / tol.beta[k],
                    delta.dE[k].norm() / tol.gamma[k],
                    delta.dC[k].norm() / tol.zeta[k],
                    delta.dD[k].norm() / tol.tau[k],
                    delta.dF[k].norm() / tol.delta[k]});
  }
  return eps;
}

// Spectral norm of W^{-1} * op, dense or PCE depending on the method and
// the dense cap.
double solve_weighted_norm(const SystemFactorization& factorization,
                           const SystemOperator& op, NormMethod method,
                           std::string* method_tag) {
  const bool dense_ok = op.order() <= dense_cap();
  const bool use_dense =
      method == NormMethod::dense || (method == NormMethod::automatic && dense_ok);
  if (use_dense) {
    *method_tag = "dense-exact";
    return spectral_norm_dense(factorization.solve_matrix(op.dense()));
  }
  *method_tag = "estimated";
  LinearOperator lin;
  lin.rows = op.order();
  lin.cols = op.order();
  lin.apply = [&](const Vector& x) { return factorization.solve(op.apply(x)); };
  lin.apply_transpose = [&](const Vector& y) {
    return op.apply_transpose(factorization.solve_transpose(y));
  };
  PceOptions opts;
  const PceResult r = pce_spectral_norm(lin, opts);
  return r.estimate;
}

double scaled_operator_weighted_norm(const SystemFactorization& factorization,
                                     const ScaledDataOperator& h,
                                     NormMethod method,
                                     std::string* method_tag) {
  const bool dense_ok = h.rows() <= dense_cap();
  const bool use_dense =
      method == NormMethod::dense || (method == NormMethod::automatic && dense_ok);
  if (use_dense) {
    *method_tag = "dense-exact";
    return spectral_norm_dense(factorization.solve_matrix(h.dense()));
  }
  *method_tag = "estimated";
  LinearOperator lin;
  lin.rows = h.rows();
  lin.cols = h.cols();
  lin.apply = [&](const Vector& x) { return factorization.solve(h.apply(x)); };
  lin.apply_transpose = [&](const Vector& y) {
    return h.apply_transpose(factorization.solve_transpose(y));
  };
  PceOptions opts;
  const PceResult r = pce_spectral_norm(lin, opts);
  return r.estimate;
}

}  // namespace

PerturbationBoundReport normwise_bounds(const PgcsProblem& problem,
                                        const PgcsSolution& solution,
                                        const PerturbationSet& delta,
                                        const ToleranceSet& tol,
                                        NormMethod method) {
  validate_or_throw(problem);
  const SystemFactorization factorization(
      SystemOperator::from_problem(problem).dense());
  const SystemOperator delta_op = SystemOperator::from_perturbation(delta);

  PerturbationBoundReport report;
  std::string tag_contraction, tag_weighted;
  report.contraction_norm =
      solve_weighted_norm(factorization, delta_op, method, &tag_contraction);
  const ScaledDataOperator h1(solution, tol, problem.p, problem.m, problem.n);
  const double weighted_norm =
      scaled_operator_weighted_norm(factorization, h1, method, &tag_weighted);
  report.norm_method =
      (tag_contraction == "dense-exact" && tag_weighted == "dense-exact")
          ? "dense-exact"
          : "estimated";

  const Vector u = pack_perturbation_vector(delta, tol);
  report.epsilon = max_scaled_block_norm(delta, tol);
  const double root = std::sqrt(6.0 * problem.p);
  report.first_order_normwise = root * weighted_norm * report.epsilon;
  report.applicable = report.contraction_norm < 1.0;
  if (report.applicable) {
    const double resolvent = 1.0 - report.contraction_norm;
    report.rigorous_normwise = weighted_norm * u.norm() / resolvent;
    report.rigorous_normwise_eps =
        root * weighted_norm * report.epsilon / resolvent;
  } else {
    report.rigorous_normwise = std::numeric_limits<double>::infinity();
    report.rigorous_normwise_eps = std::numeric_limits<double>::infinity();
  }
  return report;
}

ComponentwiseBoundReport componentwise_bounds(const PgcsProblem& problem,
                                              const PgcsSolution& solution,
                                              const PerturbationSet& delta,
                                              const ToleranceSet& tol) {
  validate_or_throw(problem);
  const SystemFactorization factorization(
      SystemOperator::from_problem(problem).dense());
  const Matrix delta_dense = SystemOperator::from_perturbation(delta).dense();
  const Matrix contraction_abs =
      factorization.solve_matrix(delta_dense).cwiseAbs();

  ComponentwiseBoundReport report;
  const SpectralRadiusResult radius = spectral_radius_nonneg(contraction_abs);
  report.perron_radius = radius.value;
  report.perron_converged = radius.converged;

  const ScaledDataOperator h1(solution, tol, problem.p, problem.m, problem.n);
  const Vector u = pack_perturbation_vector(delta, tol);
  report.first_order_componentwise =
      factorization.solve(h1.apply(u)).cwiseAbs();

  report.applicable = radius.converged && radius.value < 1.0;
  if (report.applicable) {
    const Matrix resolvent =
        Matrix::Identity(contraction_abs.rows(), contraction_abs.cols()) -
        contraction_abs;
    report.rigorous_componentwise =
        resolvent.partialPivLu().solve(report.first_order_componentwise);
  } else {
    report.rigorous_componentwise = Vector::Constant(
        report.first_order_componentwise.size(),
        std::numeric_limits<double>::infinity());
  }
  return report;
}

}  // namespace pgcs
