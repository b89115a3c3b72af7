#include "pgcs/conditioning.hpp"

#include <cmath>

#include "pgcs/assembly.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/solver.hpp"

namespace pgcs {
namespace {

// omega = |W^{-1} H2| |t| accumulated one data-family slab at a time, in the
// fixed (A, B, E, C, D, F) per-period order. Each slab of W^{-1} H2 is the
// mn-column band of W^{-1} at the family's block row times the family's
// Kronecker block, so memory stays at order x max(m^2, n^2, mn).
Vector omega_slabwise(const Matrix& w_inverse, const PgcsProblem& problem,
                      const PgcsSolution& solution) {
  const int p = problem.p, m = problem.m, n = problem.n;
  const Eigen::Index mn = static_cast<Eigen::Index>(m) * n;
  const Matrix eye_m = Matrix::Identity(m, m);
  const Matrix eye_n = Matrix::Identity(n, n);
  Vector omega = Vector::Zero(w_inverse.rows());
  for (int k = 0; k < p; ++k) {
    const Eigen::Index r1 = 2 * k * mn;
    const Eigen::Index r2 = (2 * k + 1) * mn;
    const auto band1 = w_inverse.middleCols(r1, mn);
    const auto band2 = w_inverse.middleCols(r2, mn);

    omega += (band1 * kronecker(solution.X[k].transpose(), eye_m))
                 .cwiseAbs() * vectorize(problem.A[k]).cwiseAbs();
    omega += (band1 * kronecker(eye_n, solution.Y[k])).cwiseAbs() *
             vectorize(problem.B[k]).cwiseAbs();
    omega += band1.cwiseAbs() * vectorize(problem.E[k]).cwiseAbs();
    omega += (band2 * kronecker(solution.x_cyclic(k + 1).transpose(), eye_m))
                 .cwiseAbs() * vectorize(problem.C[k]).cwiseAbs();
    omega += (band2 * kronecker(eye_n, solution.Y[k])).cwiseAbs() *
             vectorize(problem.D[k]).cwiseAbs();
    omega += band2.cwiseAbs() * vectorize(problem.F[k]).cwiseAbs();
  }
  return omega;
}

double stack_max_norm(const PgcsProblem& problem, const PgcsSolution& solution) {
  double best = 0.0;
  for (int k = 0; k < problem.p; ++k) {
    const Matrix first = problem.A[k].cwiseAbs() * solution.X[k].cwiseAbs() +
                         solution.Y[k].cwiseAbs() * problem.B[k].cwiseAbs() +
                         problem.E[k].cwiseAbs();
    const Matrix second =
        problem.C[k].cwiseAbs() * solution.x_cyclic(k + 1).cwiseAbs() +
        solution.Y[k].cwiseAbs() * problem.D[k].cwiseAbs() +
        problem.F[k].cwiseAbs();
    best = std::max({best, first.maxCoeff(), second.maxCoeff()});
  }
  return best;
}

}  // namespace

Vector entrywise_divide(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("entrywise_divide: length mismatch");
  }
  Vector out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out[i] = b[i] != 0.0 ? a[i] / b[i] : a[i];
  }
  return out;
}

ConditionReport condition_numbers(const PgcsProblem& problem,
                                  const PgcsSolution& solution,
                                  const ToleranceSet& tol) {
  validate_or_throw(problem);
  const SystemFactorization factorization(
      SystemOperator::from_problem(problem).dense());
  const Matrix w_inverse = factorization.inverse();

  const Vector z = stack_solution(solution);
  const double z_fro = z.norm();
  const double z_max = z.cwiseAbs().maxCoeff();
  const Vector t = pack_data_vector(problem);
  const Vector g = stack_rhs(problem);

  const ScaledDataOperator h1(solution, tol, problem.p, problem.m, problem.n);
  const ScaledDataOperator h2(solution, ToleranceSet::unit(problem.p),
                              problem.p, problem.m, problem.n);

  ConditionReport report;
  report.k_n1 = spectral_norm_dense(w_inverse * h1.dense()) / z_fro;
  report.k_n2 = spectral_norm_dense(w_inverse * h2.dense()) * t.norm() / z_fro;
  report.k_e = spectral_norm_dense(w_inverse) * g.norm() / z_fro;

  const Vector omega = omega_slabwise(w_inverse, problem, solution);
  report.mixed = omega.lpNorm<Eigen::Infinity>() / z_max;
  report.componentwise =
      entrywise_divide(omega, z).lpNorm<Eigen::Infinity>();

  const ConditionUpperBounds upper = condition_upper_bounds(problem, solution);
  report.mixed_upper = upper.mixed_upper;
  report.componentwise_upper = upper.componentwise_upper;
  report.method = "dense-exact";
  return report;
}

ConditionUpperBounds condition_upper_bounds(const PgcsProblem& problem,
                                            const PgcsSolution& solution) {
  validate_or_throw(problem);
  const SystemFactorization factorization(
      SystemOperator::from_problem(problem).dense());
  const Matrix w_inverse = factorization.inverse();
  const Vector z = stack_solution(solution);
  const double z_max = z.cwiseAbs().maxCoeff();
  const double stack_max = stack_max_norm(problem, solution);

  ConditionUpperBounds out;
  const double w_inf = w_inverse.cwiseAbs().rowwise().sum().maxCoeff();
  out.mixed_upper = w_inf / z_max * stack_max;

  // Rows of W^{-1} scaled by the pseudo-reciprocal of the solution entries
  // (1/z_i when z_i != 0, 1 otherwise).
  Matrix scaled = w_inverse;
  for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
    if (z[i] != 0.0) scaled.row(i) /= z[i];
  }
  out.componentwise_upper =
      scaled.cwiseAbs().rowwise().sum().maxCoeff() * stack_max;
  return out;
}

}  // namespace pgcs
