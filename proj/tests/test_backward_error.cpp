#include <cmath>

#include <Eigen/SVD>

#include "doctest.h"

#include "oracles.hpp"
#include "pgcs/assembly.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/backward_error.hpp"
#include "pgcs/solver.hpp"

using namespace pgcs;

namespace {

PgcsProblem certified_random_problem(CounterRng& rng, int p, int m, int n) {
  while (true) {
    const PgcsProblem problem = testing::random_problem(rng, p, m, n);
    try {
      const PgcsSolution solution = solve_pgcs(problem);
      if (solution_max_norm(solution) > 1e-6) return problem;
    } catch (const SingularSystemError&) {
    }
  }
}

}  // namespace

TEST_CASE("exact solutions have vanishing backward error") {
  CounterRng rng(41);
  const PgcsProblem problem = certified_random_problem(rng, 2, 3, 2);
  const PgcsSolution solution = solve_pgcs(problem);
  const ToleranceSet tol = default_tolerances(problem);
  const BackwardErrorReport report =
      backward_error_bounds(problem, solution, tol);
  CHECK(report.upper <= 1e-12 * (1.0 + solution_frobenius_norm(solution)));
  CHECK(report.lower <= report.upper);
}

TEST_CASE("bracket ratio is exactly one over sqrt(6p)") {
  CounterRng rng(42);
  for (int p : {1, 2, 3}) {
    const PgcsProblem problem = certified_random_problem(rng, p, 2, 2);
    PgcsSolution candidate = solve_pgcs(problem);
    candidate.X[0](0, 0) += 0.01;
    const BackwardErrorReport report =
        backward_error_bounds(problem, candidate, default_tolerances(problem));
    CHECK(report.lower ==
          doctest::Approx(report.upper / std::sqrt(6.0 * p)).epsilon(1e-15));
  }
}

TEST_CASE("noisy candidates land in the expected band and reconstruct") {
  CounterRng rng(43);
  const PgcsProblem problem = certified_random_problem(rng, 3, 4, 3);
  const ToleranceSet tol = default_tolerances(problem);
  PgcsSolution candidate = solve_pgcs(problem);
  for (int k = 0; k < problem.p; ++k) {
    candidate.X[k] += 1e-6 * rng.normal_matrix(problem.m, problem.n);
    candidate.Y[k] += 1e-6 * rng.normal_matrix(problem.m, problem.n);
  }
  const BackwardErrorReport report =
      backward_error_bounds(problem, candidate, tol);
  CHECK(report.upper >= 1e-8);
  CHECK(report.upper <= 1e-4);

  // The attaining perturbation makes the candidate an exact solution.
  const PgcsProblem perturbed = apply_perturbation(problem, report.attaining);
  const Vector r = stack_residual(residual(perturbed, candidate));
  double coeff_max = 0.0;
  for (const Matrix& a : problem.A)
    coeff_max = std::max(coeff_max, a.cwiseAbs().maxCoeff());
  CHECK(r.cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + coeff_max));
}

TEST_CASE("minimality among residual-reproducing perturbations") {
  CounterRng rng(44);
  const PgcsProblem problem = certified_random_problem(rng, 2, 3, 2);
  const ToleranceSet tol = default_tolerances(problem);
  PgcsSolution candidate = solve_pgcs(problem);
  candidate.Y[1] += 0.05 * rng.normal_matrix(problem.m, problem.n);

  const ScaledDataOperator h(candidate, tol, problem.p, problem.m, problem.n);
  const Matrix h_dense = h.dense();
  const Vector u = pack_perturbation_vector(
      backward_error_bounds(problem, candidate, tol).attaining, tol);

  Eigen::BDCSVD<Matrix> svd(h_dense,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix null_projector =
      Matrix::Identity(h_dense.cols(), h_dense.cols()) -
      svd.matrixV() * svd.matrixV().transpose();
  for (int trial = 0; trial < 50; ++trial) {
    const Vector alternative = u + null_projector * rng.normal_vector(h_dense.cols());
    CHECK(testing::relative_error(Vector(h_dense * alternative),
                                  Vector(h_dense * u)) <= 1e-10);
    CHECK(u.norm() <= alternative.norm() * (1 + 1e-12));
  }
}

TEST_CASE("doubling every tolerance halves the bracket") {
  CounterRng rng(45);
  const PgcsProblem problem = certified_random_problem(rng, 2, 2, 2);
  PgcsSolution candidate = solve_pgcs(problem);
  candidate.X[0] += 0.02 * rng.normal_matrix(2, 2);

  const ToleranceSet tol = default_tolerances(problem);
  ToleranceSet doubled = tol;
  doubled.alpha *= 2.0;
  doubled.beta *= 2.0;
  doubled.gamma *= 2.0;
  doubled.zeta *= 2.0;
  doubled.tau *= 2.0;
  doubled.delta *= 2.0;

  const BackwardErrorReport base =
      backward_error_bounds(problem, candidate, tol);
  const BackwardErrorReport halved =
      backward_error_bounds(problem, candidate, doubled);
  CHECK(halved.upper == doctest::Approx(base.upper / 2).epsilon(1e-10));
  CHECK(halved.lower == doctest::Approx(base.lower / 2).epsilon(1e-10));

  // The reconstructed residual-side product is tolerance invariant.
  const ScaledDataOperator h_base(candidate, tol, problem.p, problem.m,
                                  problem.n);
  const ScaledDataOperator h_doubled(candidate, doubled, problem.p, problem.m,
                                     problem.n);
  const Vector u_base = pack_perturbation_vector(base.attaining, tol);
  const Vector u_doubled = pack_perturbation_vector(halved.attaining, doubled);
  CHECK(testing::relative_error(h_base.apply(u_base),
                                h_doubled.apply(u_doubled)) <= 1e-10);
  CHECK(testing::relative_error(u_doubled, Vector(u_base / 2)) <= 1e-9);
}

TEST_CASE("single-period bundles use the sqrt(6) bracket") {
  CounterRng rng(46);
  const PgcsProblem problem = certified_random_problem(rng, 1, 3, 3);
  PgcsSolution candidate = solve_pgcs(problem);
  candidate.X[0] += 0.01 * rng.normal_matrix(3, 3);
  const BackwardErrorReport report =
      backward_error_bounds(problem, candidate, default_tolerances(problem));
  CHECK(report.lower ==
        doctest::Approx(report.upper / std::sqrt(6.0)).epsilon(1e-15));
}
