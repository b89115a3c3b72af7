#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "doctest.h"

#include "oracles.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/solver.hpp"

using namespace pgcs;

namespace {

PgcsProblem scalar_problem() {
  PgcsProblem problem;
  problem.p = 1;
  problem.m = 1;
  problem.n = 1;
  problem.A = {Matrix::Constant(1, 1, 2.0)};
  problem.B = {Matrix::Constant(1, 1, 1.0)};
  problem.C = {Matrix::Constant(1, 1, 1.0)};
  problem.D = {Matrix::Constant(1, 1, 3.0)};
  problem.E = {Matrix::Constant(1, 1, 1.0)};
  problem.F = {Matrix::Constant(1, 1, 2.0)};
  return problem;
}

double scaled_residual_max(const PgcsProblem& problem,
                           const PgcsSolution& solution) {
  const ResidualSet r = residual(problem, solution);
  double coeff_max = 0.0;
  for (const auto* family :
       {&problem.A, &problem.B, &problem.C, &problem.D, &problem.E,
        &problem.F}) {
    for (const Matrix& m : *family)
      coeff_max = std::max(coeff_max, m.cwiseAbs().maxCoeff());
  }
  return stack_residual(r).cwiseAbs().maxCoeff() / (1.0 + coeff_max);
}

}  // namespace

TEST_CASE("scalar bundle solves by hand") {
  const PgcsSolution solution = solve_pgcs(scalar_problem());
  CHECK(solution.X[0](0, 0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(solution.Y[0](0, 0) == doctest::Approx(-0.6).epsilon(1e-12));
}

TEST_CASE("identity system returns the right-hand sides") {
  CounterRng rng(31);
  PgcsProblem problem;
  problem.p = 1;
  problem.m = 3;
  problem.n = 2;
  problem.A = {Matrix::Identity(3, 3)};
  problem.B = {Matrix::Zero(2, 2)};
  problem.C = {Matrix::Zero(3, 3)};
  problem.D = {-Matrix::Identity(2, 2)};
  problem.E = {rng.normal_matrix(3, 2)};
  problem.F = {rng.normal_matrix(3, 2)};
  const PgcsSolution solution = solve_pgcs(problem);
  CHECK(testing::relative_error(solution.X[0], problem.E[0]) <= 1e-14);
  CHECK(testing::relative_error(solution.Y[0], problem.F[0]) <= 1e-14);
}

TEST_CASE("singular coupling is reported") {
  PgcsProblem problem = scalar_problem();
  problem.A[0](0, 0) = 1.0;
  problem.B[0](0, 0) = 1.0;
  problem.C[0](0, 0) = 1.0;
  problem.D[0](0, 0) = 1.0;
  CHECK_THROWS_AS(solve_pgcs(problem), SingularSystemError);
}

TEST_CASE("solve then residual stays small on random instances") {
  CounterRng rng(32);
  int solved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + static_cast<int>(rng.next_u64() % 4);
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    const PgcsProblem problem = testing::random_problem(rng, p, m, n);
    PgcsSolution solution;
    try {
      solution = solve_pgcs(problem);
    } catch (const SingularSystemError&) {
      continue;
    }
    ++solved;
    CHECK(scaled_residual_max(problem, solution) <= 1e-10);
  }
  CHECK(solved >= 95);
}

TEST_CASE("minimum-norm least squares") {
  SUBCASE("zero residual gives the zero solution") {
    CounterRng rng(33);
    const Matrix h = rng.normal_matrix(4, 9);
    CHECK(min_norm_least_squares(h, Vector::Zero(4)).norm() == 0.0);
  }
  SUBCASE("two identity blocks split evenly") {
    Matrix h(3, 6);
    h << Matrix::Identity(3, 3), Matrix::Identity(3, 3);
    CounterRng rng(34);
    const Vector r = rng.normal_vector(3);
    const Vector u = min_norm_least_squares(h, r);
    CHECK(testing::relative_error(Vector(u.head(3)), Vector(r / 2)) <= 1e-14);
    CHECK(testing::relative_error(Vector(u.tail(3)), Vector(r / 2)) <= 1e-14);
  }
  SUBCASE("feasibility, optimality, and pseudoinverse agreement") {
    CounterRng rng(35);
    const Matrix h = rng.normal_matrix(6, 15);
    const Vector r = rng.normal_vector(6);
    const Vector u = min_norm_least_squares(h, r);
    CHECK((h * u - r).norm() <= 1e-11 * r.norm());

    Eigen::BDCSVD<Matrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector u_pinv = svd.solve(r);
    CHECK(testing::relative_error(u, u_pinv) <= 1e-11);

    // Null-space characterization of minimality.
    const Matrix projector =
        Matrix::Identity(15, 15) - svd.matrixV() * svd.matrixV().transpose();
    for (int trial = 0; trial < 100; ++trial) {
      const Vector w = projector * rng.normal_vector(15);
      if (trial < 20) CHECK(std::abs(u.dot(w)) <= 1e-11 * u.norm() * w.norm());
      CHECK(u.norm() <= (u + w).norm() * (1 + 1e-12));
    }
  }
  SUBCASE("rank-deficient operators are reported") {
    Matrix h = Matrix::Zero(3, 8);
    h.row(0).setConstant(1.0);
    h.row(1).setConstant(2.0);  // linearly dependent rows
    h(2, 3) = 1.0;
    CHECK_THROWS_AS(min_norm_least_squares(h, Vector::Ones(3)),
                    RankDeficientError);
  }
}

TEST_CASE("dense spectral norm") {
  CHECK(spectral_norm_dense(Matrix::Identity(5, 5)) == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(spectral_norm_dense(d) == doctest::Approx(3.0));

  Matrix w_inverse(2, 2);
  w_inverse << 0.6, -0.2, 0.2, -0.4;
  CHECK(spectral_norm_dense(w_inverse) ==
        doctest::Approx(std::sqrt((0.6 + std::sqrt(0.2)) / 2.0))
            .epsilon(1e-12));

  CounterRng rng(36);
  const Matrix r = rng.normal_matrix(18, 25);
  CHECK(spectral_norm_dense(r) ==
        doctest::Approx(spectral_norm_dense(r.transpose())).epsilon(1e-12));
}

TEST_CASE("nonnegative spectral radius by power iteration") {
  CHECK(spectral_radius_nonneg(Matrix::Zero(4, 4)).value == 0.0);

  const SpectralRadiusResult half =
      spectral_radius_nonneg(0.5 * Matrix::Identity(6, 6));
  CHECK(half.converged);
  CHECK(half.value == doctest::Approx(0.5).epsilon(1e-8));

  CounterRng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = rng.normal_matrix(8, 8).cwiseAbs();
    const SpectralRadiusResult result = spectral_radius_nonneg(m);
    const Eigen::EigenSolver<Matrix> eig(m);
    const double dominant = eig.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(result.converged);
    CHECK(result.value == doctest::Approx(dominant).epsilon(1e-6));
  }
}
