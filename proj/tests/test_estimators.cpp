#include <cmath>

#include <Eigen/SVD>

#include "doctest.h"

#include "oracles.hpp"
#include "pgcs/assembly.hpp"
#include "pgcs/conditioning.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/estimators.hpp"
#include "pgcs/solver.hpp"

using namespace pgcs;

namespace {

LinearOperator dense_operator(const Matrix& m) {
  LinearOperator op;
  op.rows = m.rows();
  op.cols = m.cols();
  op.apply = [m](const Vector& x) { return Vector(m * x); };
  op.apply_transpose = [m](const Vector& y) {
    return Vector(m.transpose() * y);
  };
  return op;
}

PgcsProblem certified_random_problem(CounterRng& rng, int p, int m, int n) {
  while (true) {
    const PgcsProblem problem = testing::random_problem(rng, p, m, n);
    try {
      const Matrix w = SystemOperator::from_problem(problem).dense();
      const SystemFactorization f(w);
      if (spectral_norm_dense(f.inverse()) * spectral_norm_dense(w) < 1e6) {
        return problem;
      }
    } catch (const SingularSystemError&) {
    }
  }
}

}  // namespace

TEST_CASE("Wallis factors") {
  CHECK(wallis(1) == 1.0);
  CHECK(wallis(2) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
  CHECK(wallis(3) == doctest::Approx(0.5).epsilon(1e-15));

  SUBCASE("recurrence matches the direct product loop") {
    for (int p = 3; p <= 51; ++p) {
      double expected;
      if (p % 2 == 1) {
        expected = 1.0;
        for (int k = 3; k <= p - 2; k += 2) expected *= k;
        double denom = 1.0;
        for (int k = 2; k <= p - 1; k += 2) denom *= k;
        expected /= denom;
      } else {
        expected = 2.0 / M_PI;
        for (int k = 2; k <= p - 2; k += 2) expected *= k;
        double denom = 1.0;
        for (int k = 3; k <= p - 1; k += 2) denom *= k;
        expected /= denom;
      }
      CHECK(wallis(p) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
  SUBCASE("approximation accuracy") {
    for (int p : {3, 5, 10, 100, 1000}) {
      CHECK(std::abs(wallis(p, WallisMode::approx) / wallis(p) - 1.0) <= 1e-2);
    }
    // p = 2 is the one dimension where the approximation misses 1%.
    CHECK(wallis(2, WallisMode::approx) / wallis(2) ==
          doctest::Approx(1.0233).epsilon(1e-3));
  }
  CHECK_THROWS_AS(wallis(0), ValidationError);
}

TEST_CASE("identity operator converges in one iteration") {
  const PceResult r = pce_spectral_norm(dense_operator(Matrix::Identity(7, 7)),
                                        PceOptions{});
  CHECK(r.iterations == 1);
  CHECK(r.converged);
  CHECK(r.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.beta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.alpha <= r.beta);
}

TEST_CASE("graded diagonal operator brackets its top singular value") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 1.0;
  PceOptions opts;
  opts.seed = 7;
  const PceResult r = pce_spectral_norm(dense_operator(d), opts);
  CHECK(r.converged);
  CHECK(r.alpha <= 3.0 * (1 + 1e-12));
  CHECK(r.beta >= 3.0 * (1 - 1e-12));
  CHECK(r.beta / r.alpha <= 1.01 + 1e-12);
}

TEST_CASE("bracket coverage over random operators") {
  CounterRng dims(71);
  int upper_misses = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + static_cast<int>(dims.next_u64() % 59);
    const int cols = 2 + static_cast<int>(dims.next_u64() % 59);
    CounterRng entries(72, static_cast<std::uint64_t>(trial));
    Matrix m = entries.normal_matrix(rows, cols);
    if (trial % 3 == 0) {
      Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      Vector graded(svd.singularValues().size());
      for (Eigen::Index i = 0; i < graded.size(); ++i) {
        graded[i] = std::pow(10.0, -8.0 * static_cast<double>(i) /
                                       std::max<Eigen::Index>(1, graded.size() - 1));
      }
      m = svd.matrixU() * graded.asDiagonal() * svd.matrixV().transpose();
    }
    const double sigma = spectral_norm_dense(m);
    PceOptions opts;
    opts.seed = static_cast<std::uint64_t>(trial);
    const PceResult r = pce_spectral_norm(dense_operator(m), opts);
    CHECK(r.alpha <= sigma * (1 + 1e-12));
    if (r.beta < sigma * (1 - 1e-12)) ++upper_misses;
    if (r.converged) CHECK(r.beta / r.alpha <= 1.01 + 1e-12);
  }
  CHECK(upper_misses == 0);
}

TEST_CASE("fixed seeds reproduce results bit for bit") {
  CounterRng rng(73);
  const Matrix m = rng.normal_matrix(20, 14);
  PceOptions opts;
  opts.seed = 99;
  const PceResult a = pce_spectral_norm(dense_operator(m), opts);
  const PceResult b = pce_spectral_norm(dense_operator(m), opts);
  CHECK(a.alpha == b.alpha);
  CHECK(a.beta == b.beta);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("condition estimates track the dense values") {
  CounterRng rng(74);
  const PgcsProblem problem = certified_random_problem(rng, 2, 3, 2);
  const PgcsSolution solution = solve_pgcs(problem);
  const ToleranceSet tol = default_tolerances(problem);
  PceOptions opts;
  opts.seed = 11;
  const PceConditionEstimates est =
      pce_condition_numbers(problem, solution, tol, opts);
  REQUIRE(est.weighted_derivative_norm.converged);
  REQUIRE(est.inverse_norm.converged);

  const ConditionReport exact = condition_numbers(problem, solution, tol);
  CHECK(std::abs(est.k_n1 - exact.k_n1) / exact.k_n1 <=
        opts.delta_gap / 2 + 1e-6);
  CHECK(std::abs(est.k_e - exact.k_e) / exact.k_e <= opts.delta_gap / 2 + 1e-6);
}

TEST_CASE("sce results are deterministic and nonnegative") {
  CounterRng rng(75);
  const PgcsProblem problem = certified_random_problem(rng, 2, 3, 2);
  const PgcsSolution solution = solve_pgcs(problem);
  const SceResult a = sce_condition_numbers(problem, solution, 3, 5);
  const SceResult b = sce_condition_numbers(problem, solution, 3, 5);
  CHECK(a.mixed_est == b.mixed_est);
  CHECK(a.componentwise_est == b.componentwise_est);
  CHECK(a.kappa_abs == b.kappa_abs);
  CHECK(a.kappa_abs.minCoeff() >= 0.0);
  CHECK(a.samples == 3);

  CHECK_THROWS_AS(sce_condition_numbers(problem, solution, 0, 5),
                  ValidationError);
}

TEST_CASE("direction bundles are orthonormal after the draw") {
  // Replicates the documented stream protocol: samples normal vectors from
  // stream 0 and orthonormalizes with one reorthogonalization pass.
  const int q = 36, s = 3;
  CounterRng rng(123, 0);
  Matrix v(q, s);
  for (int j = 0; j < s; ++j) v.col(j) = rng.normal_vector(q);
  for (int j = 0; j < s; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
    v.col(j) /= v.col(j).norm();
  }
  for (int i = 0; i < s; ++i) {
    CHECK(std::abs(v.col(i).norm() - 1.0) <= 1e-12);
    for (int j = i + 1; j < s; ++j)
      CHECK(std::abs(v.col(i).dot(v.col(j))) <= 1e-12);
  }
}

TEST_CASE("full sampling stays within a factor five of the exact values") {
  CounterRng rng(76);
  const PgcsProblem problem = certified_random_problem(rng, 1, 2, 2);
  const PgcsSolution solution = solve_pgcs(problem);
  const int q = data_dimension(1, 2, 2);
  const SceResult sce = sce_condition_numbers(problem, solution, q, 17);
  const ConditionReport exact =
      condition_numbers(problem, solution, default_tolerances(problem));
  CHECK(sce.mixed_est >= exact.mixed / 5.0);
  CHECK(sce.mixed_est <= exact.mixed * 5.0);
  CHECK(sce.componentwise_est >= exact.componentwise / 5.0);
  CHECK(sce.componentwise_est <= exact.componentwise * 5.0);
}

TEST_CASE("scalar bundle with a zero coupled right-hand side") {
  // With A = 1, B = 0, C = 0, D = -1 the system matrix is the identity, so
  // the solution is X = E, Y = F = 0 and the second derivative component of
  // every direction solve is exactly zero.
  PgcsProblem problem;
  problem.p = 1;
  problem.m = 1;
  problem.n = 1;
  problem.A = {Matrix::Constant(1, 1, 1.0)};
  problem.B = {Matrix::Zero(1, 1)};
  problem.C = {Matrix::Zero(1, 1)};
  problem.D = {Matrix::Constant(1, 1, -1.0)};
  problem.E = {Matrix::Constant(1, 1, 2.0)};
  problem.F = {Matrix::Zero(1, 1)};
  const PgcsSolution solution = solve_pgcs(problem);
  CHECK(solution.X[0](0, 0) == doctest::Approx(2.0));
  CHECK(solution.Y[0](0, 0) == doctest::Approx(0.0));

  const SceResult sce = sce_condition_numbers(problem, solution, 3, 21);
  CHECK(sce.kappa_abs[1] == 0.0);
  CHECK(sce.kappa_abs[0] > 0.0);
  // kappa_abs[1] pairs with Y = 0, where the division keeps the numerator,
  // so both estimates reduce to kappa_abs[0] / |X|.
  CHECK(sce.mixed_est == doctest::Approx(sce.kappa_abs[0] / 2.0));
  CHECK(sce.componentwise_est == doctest::Approx(sce.mixed_est));
}
