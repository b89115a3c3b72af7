#include <cmath>

#include "doctest.h"

#include "oracles.hpp"
#include "pgcs/assembly.hpp"
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

}  // namespace

TEST_CASE("dense system matrix for the scalar bundle") {
  const Matrix w = SystemOperator::from_problem(scalar_problem()).dense();
  Matrix expected(2, 2);
  expected << 2, -1, 1, -3;
  CHECK(w == expected);
}

TEST_CASE("identity blocks give the identity system") {
  PgcsProblem problem;
  problem.p = 1;
  problem.m = 2;
  problem.n = 2;
  problem.A = {Matrix::Identity(2, 2)};
  problem.B = {Matrix::Zero(2, 2)};
  problem.C = {Matrix::Zero(2, 2)};
  problem.D = {-Matrix::Identity(2, 2)};
  problem.E = {Matrix::Zero(2, 2)};
  problem.F = {Matrix::Zero(2, 2)};
  CHECK(SystemOperator::from_problem(problem).dense() ==
        Matrix::Identity(8, 8));
}

TEST_CASE("implicit system operator agrees with the explicit construction") {
  CounterRng rng(21);
  const PgcsProblem problem = testing::random_problem(rng, 3, 5, 4);
  const SystemOperator op = SystemOperator::from_problem(problem);
  const Matrix dense = testing::oracle_dense_system(problem);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x = rng.normal_vector(op.order());
    CHECK(testing::relative_error(op.apply(x), Vector(dense * x)) <= 1e-13);
    CHECK(testing::relative_error(op.apply_transpose(x),
                                  Vector(dense.transpose() * x)) <= 1e-13);
  }
  CHECK(testing::relative_error(op.dense(), dense) <= 1e-15);
}

TEST_CASE("perturbation operator") {
  CounterRng rng(22);
  const PgcsProblem problem = testing::random_problem(rng, 2, 3, 2);
  SUBCASE("zero perturbation gives the zero operator") {
    const SystemOperator op = SystemOperator::from_perturbation(
        PerturbationSet::zero(2, 3, 2));
    CHECK(op.dense().isZero(0));
  }
  SUBCASE("coefficient perturbation reproduces the system matrix") {
    PerturbationSet delta = PerturbationSet::zero(2, 3, 2);
    delta.dA = problem.A;
    delta.dB = problem.B;
    delta.dC = problem.C;
    delta.dD = problem.D;
    CHECK(SystemOperator::from_perturbation(delta).dense() ==
          SystemOperator::from_problem(problem).dense());
  }
  SUBCASE("implicit equals explicit") {
    const PerturbationSet delta = testing::random_perturbation(rng, 2, 3, 2);
    const SystemOperator op = SystemOperator::from_perturbation(delta);
    const Matrix dense = testing::oracle_dense_system(delta.dA, delta.dB,
                                                      delta.dC, delta.dD, 2, 3, 2);
    const Vector x = rng.normal_vector(op.order());
    CHECK(testing::relative_error(op.apply(x), Vector(dense * x)) <= 1e-13);
  }
}

TEST_CASE("scaled operator matches the hand-evaluated scalar block") {
  PgcsSolution solution;
  solution.X = {Matrix::Constant(1, 1, 0.2)};
  solution.Y = {Matrix::Constant(1, 1, -0.6)};
  const ScaledDataOperator h(solution, ToleranceSet::unit(1), 1, 1, 1);
  Matrix expected(2, 6);
  expected << 0.2, 0.6, -1, 0, 0, 0,
              0, 0, 0, 0.2, 0.6, -1;
  CHECK(testing::relative_error(h.dense(), expected) <= 1e-15);
}

TEST_CASE("zero solution keeps only the right-hand-side blocks") {
  PgcsSolution solution;
  solution.X = {Matrix::Zero(2, 2)};
  solution.Y = {Matrix::Zero(2, 2)};
  const Matrix h = ScaledDataOperator(solution, ToleranceSet::unit(1), 1, 2, 2)
                       .dense();
  Matrix expected = Matrix::Zero(8, 24);
  expected.block(0, 8, 4, 4) = -Matrix::Identity(4, 4);
  expected.block(4, 20, 4, 4) = -Matrix::Identity(4, 4);
  CHECK(h == expected);
}

TEST_CASE("implicit scaled operator equals the explicit construction") {
  CounterRng rng(23);
  const PgcsSolution solution = testing::random_solution(rng, 3, 4, 3);
  ToleranceSet tol = ToleranceSet::unit(3);
  tol.alpha << 2.0, 0.5, 3.0;
  tol.delta << 1.5, 4.0, 0.25;
  const ScaledDataOperator h(solution, tol, 3, 4, 3);
  const Matrix dense = testing::oracle_dense_scaled(solution, tol, 3, 4, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector u = rng.normal_vector(h.cols());
    const Vector w = rng.normal_vector(h.rows());
    CHECK(testing::relative_error(h.apply(u), Vector(dense * u)) <= 1e-13);
    CHECK(testing::relative_error(h.apply_transpose(w),
                                  Vector(dense.transpose() * w)) <= 1e-13);
  }
  CHECK(testing::relative_error(h.dense(), dense) <= 1e-15);
}

TEST_CASE("data vector packing") {
  CHECK(pack_data_vector(scalar_problem()) ==
        (Vector(6) << 2, 1, 1, 1, 3, 2).finished());

  SUBCASE("a tolerance-scaled unit block packs to a canonical basis vector") {
    PerturbationSet delta = PerturbationSet::zero(1, 1, 1);
    ToleranceSet tol = ToleranceSet::unit(1);
    tol.alpha[0] = 2.5;
    delta.dA[0](0, 0) = 2.5;
    const Vector u = pack_perturbation_vector(delta, tol);
    CHECK(u == (Vector(6) << 1, 0, 0, 0, 0, 0).finished());
  }
  SUBCASE("pack and unpack round-trip") {
    CounterRng rng(24);
    const PerturbationSet delta = testing::random_perturbation(rng, 2, 3, 2);
    ToleranceSet tol = ToleranceSet::unit(2);
    tol.beta << 0.5, 2.0;
    tol.gamma << 4.0, 0.125;
    const Vector u = pack_perturbation_vector(delta, tol);
    const PerturbationSet back = unpack_perturbation_vector(u, tol, 2, 3, 2);
    for (int k = 0; k < 2; ++k) {
      CHECK(testing::relative_error(back.dA[k], delta.dA[k]) <= 1e-15);
      CHECK(testing::relative_error(back.dB[k], delta.dB[k]) <= 1e-15);
      CHECK(testing::relative_error(back.dE[k], delta.dE[k]) <= 1e-15);
      CHECK(testing::relative_error(back.dF[k], delta.dF[k]) <= 1e-15);
    }
  }
  SUBCASE("nonpositive tolerances are rejected") {
    ToleranceSet tol = ToleranceSet::unit(1);
    tol.gamma[0] = 0.0;
    CHECK_THROWS_AS(
        pack_perturbation_vector(PerturbationSet::zero(1, 1, 1), tol),
        ValidationError);
  }
}

TEST_CASE("linearization identity: W z = g at the exact solution") {
  CounterRng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const PgcsProblem problem = testing::random_problem(rng, 2, 3, 2);
    PgcsSolution solution;
    try {
      solution = solve_pgcs(problem);
    } catch (const SingularSystemError&) {
      continue;
    }
    const SystemOperator w = SystemOperator::from_problem(problem);
    const Vector lhs = w.apply(stack_solution(solution));
    CHECK(testing::relative_error(lhs, stack_rhs(problem)) <= 1e-12);
  }
}

TEST_CASE("scaled-operator identity against the defining bilinear form") {
  CounterRng rng(26);
  const int p = 2, m = 3, n = 2;
  const PgcsSolution candidate = testing::random_solution(rng, p, m, n);
  const PerturbationSet delta = testing::random_perturbation(rng, p, m, n);

  ToleranceSet tol_a = ToleranceSet::unit(p);
  ToleranceSet tol_b = ToleranceSet::unit(p);
  tol_b.alpha << 3.0, 0.25;
  tol_b.gamma << 0.5, 8.0;
  tol_b.tau << 2.0, 2.0;

  Vector direct(system_order(p, m, n));
  const Eigen::Index mn = m * n;
  for (int k = 0; k < p; ++k) {
    const Matrix first = delta.dA[k] * candidate.X[k] -
                         candidate.Y[k] * delta.dB[k] - delta.dE[k];
    const Matrix second = delta.dC[k] * candidate.X[(k + 1) % p] -
                          candidate.Y[k] * delta.dD[k] - delta.dF[k];
    direct.segment(2 * k * mn, mn) = vectorize(first);
    direct.segment((2 * k + 1) * mn, mn) = vectorize(second);
  }

  for (const ToleranceSet& tol : {tol_a, tol_b}) {
    const ScaledDataOperator h(candidate, tol, p, m, n);
    const Vector u = pack_perturbation_vector(delta, tol);
    CHECK(testing::relative_error(h.apply(u), direct) <= 1e-13);
  }
}

TEST_CASE("dense constructions refuse to exceed the size cap") {
  CounterRng rng(27);
  const PgcsProblem problem = testing::random_problem(rng, 2, 3, 2);
  set_dense_cap(8);
  CHECK_THROWS_AS(SystemOperator::from_problem(problem).dense(), SizeCapError);
  set_dense_cap(0);
  CHECK_NOTHROW(SystemOperator::from_problem(problem).dense());
}
