#include "pgcs/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "pgcs/errors.hpp"
#include "pgcs/rng.hpp"

namespace pgcs {

SystemFactorization::SystemFactorization(Matrix w) {
  if (w.rows() != w.cols()) {
    throw DimensionError("SystemFactorization: matrix must be square");
  }
  inf_norm_ = w.rows() == 0 ? 0.0 : w.cwiseAbs().rowwise().sum().maxCoeff();
  lu_.compute(std::move(w));
  const double pivot_floor = std::numeric_limits<double>::epsilon() *
                             inf_norm_ * static_cast<double>(lu_.rows());
  const double min_pivot = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > pivot_floor)) {
    throw SingularSystemError(
        "system matrix is numerically singular (pivot " +
        std::to_string(min_pivot) + " <= " + std::to_string(pivot_floor) +
        "); the coupled equation has no unique solution");
  }
}

Vector SystemFactorization::solve(const Vector& rhs) const {
  return lu_.solve(rhs);
}

Vector SystemFactorization::solve_transpose(const Vector& rhs) const {
  return lu_.transpose().solve(rhs);
}

Matrix SystemFactorization::solve_matrix(const Matrix& rhs) const {
  return lu_.solve(rhs);
}

Matrix SystemFactorization::inverse() const { return lu_.inverse(); }

PgcsSolution solve_pgcs(const PgcsProblem& problem) {
  validate_or_throw(problem);
  const SystemOperator w = SystemOperator::from_problem(problem);
  const SystemFactorization factorization(w.dense());
  const Vector z = factorization.solve(stack_rhs(problem));
  return unstack_solution(z, problem.p, problem.m, problem.n);
}

Vector min_norm_least_squares(const Matrix& h, const Vector& r) {
  if (h.rows() != r.size()) {
    throw DimensionError("min_norm_least_squares: rhs length mismatch");
  }
  const Eigen::Index rows = h.rows();
  const Eigen::Index cols = h.cols();
  if (cols < rows) {
    throw DimensionError("min_norm_least_squares: operator must have at least "
                         "as many columns as rows");
  }
  const Eigen::HouseholderQR<Matrix> qr(h.transpose());
  const Matrix r_factor =
      qr.matrixQR().topLeftCorner(rows, rows).triangularView<Eigen::Upper>();
  const double max_diag = r_factor.diagonal().cwiseAbs().maxCoeff();
  const double min_diag = r_factor.diagonal().cwiseAbs().minCoeff();
  const double rank_floor = std::numeric_limits<double>::epsilon() *
                            static_cast<double>(cols) * max_diag;
  if (min_diag > rank_floor) {
    const Vector y = r_factor.transpose()
                         .triangularView<Eigen::Lower>()
                         .solve(r);
    Vector padded = Vector::Zero(cols);
    padded.head(rows) = y;
    return qr.householderQ() * padded;
  }
  // Rank warning: fall back to the SVD pseudoinverse path.
  Eigen::BDCSVD<Matrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.rank() < rows) {
    throw RankDeficientError("scaled operator is numerically rank deficient (" +
                             std::to_string(svd.rank()) + " < " +
                             std::to_string(rows) + ")");
  }
  return svd.solve(r);
}

Vector min_norm_ls_solve(const ScaledDataOperator& op, const Vector& r) {
  return min_norm_least_squares(op.dense(), r);
}

double spectral_norm_dense(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= 16) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
  }
  return Eigen::BDCSVD<Matrix>(m).singularValues()(0);
}

namespace {

SpectralRadiusResult power_iteration(const Matrix& m, Vector x,
                                     int max_iterations) {
  SpectralRadiusResult result;
  const double rel_tol = 1e-8;
  x /= x.norm();
  double previous = -1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const Vector next = m * x;
    const double lambda = next.norm();
    result.iterations = it;
    result.value = lambda;
    if (lambda == 0.0) {
      result.converged = true;
      return result;
    }
    if (previous >= 0.0 && std::abs(lambda - previous) <= rel_tol * lambda) {
      result.converged = true;
      return result;
    }
    previous = lambda;
    x = next / lambda;
  }
  return result;
}

}  // namespace

SpectralRadiusResult spectral_radius_nonneg(const Matrix& m,
                                            int max_iterations) {
  if (m.rows() != m.cols()) {
    throw DimensionError("spectral_radius_nonneg: matrix must be square");
  }
  if (m.size() == 0) return {0.0, true, 0};
  SpectralRadiusResult best =
      power_iteration(m, Vector::Ones(m.rows()), max_iterations);
  if (best.converged) return best;
  CounterRng rng(0x5CA1AB1EULL, 0);
  for (int restart = 0; restart < 3 && !best.converged; ++restart) {
    Vector start = rng.normal_vector(m.rows()).cwiseAbs();
    SpectralRadiusResult attempt = power_iteration(m, start, max_iterations);
    if (attempt.converged || attempt.value > best.value) {
      attempt.value = std::max(attempt.value, best.value);
      best = attempt;
    }
  }
  return best;
}

}  // namespace pgcs
