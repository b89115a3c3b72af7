#include "pgcs/problem.hpp"

#include <cmath>
#include <sstream>

#include "pgcs/errors.hpp"

namespace pgcs {
namespace {

void check_family(const std::vector<Matrix>& family, const char* name, int p,
                  Eigen::Index rows, Eigen::Index cols,
                  std::vector<std::string>& issues) {
  if (static_cast<int>(family.size()) != p) {
    std::ostringstream os;
    os << name << ": expected " << p << " matrices, got " << family.size();
    issues.push_back(os.str());
    return;
  }
  for (int k = 0; k < p; ++k) {
    const Matrix& mk = family[static_cast<std::size_t>(k)];
    if (mk.rows() != rows || mk.cols() != cols) {
      std::ostringstream os;
      os << name << "[" << k + 1 << "]: expected " << rows << "x" << cols
         << ", got " << mk.rows() << "x" << mk.cols();
      issues.push_back(os.str());
      continue;
    }
    if (!mk.allFinite()) {
      std::ostringstream os;
      os << name << "[" << k + 1 << "]: contains a non-finite entry";
      issues.push_back(os.str());
    }
  }
}

}  // namespace

ToleranceSet ToleranceSet::unit(int p) {
  ToleranceSet t;
  t.alpha = Vector::Ones(p);
  t.beta = Vector::Ones(p);
  t.gamma = Vector::Ones(p);
  t.zeta = Vector::Ones(p);
  t.tau = Vector::Ones(p);
  t.delta = Vector::Ones(p);
  return t;
}

PerturbationSet PerturbationSet::zero(int p, int m, int n) {
  PerturbationSet d;
  for (int k = 0; k < p; ++k) {
    d.dA.push_back(Matrix::Zero(m, m));
    d.dB.push_back(Matrix::Zero(n, n));
    d.dC.push_back(Matrix::Zero(m, m));
    d.dD.push_back(Matrix::Zero(n, n));
    d.dE.push_back(Matrix::Zero(m, n));
    d.dF.push_back(Matrix::Zero(m, n));
  }
  return d;
}

std::vector<std::string> validate(const PgcsProblem& problem) {
  std::vector<std::string> issues;
  if (problem.p < 1) issues.push_back("p must be >= 1");
  if (problem.m < 1) issues.push_back("m must be >= 1");
  if (problem.n < 1) issues.push_back("n must be >= 1");
  if (!issues.empty()) return issues;

  const int p = problem.p, m = problem.m, n = problem.n;
  check_family(problem.A, "A", p, m, m, issues);
  check_family(problem.B, "B", p, n, n, issues);
  check_family(problem.C, "C", p, m, m, issues);
  check_family(problem.D, "D", p, n, n, issues);
  check_family(problem.E, "E", p, m, n, issues);
  check_family(problem.F, "F", p, m, n, issues);
  return issues;
}

void validate_or_throw(const PgcsProblem& problem) {
  const std::vector<std::string> issues = validate(problem);
  if (issues.empty()) return;
  std::string joined = "invalid problem:";
  for (const std::string& issue : issues) joined += "\n  " + issue;
  throw ValidationError(joined);
}

ResidualSet residual(const PgcsProblem& problem, const PgcsSolution& candidate) {
  const int p = problem.p;
  if (static_cast<int>(candidate.X.size()) != p ||
      static_cast<int>(candidate.Y.size()) != p) {
    throw DimensionError("residual: candidate period does not match problem");
  }
  for (int k = 0; k < p; ++k) {
    if (candidate.X[k].rows() != problem.m || candidate.X[k].cols() != problem.n ||
        candidate.Y[k].rows() != problem.m || candidate.Y[k].cols() != problem.n) {
      throw DimensionError("residual: candidate block " + std::to_string(k + 1) +
                           " has wrong shape");
    }
  }
  ResidualSet r;
  r.R1.reserve(p);
  r.R2.reserve(p);
  for (int k = 0; k < p; ++k) {
    r.R1.push_back(problem.E[k] -
                   (problem.A[k] * candidate.X[k] - candidate.Y[k] * problem.B[k]));
    r.R2.push_back(problem.F[k] - (problem.C[k] * candidate.x_cyclic(k + 1) -
                                   candidate.Y[k] * problem.D[k]));
  }
  return r;
}

ToleranceSet default_tolerances(const PgcsProblem& problem) {
  const int p = problem.p;
  ToleranceSet t;
  t.alpha.resize(p);
  t.beta.resize(p);
  t.gamma.resize(p);
  t.zeta.resize(p);
  t.tau.resize(p);
  t.delta.resize(p);
  const std::vector<Matrix>* families[] = {&problem.A, &problem.B, &problem.E,
                                           &problem.C, &problem.D, &problem.F};
  Vector* weights[] = {&t.alpha, &t.beta, &t.gamma, &t.zeta, &t.tau, &t.delta};
  const char* names[] = {"A", "B", "E", "C", "D", "F"};
  for (int f = 0; f < 6; ++f) {
    for (int k = 0; k < p; ++k) {
      const double norm = (*families[f])[static_cast<std::size_t>(k)].norm();
      if (norm == 0.0) {
        throw ValidationError(
            std::string("default_tolerances: ") + names[f] + "[" +
            std::to_string(k + 1) +
            "] is the zero matrix; supply explicit tolerances instead");
      }
      (*weights[f])[k] = norm;
    }
  }
  return t;
}

PgcsProblem apply_perturbation(const PgcsProblem& problem,
                               const PerturbationSet& delta) {
  const int p = problem.p;
  const auto check = [&](const std::vector<Matrix>& d, Eigen::Index rows,
                         Eigen::Index cols, const char* name) {
    if (static_cast<int>(d.size()) != p) {
      throw DimensionError(std::string("apply_perturbation: ") + name +
                           " has wrong period");
    }
    for (int k = 0; k < p; ++k) {
      if (d[k].rows() != rows || d[k].cols() != cols) {
        throw DimensionError(std::string("apply_perturbation: ") + name + "[" +
                             std::to_string(k + 1) + "] has wrong shape");
      }
    }
  };
  check(delta.dA, problem.m, problem.m, "dA");
  check(delta.dB, problem.n, problem.n, "dB");
  check(delta.dC, problem.m, problem.m, "dC");
  check(delta.dD, problem.n, problem.n, "dD");
  check(delta.dE, problem.m, problem.n, "dE");
  check(delta.dF, problem.m, problem.n, "dF");

  PgcsProblem out = problem;
  for (int k = 0; k < p; ++k) {
    out.A[k] += delta.dA[k];
    out.B[k] += delta.dB[k];
    out.C[k] += delta.dC[k];
    out.D[k] += delta.dD[k];
    out.E[k] += delta.dE[k];
    out.F[k] += delta.dF[k];
  }
  return out;
}

Vector stack_solution(const PgcsSolution& solution) {
  const int p = static_cast<int>(solution.X.size());
  const Eigen::Index mn = solution.X.empty() ? 0 : solution.X[0].size();
  Vector z(2 * p * mn);
  for (int k = 0; k < p; ++k) {
    z.segment(2 * k * mn, mn) = vectorize(solution.X[k]);
    z.segment((2 * k + 1) * mn, mn) = vectorize(solution.Y[k]);
  }
  return z;
}

PgcsSolution unstack_solution(const Vector& z, int p, int m, int n) {
  const Eigen::Index mn = static_cast<Eigen::Index>(m) * n;
  if (z.size() != 2 * p * mn) {
    throw DimensionError("unstack_solution: vector length " +
                         std::to_string(z.size()) + " != 2mnp");
  }
  PgcsSolution s;
  s.X.reserve(p);
  s.Y.reserve(p);
  for (int k = 0; k < p; ++k) {
    s.X.push_back(unvectorize(z.segment(2 * k * mn, mn), m, n));
    s.Y.push_back(unvectorize(z.segment((2 * k + 1) * mn, mn), m, n));
  }
  return s;
}

Vector stack_rhs(const PgcsProblem& problem) {
  const Eigen::Index mn = static_cast<Eigen::Index>(problem.m) * problem.n;
  Vector g(2 * problem.p * mn);
  for (int k = 0; k < problem.p; ++k) {
    g.segment(2 * k * mn, mn) = vectorize(problem.E[k]);
    g.segment((2 * k + 1) * mn, mn) = vectorize(problem.F[k]);
  }
  return g;
}

Vector stack_residual(const ResidualSet& r) {
  const int p = static_cast<int>(r.R1.size());
  const Eigen::Index mn = r.R1.empty() ? 0 : r.R1[0].size();
  Vector v(2 * p * mn);
  for (int k = 0; k < p; ++k) {
    v.segment(2 * k * mn, mn) = vectorize(r.R1[k]);
    v.segment((2 * k + 1) * mn, mn) = vectorize(r.R2[k]);
  }
  return v;
}

double solution_frobenius_norm(const PgcsSolution& solution) {
  double sum = 0.0;
  for (const Matrix& x : solution.X) sum += x.squaredNorm();
  for (const Matrix& y : solution.Y) sum += y.squaredNorm();
  return std::sqrt(sum);
}

double solution_max_norm(const PgcsSolution& solution) {
  double best = 0.0;
  for (const Matrix& x : solution.X)
    best = std::max(best, x.cwiseAbs().maxCoeff());
  for (const Matrix& y : solution.Y)
    best = std::max(best, y.cwiseAbs().maxCoeff());
  return best;
}

}  // namespace pgcs
