#ifndef PGCS_PROBLEM_HPP
#define PGCS_PROBLEM_HPP

#include <string>
#include <vector>

#include "pgcs/kron.hpp"

namespace pgcs {

// Coefficient bundle of the periodic generalized coupled Sylvester equation
//
//   A_k X_k     - Y_k B_k = E_k
//   C_k X_{k+1} - Y_k D_k = F_k      k = 0..p-1, X_p identified with X_0.
//
// A_k, C_k are m x m; B_k, D_k are n x n; E_k, F_k are m x n.
struct PgcsProblem {
  int p = 0;
  int m = 0;
  int n = 0;
  std::vector<Matrix> A, B, C, D, E, F;
};

// Candidate or exact solution; X_k, Y_k are m x n with cyclic X indexing.
struct PgcsSolution {
  std::vector<Matrix> X, Y;

  const Matrix& x_cyclic(int k) const {
    return X[static_cast<std::size_t>(k) % X.size()];
  }
};

// Per-period positive weights for the six perturbation families, in the
// fixed family order (A, B, E, C, D, F).
struct ToleranceSet {
  Vector alpha;  // A
  Vector beta;   // B
  Vector gamma;  // E
  Vector zeta;   // C
  Vector tau;    // D
  Vector delta;  // F

  static ToleranceSet unit(int p);
};

struct PerturbationSet {
  std::vector<Matrix> dA, dB, dC, dD, dE, dF;

  static PerturbationSet zero(int p, int m, int n);
};

struct ResidualSet {
  std::vector<Matrix> R1, R2;
};

// Shape/finiteness diagnostics; empty means the bundle is well formed.
std::vector<std::string> validate(const PgcsProblem& problem);
// Throws ValidationError with the joined diagnostics.
void validate_or_throw(const PgcsProblem& problem);

// R1_k = E_k - (A_k X_k - Y_k B_k), R2_k = F_k - (C_k X_{k+1} - Y_k D_k).
ResidualSet residual(const PgcsProblem& problem, const PgcsSolution& candidate);

// Frobenius norm of each coefficient matrix. Throws ValidationError if any
// matrix is identically zero (a zero weight is not usable downstream).
ToleranceSet default_tolerances(const PgcsProblem& problem);

PgcsProblem apply_perturbation(const PgcsProblem& problem,
                               const PerturbationSet& delta);

// Stacked solution vector [vec(X_0); vec(Y_0); ...; vec(X_{p-1}); vec(Y_{p-1})].
Vector stack_solution(const PgcsSolution& solution);
PgcsSolution unstack_solution(const Vector& z, int p, int m, int n);

// Right-hand-side vector [vec(E_0); vec(F_0); ...] in the same block layout.
Vector stack_rhs(const PgcsProblem& problem);
// Residual vector [vec(R1_0); vec(R2_0); ...].
Vector stack_residual(const ResidualSet& r);

double solution_frobenius_norm(const PgcsSolution& solution);
double solution_max_norm(const PgcsSolution& solution);

}  // namespace pgcs

#endif
