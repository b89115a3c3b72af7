#ifndef PGCS_ASSEMBLY_HPP
#define PGCS_ASSEMBLY_HPP

#include "pgcs/problem.hpp"

namespace pgcs {

// Order of the coupled linear system: 2mnp.
inline int system_order(int p, int m, int n) { return 2 * m * n * p; }

// Number of stacked data parameters: 2p(m^2 + n^2 + mn).
inline int data_dimension(int p, int m, int n) {
  return 2 * p * (m * m + n * n + m * n);
}

// Size cap for dense constructions; PGCS_DENSE_CAP overrides the default
// of 4000, set_dense_cap overrides both.
int dense_cap();
void set_dense_cap(int cap);  // cap <= 0 restores env/default behavior

// The block-cyclic system operator. Built from the coefficient families
// (A, B, C, D) it applies W of the linearized equation W z = g; built from a
// PerturbationSet it applies the structurally identical update operator.
// Immutable after construction; apply/apply_transpose are const and safe to
// call concurrently.
class SystemOperator {
 public:
  static SystemOperator from_problem(const PgcsProblem& problem);
  static SystemOperator from_perturbation(const PerturbationSet& delta);

  Vector apply(const Vector& z) const;
  Vector apply_transpose(const Vector& w) const;
  // Dense form; throws SizeCapError when order() exceeds dense_cap().
  Matrix dense() const;

  int order() const { return system_order(p_, m_, n_); }
  int period() const { return p_; }

 private:
  SystemOperator(std::vector<Matrix> a, std::vector<Matrix> b,
                 std::vector<Matrix> c, std::vector<Matrix> d, int p, int m,
                 int n);

  std::vector<Matrix> a_, b_, c_, d_;
  int p_, m_, n_;
};

// The block-diagonal scaled data operator mapping tolerance-scaled stacked
// perturbation vectors to residual-space vectors. Per period k its block row
// pair is
//
//   [ alpha_k (X_k^T (x) I)   -beta_k (I (x) Y_k)   -gamma_k I       0 ... ]
//   [ 0 ...                    zeta_k (X_{k+1}^T (x) I)   -tau_k (I (x) Y_k)   -delta_k I ]
//
// Unit tolerances give the derivative-side operator; a candidate solution
// gives the backward-error operator.
class ScaledDataOperator {
 public:
  ScaledDataOperator(const PgcsSolution& solution, const ToleranceSet& tol,
                     int p, int m, int n);

  Vector apply(const Vector& u) const;
  Vector apply_transpose(const Vector& w) const;
  // Dense 2mnp x q form; throws SizeCapError when rows() exceeds dense_cap().
  Matrix dense() const;

  int rows() const { return system_order(p_, m_, n_); }
  int cols() const { return data_dimension(p_, m_, n_); }

 private:
  std::vector<Matrix> x_, y_;
  ToleranceSet tol_;
  int p_, m_, n_;
};

// Stacked data vector [vec(A_0); vec(B_0); vec(E_0); vec(C_0); vec(D_0);
// vec(F_0); ...] matching the ScaledDataOperator column order.
Vector pack_data_vector(const PgcsProblem& problem);

// Stacked perturbation vector with each family block divided by its
// tolerance. Throws ValidationError on nonpositive tolerances.
Vector pack_perturbation_vector(const PerturbationSet& delta,
                                const ToleranceSet& tol);

// Inverse of pack_perturbation_vector (multiplies the blocks back).
PerturbationSet unpack_perturbation_vector(const Vector& u,
                                           const ToleranceSet& tol, int p,
                                           int m, int n);

}  // namespace pgcs

#endif
