#ifndef PGCS_PERTURBATION_HPP
#define PGCS_PERTURBATION_HPP

#include <string>

#include "pgcs/problem.hpp"

namespace pgcs {

// Rigorous and first-order normwise bounds on the solution change under a
// given perturbation. The bounds hold when the contraction condition
// ||W^{-1} dW||_2 < 1 is met; otherwise applicable is false and the rigorous
// bounds are +inf.
struct PerturbationBoundReport {
  double contraction_norm = 0.0;       // ||W^{-1} dW||_2
  double rigorous_normwise = 0.0;      // ||W^{-1}H1||_2 ||u||_2 / (1 - c)
  double rigorous_normwise_eps = 0.0;  // sqrt(6p) ||W^{-1}H1||_2 eps / (1 - c)
  double epsilon = 0.0;                // max tolerance-scaled block norm
  double first_order_normwise = 0.0;   // sqrt(6p) ||W^{-1}H1||_2 eps
  bool applicable = false;
  std::string norm_method;  // "dense-exact" or "estimated"
};

// Componentwise analogue gated on radius(|W^{-1} dW|) < 1. The rigorous
// vector is (I - |W^{-1} dW|)^{-1} |W^{-1} H1 u|; the first-order vector is
// |W^{-1} H1 u|.
struct ComponentwiseBoundReport {
  double perron_radius = 0.0;
  bool perron_converged = false;
  Vector rigorous_componentwise;
  Vector first_order_componentwise;
  bool applicable = false;
};

enum class NormMethod { automatic, dense, estimated };

PerturbationBoundReport normwise_bounds(const PgcsProblem& problem,
                                        const PgcsSolution& solution,
                                        const PerturbationSet& delta,
                                        const ToleranceSet& tol,
                                        NormMethod method = NormMethod::automatic);

ComponentwiseBoundReport componentwise_bounds(const PgcsProblem& problem,
                                              const PgcsSolution& solution,
                                              const PerturbationSet& delta,
                                              const ToleranceSet& tol);

}  // namespace pgcs

#endif
