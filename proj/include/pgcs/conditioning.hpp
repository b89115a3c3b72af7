#ifndef PGCS_CONDITIONING_HPP
#define PGCS_CONDITIONING_HPP

#include <string>

#include "pgcs/problem.hpp"

namespace pgcs {

// Exact condition numbers of the coupled equation at a solution:
//   k_n1            normwise, tolerance-weighted derivative norm
//   k_n2            normwise, unit-weighted derivative norm times the data norm
//   k_e             effective (right-hand-side perturbations only)
//   mixed           max-norm output error per componentwise input perturbation
//   componentwise   componentwise output error per componentwise input
// plus cheap upper bounds for the last two.
struct ConditionReport {
  double k_n1 = 0.0;
  double k_n2 = 0.0;
  double k_e = 0.0;
  double mixed = 0.0;
  double componentwise = 0.0;
  double mixed_upper = 0.0;
  double componentwise_upper = 0.0;
  std::string method = "dense-exact";
  std::string tolerance_mode;  // "default", "unit", or "custom"
};

// Dense-path exact evaluation (throws SizeCapError above the cap,
// SingularSystemError if the system operator is singular). k_n1 uses the
// given tolerances; everything else is tolerance-free.
ConditionReport condition_numbers(const PgcsProblem& problem,
                                  const PgcsSolution& solution,
                                  const ToleranceSet& tol);

struct ConditionUpperBounds {
  double mixed_upper = 0.0;
  double componentwise_upper = 0.0;
};

ConditionUpperBounds condition_upper_bounds(const PgcsProblem& problem,
                                            const PgcsSolution& solution);

// Entrywise division with the kept-numerator convention at zero
// denominators: out_i = a_i / b_i if b_i != 0, else a_i.
Vector entrywise_divide(const Vector& a, const Vector& b);

}  // namespace pgcs

#endif
