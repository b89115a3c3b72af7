#ifndef PGCS_EXPERIMENTS_HPP
#define PGCS_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pgcs/conditioning.hpp"
#include "pgcs/problem.hpp"

namespace pgcs {

// Built-in p=3, m=3, n=2 benchmark bundle parametrized by the two
// near-singular diagonal entries B_3(n,n) = 10^{-t}, D_3(n,n) = 10^{-tau}.
// tau and t must lie in {1, 3, 5}.
PgcsProblem benchmark_problem(int tau, int t);

// Solves the benchmark bundle and evaluates all condition numbers. The
// benchmark convention weights k_n1 with unit tolerances.
ConditionReport run_table1(int tau, int t);

struct RatioStats {
  std::vector<double> r_n1, r_e, r_m, r_c;
  std::vector<int> redraws;
  int trials = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double mean_r_n1 = 0.0, var_r_n1 = 0.0;
  double mean_r_e = 0.0, var_r_e = 0.0;
  double mean_r_m = 0.0, var_r_m = 0.0;
  double mean_r_c = 0.0, var_r_c = 0.0;
  // Fractions of trials with the ratio inside [0.2, 5].
  double inside_r_m = 0.0, inside_r_c = 0.0;
};

struct RatioBenchmarkConfig {
  int trials = 1000;
  int samples = 3;
  std::uint64_t seed = 0;
  double eps_prob = 1e-3;
  double delta_gap = 1e-2;
  int p = 3, m = 5, n = 4;
};

// Estimator-vs-exact ratio benchmark on standard-normal instances. Each
// trial draws coefficients, solves, certifies the solve via the scaled
// componentwise residual test (redrawing on failure), and records the four
// estimate/exact ratios. Deterministic given the seed; per-trial streams are
// derived from (seed, trial).
RatioStats run_ratio_benchmark(const RatioBenchmarkConfig& config);

// CSV with header trial,r_N1,r_E,r_m,r_c,redraws.
void write_ratio_csv(const RatioStats& stats, std::ostream& out);

}  // namespace pgcs

#endif
