#include "pgcs/experiments.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "pgcs/assembly.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/estimators.hpp"
#include "pgcs/rng.hpp"
#include "pgcs/solver.hpp"

namespace pgcs {
namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Shortest round-trip decimal formatting.
std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void mean_and_variance(const std::vector<double>& xs, double* mean,
                       double* variance) {
  const double count = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  *mean = sum / count;
  double acc = 0.0;
  for (double x : xs) acc += (x - *mean) * (x - *mean);
  *variance = acc / count;
}

double inside_fraction(const std::vector<double>& xs, double lo, double hi) {
  int inside = 0;
  for (double x : xs)
    if (x >= lo && x <= hi) ++inside;
  return static_cast<double>(inside) / static_cast<double>(xs.size());
}

}  // namespace

PgcsProblem benchmark_problem(int tau, int t) {
  const auto allowed = [](int v) { return v == 1 || v == 3 || v == 5; };
  if (!allowed(tau) || !allowed(t)) {
    throw ValidationError("benchmark_problem: tau and t must be 1, 3, or 5");
  }
  PgcsProblem problem;
  problem.p = 3;
  problem.m = 3;
  problem.n = 2;
  problem.A = {from_rows({{1, 0, 0.1}, {0, 1, 10}, {0, 0, 1}}),
               from_rows({{1, 0.3, 8}, {0, 1, 10}, {0, 0, 1}}),
               from_rows({{0.1, 0.03, 9}, {0, 0.1, 0.9}, {0, 0, 0.1}})};
  problem.B = {from_rows({{1, 12}, {0, 2}}), from_rows({{2, 1}, {0, 1}}),
               from_rows({{1, 21}, {0, std::pow(10.0, -t)}})};
  problem.C = {from_rows({{0.1, 10, 1.5}, {1, 10, 0.1}, {2, 0.3, 0.1}}),
               from_rows({{1.1, 3, 8}, {0.2, 5, 0.1}, {1, 0.01, 0.01}}),
               from_rows({{1, 0.5, 0.9}, {1, 0.1, 0.9}, {1, 2, 0.15}})};
  problem.D = {from_rows({{1, 0}, {1, 2}}), from_rows({{2, 9}, {2, 1}}),
               from_rows({{1, 1}, {3, std::pow(10.0, -tau)}})};
  problem.E = {from_rows({{1, 1}, {0, 1}, {0, 10}}),
               from_rows({{0, 1}, {2, 1}, {5, 8}}),
               from_rows({{2, 0}, {3, 1}, {0, 2}})};
  problem.F = {from_rows({{1, 0}, {0.1, 1}, {2, 0}}),
               from_rows({{0, 1}, {2, 1}, {5, 8}}),
               from_rows({{2, 0}, {1, 1}, {2, 5}})};
  return problem;
}

ConditionReport run_table1(int tau, int t) {
  const PgcsProblem problem = benchmark_problem(tau, t);
  const PgcsSolution solution = solve_pgcs(problem);
  ConditionReport report =
      condition_numbers(problem, solution, ToleranceSet::unit(problem.p));
  report.tolerance_mode = "unit";
  return report;
}

RatioStats run_ratio_benchmark(const RatioBenchmarkConfig& config) {
  if (config.trials < 1) {
    throw ValidationError("run_ratio_benchmark: trials must be >= 1");
  }
  const int p = config.p, m = config.m, n = config.n;
  const int order = system_order(p, m, n);

  RatioStats stats;
  stats.trials = config.trials;
  stats.samples = config.samples;
  stats.seed = config.seed;
  stats.r_n1.reserve(config.trials);

  const int redraw_budget = std::max(1, config.trials / 100);
  int total_redraws = 0;

  for (int trial = 0; trial < config.trials; ++trial) {
    CounterRng data_rng(config.seed, 0x10000ULL + static_cast<std::uint64_t>(trial));
    int redraws_here = 0;
    PgcsProblem problem;
    PgcsSolution solution;
    Matrix w_inverse_abs;
    while (true) {
      problem.p = p;
      problem.m = m;
      problem.n = n;
      problem.A.clear(); problem.B.clear(); problem.C.clear();
      problem.D.clear(); problem.E.clear(); problem.F.clear();
      for (int k = 0; k < p; ++k) {
        problem.A.push_back(data_rng.normal_matrix(m, m));
        problem.C.push_back(data_rng.normal_matrix(m, m));
        problem.B.push_back(data_rng.normal_matrix(n, n));
        problem.D.push_back(data_rng.normal_matrix(n, n));
        problem.E.push_back(data_rng.normal_matrix(m, n));
        problem.F.push_back(data_rng.normal_matrix(m, n));
      }
      try {
        const Matrix w = SystemOperator::from_problem(problem).dense();
        const SystemFactorization factorization(w);
        const Vector g = stack_rhs(problem);
        const Vector z = factorization.solve(g);
        // Componentwise residual certificate for the computed solution.
        const Vector linear_residual = g - w * z;
        w_inverse_abs = factorization.inverse().cwiseAbs();
        const double certificate =
            (w_inverse_abs * linear_residual.cwiseAbs()).maxCoeff() /
            z.cwiseAbs().maxCoeff();
        if (certificate <= 1e-8) {
          solution = unstack_solution(z, p, m, n);
          break;
        }
      } catch (const SingularSystemError&) {
      }
      ++redraws_here;
      ++total_redraws;
      if (total_redraws > redraw_budget) {
        throw Error("run_ratio_benchmark: redraw rate exceeded 1% (" +
                    std::to_string(total_redraws) + " redraws by trial " +
                    std::to_string(trial + 1) + ")");
      }
    }

    const ToleranceSet tol = default_tolerances(problem);
    const ConditionReport exact = condition_numbers(problem, solution, tol);

    PceOptions pce_opts;
    pce_opts.eps_prob = config.eps_prob;
    pce_opts.delta_gap = config.delta_gap;
    pce_opts.seed = config.seed;
    pce_opts.stream = 0x20000ULL + static_cast<std::uint64_t>(trial);
    const PceConditionEstimates pce =
        pce_condition_numbers(problem, solution, tol, pce_opts);

    const std::uint64_t sce_seed =
        config.seed ^ (0x40000ULL + static_cast<std::uint64_t>(trial)) * 0x9E3779B97F4A7C15ULL;
    const SceResult sce =
        sce_condition_numbers(problem, solution, config.samples, sce_seed);

    stats.r_n1.push_back(pce.k_n1 / exact.k_n1);
    stats.r_e.push_back(pce.k_e / exact.k_e);
    stats.r_m.push_back(sce.mixed_est / exact.mixed);
    stats.r_c.push_back(sce.componentwise_est / exact.componentwise);
    stats.redraws.push_back(redraws_here);
    (void)order;
  }

  mean_and_variance(stats.r_n1, &stats.mean_r_n1, &stats.var_r_n1);
  mean_and_variance(stats.r_e, &stats.mean_r_e, &stats.var_r_e);
  mean_and_variance(stats.r_m, &stats.mean_r_m, &stats.var_r_m);
  mean_and_variance(stats.r_c, &stats.mean_r_c, &stats.var_r_c);
  stats.inside_r_m = inside_fraction(stats.r_m, 0.2, 5.0);
  stats.inside_r_c = inside_fraction(stats.r_c, 0.2, 5.0);
  return stats;
}

void write_ratio_csv(const RatioStats& stats, std::ostream& out) {
  out << "trial,r_N1,r_E,r_m,r_c,redraws\n";
  for (int i = 0; i < stats.trials; ++i) {
    out << (i + 1) << ',' << format_double(stats.r_n1[i]) << ','
        << format_double(stats.r_e[i]) << ',' << format_double(stats.r_m[i])
        << ',' << format_double(stats.r_c[i]) << ',' << stats.redraws[i]
        << '\n';
  }
}

}  // namespace pgcs
