// Command-line front end: solves coupled periodic Sylvester systems and runs
// the backward-error / perturbation / conditioning analyses on JSON inputs.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pgcs/assembly.hpp"
#include "pgcs/backward_error.hpp"
#include "pgcs/conditioning.hpp"
#include "pgcs/errors.hpp"
#include "pgcs/estimators.hpp"
#include "pgcs/experiments.hpp"
#include "pgcs/io.hpp"
#include "pgcs/perturbation.hpp"
#include "pgcs/solver.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

void emit(const json& j, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    pgcs::save_json_file(output_path, j);
  }
}

std::string csv_sibling(const std::string& output_path) {
  const std::size_t dot = output_path.find_last_of('.');
  const std::size_t slash = output_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return output_path + ".csv";
  }
  return output_path.substr(0, dot) + ".csv";
}

pgcs::ToleranceSet pick_tolerances(const pgcs::PgcsProblem& problem,
                                   const std::string& tolerances_path) {
  if (tolerances_path.empty()) return pgcs::default_tolerances(problem);
  return pgcs::load_tolerances(tolerances_path);
}

// Benchmark parametrization: substitute the near-singular diagonal entries
// B_p(n,n) = 10^-t and D_p(n,n) = 10^-tau.
void patch_benchmark_entries(pgcs::PgcsProblem& problem, int tau, int t) {
  problem.B.back()(problem.n - 1, problem.n - 1) = std::pow(10.0, -t);
  problem.D.back()(problem.n - 1, problem.n - 1) = std::pow(10.0, -tau);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic generalized coupled Sylvester solver and "
               "conditioning toolkit"};
  app.require_subcommand(1);

  std::string input_path, output_path, candidate_path, perturbation_path,
      tolerances_path;
  int tau = 0, t = 0;
  int trials = 1000, samples = 3;
  std::uint64_t seed = 0;
  double eps_prob = 1e-3, delta_gap = 1e-2;
  std::string estimator = "exact";

  const auto add_io = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", input_path, "problem JSON file");
    if (needs_input) in->required();
    cmd->add_option("--output", output_path,
                    "output JSON path (stdout if omitted)");
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve the coupled equation");
  add_io(solve_cmd, true);

  auto* residual_cmd =
      app.add_subcommand("residual", "residual of a candidate solution");
  add_io(residual_cmd, true);
  residual_cmd->add_option("--candidate", candidate_path, "solution JSON file")
      ->required();

  auto* backward_cmd = app.add_subcommand(
      "backward-error", "normwise backward-error bracket of a candidate");
  add_io(backward_cmd, true);
  backward_cmd->add_option("--candidate", candidate_path, "solution JSON file")
      ->required();
  backward_cmd->add_option("--tolerances", tolerances_path,
                           "tolerance JSON file (default: Frobenius norms)");

  auto* bounds_cmd = app.add_subcommand(
      "bounds", "normwise and componentwise perturbation bounds");
  add_io(bounds_cmd, true);
  bounds_cmd
      ->add_option("--perturbation", perturbation_path,
                   "perturbation JSON file")
      ->required();
  bounds_cmd->add_option("--tolerances", tolerances_path,
                         "tolerance JSON file (default: Frobenius norms)");

  auto* cond_cmd =
      app.add_subcommand("cond", "exact condition numbers and upper bounds");
  add_io(cond_cmd, true);
  cond_cmd->add_option("--tolerances", tolerances_path,
                       "tolerance JSON file (default: Frobenius norms)");
  cond_cmd->add_option("--tau", tau,
                       "benchmark parametrization: sets D_p(n,n)=10^-tau and "
                       "switches to unit weighting");
  cond_cmd->add_option("--t", t,
                       "benchmark parametrization: sets B_p(n,n)=10^-t and "
                       "switches to unit weighting");

  auto* estimate_cmd = app.add_subcommand(
      "estimate", "probabilistic / statistical condition estimates");
  add_io(estimate_cmd, true);
  estimate_cmd->add_option("--estimator", estimator,
                           "pce, sce, or exact (default exact)");
  estimate_cmd->add_option("--samples", samples, "directions for sce");
  estimate_cmd->add_option("--seed", seed, "RNG seed");
  estimate_cmd->add_option("--eps-prob", eps_prob,
                           "pce upper-bound failure probability");
  estimate_cmd->add_option("--delta-gap", delta_gap,
                           "pce bracket width target");
  estimate_cmd->add_option("--tolerances", tolerances_path,
                           "tolerance JSON file (default: Frobenius norms)");

  auto* table_cmd = app.add_subcommand(
      "bench-table1", "built-in conditioning benchmark table");
  table_cmd->add_option("--tau", tau, "single cell: tau in {1,3,5}");
  table_cmd->add_option("--t", t, "single cell: t in {1,3,5}");
  table_cmd->add_option("--output", output_path,
                        "summary JSON path; a .csv sibling is written too");

  auto* ratios_cmd = app.add_subcommand(
      "bench-ratios", "estimator-vs-exact ratio statistics benchmark");
  ratios_cmd->add_option("--trials", trials, "number of trials");
  ratios_cmd->add_option("--samples", samples, "sce directions per trial");
  ratios_cmd->add_option("--seed", seed, "RNG seed");
  ratios_cmd->add_option("--eps-prob", eps_prob, "pce failure probability");
  ratios_cmd->add_option("--delta-gap", delta_gap, "pce bracket width");
  ratios_cmd
      ->add_option("--output", output_path,
                   "summary JSON path; the per-trial CSV is written next to it")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      const pgcs::PgcsProblem problem = pgcs::load_problem(input_path);
      emit(pgcs::solution_to_json(pgcs::solve_pgcs(problem)), output_path);
    } else if (*residual_cmd) {
      const pgcs::PgcsProblem problem = pgcs::load_problem(input_path);
      const pgcs::PgcsSolution candidate = pgcs::load_solution(candidate_path);
      emit(pgcs::residual_to_json(pgcs::residual(problem, candidate)),
           output_path);
    } else if (*backward_cmd) {
      const pgcs::PgcsProblem problem = pgcs::load_problem(input_path);
      const pgcs::PgcsSolution candidate = pgcs::load_solution(candidate_path);
      const pgcs::ToleranceSet tol = pick_tolerances(problem, tolerances_path);
      emit(pgcs::backward_error_to_json(
               pgcs::backward_error_bounds(problem, candidate, tol)),
           output_path);
    } else if (*bounds_cmd) {
      const pgcs::PgcsProblem problem = pgcs::load_problem(input_path);
      const pgcs::PerturbationSet delta =
          pgcs::load_perturbation(perturbation_path);
      const pgcs::ToleranceSet tol = pick_tolerances(problem, tolerances_path);
      const pgcs::PgcsSolution solution = pgcs::solve_pgcs(problem);
      emit(json{{"normwise", pgcs::normwise_bounds_to_json(pgcs::normwise_bounds(
                                 problem, solution, delta, tol))},
                {"componentwise",
                 pgcs::componentwise_bounds_to_json(pgcs::componentwise_bounds(
                     problem, solution, delta, tol))}},
           output_path);
    } else if (*cond_cmd) {
      pgcs::PgcsProblem problem = pgcs::load_problem(input_path);
      const bool benchmark_mode =
          cond_cmd->count("--tau") > 0 || cond_cmd->count("--t") > 0;
      pgcs::ConditionReport report;
      if (benchmark_mode) {
        if (tau == 0 || t == 0) {
          std::cerr << "cond: --tau and --t must be given together\n";
          return kExitUsage;
        }
        patch_benchmark_entries(problem, tau, t);
        report = pgcs::condition_numbers(problem, pgcs::solve_pgcs(problem),
                                         pgcs::ToleranceSet::unit(problem.p));
        report.tolerance_mode = "unit";
      } else {
        const pgcs::ToleranceSet tol =
            pick_tolerances(problem, tolerances_path);
        report = pgcs::condition_numbers(problem, pgcs::solve_pgcs(problem),
                                         tol);
        report.tolerance_mode = tolerances_path.empty() ? "default" : "custom";
      }
      emit(pgcs::condition_report_to_json(report), output_path);
    } else if (*estimate_cmd) {
      const pgcs::PgcsProblem problem = pgcs::load_problem(input_path);
      const pgcs::PgcsSolution solution = pgcs::solve_pgcs(problem);
      if (estimator == "pce") {
        pgcs::PceOptions opts;
        opts.eps_prob = eps_prob;
        opts.delta_gap = delta_gap;
        opts.seed = seed;
        const pgcs::ToleranceSet tol =
            pick_tolerances(problem, tolerances_path);
        emit(pgcs::pce_estimates_to_json(
                 pgcs::pce_condition_numbers(problem, solution, tol, opts)),
             output_path);
      } else if (estimator == "sce") {
        emit(pgcs::sce_result_to_json(
                 pgcs::sce_condition_numbers(problem, solution, samples, seed)),
             output_path);
      } else if (estimator == "exact") {
        const pgcs::ToleranceSet tol =
            pick_tolerances(problem, tolerances_path);
        pgcs::ConditionReport report =
            pgcs::condition_numbers(problem, solution, tol);
        report.tolerance_mode = tolerances_path.empty() ? "default" : "custom";
        emit(pgcs::condition_report_to_json(report), output_path);
      } else {
        std::cerr << "estimate: unknown estimator \"" << estimator << "\"\n";
        return kExitUsage;
      }
    } else if (*table_cmd) {
      const bool single_cell =
          table_cmd->count("--tau") > 0 || table_cmd->count("--t") > 0;
      json summary = json::array();
      std::string csv = "tau,t,k_N1,k_N2,k_E,mixed,componentwise\n";
      const std::vector<std::pair<int, int>> grid =
          single_cell ? std::vector<std::pair<int, int>>{{tau, t}}
                      : std::vector<std::pair<int, int>>{
                            {1, 1}, {1, 3}, {1, 5}, {3, 3}, {3, 5}, {5, 5}};
      for (const auto& [cell_tau, cell_t] : grid) {
        const pgcs::ConditionReport r = pgcs::run_table1(cell_tau, cell_t);
        json row = pgcs::condition_report_to_json(r);
        row["tau"] = cell_tau;
        row["t"] = cell_t;
        summary.push_back(row);
        char line[256];
        std::snprintf(line, sizeof(line), "%d,%d,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                      cell_tau, cell_t, r.k_n1, r.k_n2, r.k_e, r.mixed,
                      r.componentwise);
        csv += line;
      }
      emit(summary, output_path);
      if (!output_path.empty()) {
        std::ofstream csv_out(csv_sibling(output_path));
        csv_out << csv;
      }
    } else if (*ratios_cmd) {
      pgcs::RatioBenchmarkConfig config;
      config.trials = trials;
      config.samples = samples;
      config.seed = seed;
      config.eps_prob = eps_prob;
      config.delta_gap = delta_gap;
      const pgcs::RatioStats stats = pgcs::run_ratio_benchmark(config);
      const json summary{{"trials", stats.trials},
                         {"samples", stats.samples},
                         {"seed", stats.seed},
                         {"mean_r_N1", stats.mean_r_n1},
                         {"var_r_N1", stats.var_r_n1},
                         {"mean_r_E", stats.mean_r_e},
                         {"var_r_E", stats.var_r_e},
                         {"mean_r_m", stats.mean_r_m},
                         {"var_r_m", stats.var_r_m},
                         {"mean_r_c", stats.mean_r_c},
                         {"var_r_c", stats.var_r_c},
                         {"inside_r_m", stats.inside_r_m},
                         {"inside_r_c", stats.inside_r_c}};
      emit(summary, output_path);
      std::ofstream csv_out(csv_sibling(output_path));
      if (!csv_out) {
        std::cerr << "cannot write CSV next to " << output_path << "\n";
        return kExitData;
      }
      pgcs::write_ratio_csv(stats, csv_out);
    }
  } catch (const pgcs::ValidationError& err) {
    std::cerr << "data error: " << err.what() << "\n";
    return kExitData;
  } catch (const pgcs::DimensionError& err) {
    std::cerr << "data error: " << err.what() << "\n";
    return kExitData;
  } catch (const pgcs::Error& err) {
    std::cerr << "numerical error: " << err.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
