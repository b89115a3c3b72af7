#ifndef PGCS_IO_HPP
#define PGCS_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "pgcs/backward_error.hpp"
#include "pgcs/conditioning.hpp"
#include "pgcs/estimators.hpp"
#include "pgcs/perturbation.hpp"
#include "pgcs/problem.hpp"

namespace pgcs {

// Problem schema: {"p": int, "m": int, "n": int, "A": [...], ..., "F": [...]}
// where each family is a length-p array of row-major 2-D number arrays.
// Solutions use keys "X"/"Y", perturbations "dA".."dF", tolerances
// "alpha","beta","gamma","zeta","tau","delta". Numbers are serialized with
// shortest round-trip formatting.
nlohmann::json problem_to_json(const PgcsProblem& problem);
PgcsProblem problem_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const PgcsSolution& solution);
PgcsSolution solution_from_json(const nlohmann::json& j);

nlohmann::json perturbation_to_json(const PerturbationSet& delta);
PerturbationSet perturbation_from_json(const nlohmann::json& j);

nlohmann::json tolerances_to_json(const ToleranceSet& tol);
ToleranceSet tolerances_from_json(const nlohmann::json& j);

nlohmann::json residual_to_json(const ResidualSet& r);
nlohmann::json backward_error_to_json(const BackwardErrorReport& report);
nlohmann::json condition_report_to_json(const ConditionReport& report);
nlohmann::json normwise_bounds_to_json(const PerturbationBoundReport& report);
nlohmann::json componentwise_bounds_to_json(const ComponentwiseBoundReport& report);
nlohmann::json pce_result_to_json(const PceResult& r);
nlohmann::json pce_estimates_to_json(const PceConditionEstimates& est);
nlohmann::json sce_result_to_json(const SceResult& r);

// File helpers; throw ValidationError with the path on parse/schema errors.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

PgcsProblem load_problem(const std::string& path);
PgcsSolution load_solution(const std::string& path);
PerturbationSet load_perturbation(const std::string& path);
ToleranceSet load_tolerances(const std::string& path);

}  // namespace pgcs

#endif
