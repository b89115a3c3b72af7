#include "pgcs/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "pgcs/errors.hpp"

namespace pgcs {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ValidationError(where + ": expected a 2-D array of numbers");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw ValidationError(where + ": ragged rows");
    }
    for (Eigen::Index jj = 0; jj < cols; ++jj) {
      if (!j[i][jj].is_number()) {
        throw ValidationError(where + ": non-numeric entry");
      }
      m(i, jj) = j[i][jj].get<double>();
    }
  }
  return m;
}

json family_to_json(const std::vector<Matrix>& family) {
  json out = json::array();
  for (const Matrix& m : family) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<Matrix> family_from_json(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ValidationError("missing or non-array key \"" + key + "\"");
  }
  std::vector<Matrix> out;
  int k = 0;
  for (const json& entry : j[key]) {
    out.push_back(matrix_from_json(entry, key + "[" + std::to_string(++k) + "]"));
  }
  return out;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ValidationError("missing or non-array key \"" + key + "\"");
  }
  Vector v(static_cast<Eigen::Index>(j[key].size()));
  Eigen::Index i = 0;
  for (const json& entry : j[key]) {
    if (!entry.is_number()) {
      throw ValidationError("non-numeric entry in \"" + key + "\"");
    }
    v[i++] = entry.get<double>();
  }
  return v;
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ValidationError(std::string("missing or non-integer key \"") + key +
                          "\"");
  }
  return j[key].get<int>();
}

}  // namespace

json problem_to_json(const PgcsProblem& problem) {
  return json{{"p", problem.p},
              {"m", problem.m},
              {"n", problem.n},
              {"A", family_to_json(problem.A)},
              {"B", family_to_json(problem.B)},
              {"C", family_to_json(problem.C)},
              {"D", family_to_json(problem.D)},
              {"E", family_to_json(problem.E)},
              {"F", family_to_json(problem.F)}};
}

PgcsProblem problem_from_json(const json& j) {
  PgcsProblem problem;
  problem.p = int_field(j, "p");
  problem.m = int_field(j, "m");
  problem.n = int_field(j, "n");
  problem.A = family_from_json(j, "A");
  problem.B = family_from_json(j, "B");
  problem.C = family_from_json(j, "C");
  problem.D = family_from_json(j, "D");
  problem.E = family_from_json(j, "E");
  problem.F = family_from_json(j, "F");
  const std::vector<std::string> issues = validate(problem);
  if (!issues.empty()) {
    std::string joined = "problem JSON failed validation:";
    for (const std::string& issue : issues) joined += "\n  " + issue;
    throw ValidationError(joined);
  }
  return problem;
}

json solution_to_json(const PgcsSolution& solution) {
  const int p = static_cast<int>(solution.X.size());
  return json{{"p", p},
              {"m", p > 0 ? static_cast<int>(solution.X[0].rows()) : 0},
              {"n", p > 0 ? static_cast<int>(solution.X[0].cols()) : 0},
              {"X", family_to_json(solution.X)},
              {"Y", family_to_json(solution.Y)}};
}

PgcsSolution solution_from_json(const json& j) {
  PgcsSolution s;
  s.X = family_from_json(j, "X");
  s.Y = family_from_json(j, "Y");
  if (s.X.size() != s.Y.size() || s.X.empty()) {
    throw ValidationError("solution JSON: X and Y must be nonempty arrays of "
                          "equal length");
  }
  return s;
}

json perturbation_to_json(const PerturbationSet& delta) {
  return json{{"dA", family_to_json(delta.dA)}, {"dB", family_to_json(delta.dB)},
              {"dC", family_to_json(delta.dC)}, {"dD", family_to_json(delta.dD)},
              {"dE", family_to_json(delta.dE)}, {"dF", family_to_json(delta.dF)}};
}

PerturbationSet perturbation_from_json(const json& j) {
  PerturbationSet d;
  d.dA = family_from_json(j, "dA");
  d.dB = family_from_json(j, "dB");
  d.dC = family_from_json(j, "dC");
  d.dD = family_from_json(j, "dD");
  d.dE = family_from_json(j, "dE");
  d.dF = family_from_json(j, "dF");
  return d;
}

json tolerances_to_json(const ToleranceSet& tol) {
  return json{{"alpha", vector_to_json(tol.alpha)},
              {"beta", vector_to_json(tol.beta)},
              {"gamma", vector_to_json(tol.gamma)},
              {"zeta", vector_to_json(tol.zeta)},
              {"tau", vector_to_json(tol.tau)},
              {"delta", vector_to_json(tol.delta)}};
}

ToleranceSet tolerances_from_json(const json& j) {
  ToleranceSet t;
  t.alpha = vector_from_json(j, "alpha");
  t.beta = vector_from_json(j, "beta");
  t.gamma = vector_from_json(j, "gamma");
  t.zeta = vector_from_json(j, "zeta");
  t.tau = vector_from_json(j, "tau");
  t.delta = vector_from_json(j, "delta");
  return t;
}

json residual_to_json(const ResidualSet& r) {
  return json{{"R1", family_to_json(r.R1)}, {"R2", family_to_json(r.R2)}};
}

json backward_error_to_json(const BackwardErrorReport& report) {
  return json{{"lower", report.lower},
              {"upper", report.upper},
              {"attaining", perturbation_to_json(report.attaining)}};
}

json condition_report_to_json(const ConditionReport& report) {
  return json{{"k_N1", report.k_n1},
              {"k_N2", report.k_n2},
              {"k_E", report.k_e},
              {"mixed", report.mixed},
              {"componentwise", report.componentwise},
              {"mixed_upper", report.mixed_upper},
              {"componentwise_upper", report.componentwise_upper},
              {"method", report.method},
              {"tolerance_mode", report.tolerance_mode}};
}

json normwise_bounds_to_json(const PerturbationBoundReport& report) {
  return json{{"contraction_norm", report.contraction_norm},
              {"rigorous_normwise", report.rigorous_normwise},
              {"rigorous_normwise_eps", report.rigorous_normwise_eps},
              {"epsilon", report.epsilon},
              {"first_order_normwise", report.first_order_normwise},
              {"applicable", report.applicable},
              {"norm_method", report.norm_method}};
}

json componentwise_bounds_to_json(const ComponentwiseBoundReport& report) {
  return json{{"perron_radius", report.perron_radius},
              {"perron_converged", report.perron_converged},
              {"rigorous_componentwise",
               vector_to_json(report.rigorous_componentwise)},
              {"first_order_componentwise",
               vector_to_json(report.first_order_componentwise)},
              {"applicable", report.applicable}};
}

json pce_result_to_json(const PceResult& r) {
  return json{{"alpha", r.alpha},         {"beta", r.beta},
              {"estimate", r.estimate},   {"eps_prob", r.eps_prob},
              {"delta_gap", r.delta_gap}, {"iterations", r.iterations},
              {"converged", r.converged}};
}

json pce_estimates_to_json(const PceConditionEstimates& est) {
  return json{{"k_pceN1", est.k_n1},
              {"k_pceE", est.k_e},
              {"weighted_derivative_norm",
               pce_result_to_json(est.weighted_derivative_norm)},
              {"inverse_norm", pce_result_to_json(est.inverse_norm)}};
}

json sce_result_to_json(const SceResult& r) {
  return json{{"mixed_sce", r.mixed_est},
              {"componentwise_sce", r.componentwise_est},
              {"samples", r.samples},
              {"seed", r.seed},
              {"kappa_abs", vector_to_json(r.kappa_abs)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw ValidationError("cannot parse \"" + path + "\": " + err.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write \"" + path + "\"");
  out << j.dump(2) << "\n";
}

PgcsProblem load_problem(const std::string& path) {
  return problem_from_json(load_json_file(path));
}

PgcsSolution load_solution(const std::string& path) {
  return solution_from_json(load_json_file(path));
}

PerturbationSet load_perturbation(const std::string& path) {
  return perturbation_from_json(load_json_file(path));
}

ToleranceSet load_tolerances(const std::string& path) {
  return tolerances_from_json(load_json_file(path));
}

}  // namespace pgcs
