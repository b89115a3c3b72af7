#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace pgcs;

PYBIND11_MODULE(_pgcs, m) {
  m.doc() = "Periodic generalized coupled Sylvester solver with backward "
            "error, perturbation bounds, and condition-number estimation.";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<SingularSystemError>(m, "SingularSystemError",
                                              PyExc_ArithmeticError);
  py::register_exception<RankDeficientError>(m, "RankDeficientError",
                                             PyExc_ArithmeticError);
  py::register_exception<SizeCapError>(m, "SizeCapError", PyExc_RuntimeError);

  py::class_<PgcsProblem>(m, "Problem")
      .def(py::init<>())
      .def_readwrite("p", &PgcsProblem::p)
      .def_readwrite("m", &PgcsProblem::m)
      .def_readwrite("n", &PgcsProblem::n)
      .def_readwrite("A", &PgcsProblem::A)
      .def_readwrite("B", &PgcsProblem::B)
      .def_readwrite("C", &PgcsProblem::C)
      .def_readwrite("D", &PgcsProblem::D)
      .def_readwrite("E", &PgcsProblem::E)
      .def_readwrite("F", &PgcsProblem::F);

  py::class_<PgcsSolution>(m, "Solution")
      .def(py::init<>())
      .def_readwrite("X", &PgcsSolution::X)
      .def_readwrite("Y", &PgcsSolution::Y);

  py::class_<ToleranceSet>(m, "Tolerances")
      .def(py::init<>())
      .def_static("unit", &ToleranceSet::unit, py::arg("p"))
      .def_readwrite("alpha", &ToleranceSet::alpha)
      .def_readwrite("beta", &ToleranceSet::beta)
      .def_readwrite("gamma", &ToleranceSet::gamma)
      .def_readwrite("zeta", &ToleranceSet::zeta)
      .def_readwrite("tau", &ToleranceSet::tau)
      .def_readwrite("delta", &ToleranceSet::delta);

  py::class_<PerturbationSet>(m, "Perturbation")
      .def(py::init<>())
      .def_static("zero", &PerturbationSet::zero, py::arg("p"), py::arg("m"),
                  py::arg("n"))
      .def_readwrite("dA", &PerturbationSet::dA)
      .def_readwrite("dB", &PerturbationSet::dB)
      .def_readwrite("dC", &PerturbationSet::dC)
      .def_readwrite("dD", &PerturbationSet::dD)
      .def_readwrite("dE", &PerturbationSet::dE)
      .def_readwrite("dF", &PerturbationSet::dF);

  py::class_<ResidualSet>(m, "Residual")
      .def_readonly("R1", &ResidualSet::R1)
      .def_readonly("R2", &ResidualSet::R2);

  py::class_<BackwardErrorReport>(m, "BackwardErrorReport")
      .def_readonly("lower", &BackwardErrorReport::lower)
      .def_readonly("upper", &BackwardErrorReport::upper)
      .def_readonly("attaining", &BackwardErrorReport::attaining);

  py::class_<PerturbationBoundReport>(m, "NormwiseBoundReport")
      .def_readonly("contraction_norm",
                    &PerturbationBoundReport::contraction_norm)
      .def_readonly("rigorous_normwise",
                    &PerturbationBoundReport::rigorous_normwise)
      .def_readonly("rigorous_normwise_eps",
                    &PerturbationBoundReport::rigorous_normwise_eps)
      .def_readonly("epsilon", &PerturbationBoundReport::epsilon)
      .def_readonly("first_order_normwise",
                    &PerturbationBoundReport::first_order_normwise)
      .def_readonly("applicable", &PerturbationBoundReport::applicable)
      .def_readonly("norm_method", &PerturbationBoundReport::norm_method);

  py::class_<ComponentwiseBoundReport>(m, "ComponentwiseBoundReport")
      .def_readonly("perron_radius", &ComponentwiseBoundReport::perron_radius)
      .def_readonly("perron_converged",
                    &ComponentwiseBoundReport::perron_converged)
      .def_readonly("rigorous_componentwise",
                    &ComponentwiseBoundReport::rigorous_componentwise)
      .def_readonly("first_order_componentwise",
                    &ComponentwiseBoundReport::first_order_componentwise)
      .def_readonly("applicable", &ComponentwiseBoundReport::applicable);

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("k_N1", &ConditionReport::k_n1)
      .def_readonly("k_N2", &ConditionReport::k_n2)
      .def_readonly("k_E", &ConditionReport::k_e)
      .def_readonly("mixed", &ConditionReport::mixed)
      .def_readonly("componentwise", &ConditionReport::componentwise)
      .def_readonly("mixed_upper", &ConditionReport::mixed_upper)
      .def_readonly("componentwise_upper",
                    &ConditionReport::componentwise_upper)
      .def_readonly("method", &ConditionReport::method)
      .def_readonly("tolerance_mode", &ConditionReport::tolerance_mode);

  py::class_<PceResult>(m, "PceResult")
      .def_readonly("alpha", &PceResult::alpha)
      .def_readonly("beta", &PceResult::beta)
      .def_readonly("estimate", &PceResult::estimate)
      .def_readonly("eps_prob", &PceResult::eps_prob)
      .def_readonly("delta_gap", &PceResult::delta_gap)
      .def_readonly("iterations", &PceResult::iterations)
      .def_readonly("converged", &PceResult::converged);

  py::class_<PceConditionEstimates>(m, "PceConditionEstimates")
      .def_readonly("k_N1", &PceConditionEstimates::k_n1)
      .def_readonly("k_E", &PceConditionEstimates::k_e)
      .def_readonly("weighted_derivative_norm",
                    &PceConditionEstimates::weighted_derivative_norm)
      .def_readonly("inverse_norm", &PceConditionEstimates::inverse_norm);

  py::class_<SceResult>(m, "SceResult")
      .def_readonly("mixed", &SceResult::mixed_est)
      .def_readonly("componentwise", &SceResult::componentwise_est)
      .def_readonly("samples", &SceResult::samples)
      .def_readonly("seed", &SceResult::seed)
      .def_readonly("kappa_abs", &SceResult::kappa_abs);

  m.def("vectorize", &vectorize, py::arg("matrix"));
  m.def("unvectorize", &unvectorize, py::arg("vector"), py::arg("rows"),
        py::arg("cols"));
  m.def("kronecker", &kronecker, py::arg("a"), py::arg("b"));
  m.def("apply_sandwich", &apply_sandwich, py::arg("a"), py::arg("c"),
        py::arg("x"));

  m.def("validate", &validate, py::arg("problem"),
        "Diagnostics list; empty means well formed.");
  m.def("solve", &solve_pgcs, py::arg("problem"));
  m.def("residual", &residual, py::arg("problem"), py::arg("candidate"));
  m.def("default_tolerances", &default_tolerances, py::arg("problem"));
  m.def("apply_perturbation", &apply_perturbation, py::arg("problem"),
        py::arg("delta"));

  m.def("backward_error_bounds", &backward_error_bounds, py::arg("problem"),
        py::arg("candidate"), py::arg("tolerances"));
  m.def(
      "normwise_bounds",
      [](const PgcsProblem& problem, const PgcsSolution& solution,
         const PerturbationSet& delta, const ToleranceSet& tol) {
        return normwise_bounds(problem, solution, delta, tol);
      },
      py::arg("problem"), py::arg("solution"), py::arg("delta"),
      py::arg("tolerances"));
  m.def("componentwise_bounds", &componentwise_bounds, py::arg("problem"),
        py::arg("solution"), py::arg("delta"), py::arg("tolerances"));

  m.def("condition_numbers", &condition_numbers, py::arg("problem"),
        py::arg("solution"), py::arg("tolerances"));
  m.def(
      "condition_upper_bounds",
      [](const PgcsProblem& problem, const PgcsSolution& solution) {
        const ConditionUpperBounds bounds =
            condition_upper_bounds(problem, solution);
        return py::make_tuple(bounds.mixed_upper, bounds.componentwise_upper);
      },
      py::arg("problem"), py::arg("solution"));
  m.def("entrywise_divide", &entrywise_divide, py::arg("a"), py::arg("b"));

  m.def(
      "wallis",
      [](int p, const std::string& mode) {
        return wallis(p, mode == "approx" ? WallisMode::approx
                                          : WallisMode::exact);
      },
      py::arg("p"), py::arg("mode") = "exact");
  m.def(
      "pce_spectral_norm",
      [](const Matrix& dense, double eps_prob, double delta_gap,
         std::uint64_t seed) {
        LinearOperator op;
        op.rows = dense.rows();
        op.cols = dense.cols();
        op.apply = [dense](const Vector& x) { return Vector(dense * x); };
        op.apply_transpose = [dense](const Vector& y) {
          return Vector(dense.transpose() * y);
        };
        PceOptions opts;
        opts.eps_prob = eps_prob;
        opts.delta_gap = delta_gap;
        opts.seed = seed;
        return pce_spectral_norm(op, opts);
      },
      py::arg("matrix"), py::arg("eps_prob") = 1e-3,
      py::arg("delta_gap") = 1e-2, py::arg("seed") = 0,
      "Bracket the spectral norm of a dense matrix.");
  m.def(
      "pce_condition_numbers",
      [](const PgcsProblem& problem, const PgcsSolution& solution,
         const ToleranceSet& tol, double eps_prob, double delta_gap,
         std::uint64_t seed) {
        PceOptions opts;
        opts.eps_prob = eps_prob;
        opts.delta_gap = delta_gap;
        opts.seed = seed;
        return pce_condition_numbers(problem, solution, tol, opts);
      },
      py::arg("problem"), py::arg("solution"), py::arg("tolerances"),
      py::arg("eps_prob") = 1e-3, py::arg("delta_gap") = 1e-2,
      py::arg("seed") = 0);
  m.def("sce_condition_numbers", &sce_condition_numbers, py::arg("problem"),
        py::arg("solution"), py::arg("samples") = 3, py::arg("seed") = 0);

  m.def("benchmark_problem", &benchmark_problem, py::arg("tau"), py::arg("t"));
  m.def("run_table1", &run_table1, py::arg("tau"), py::arg("t"));

  m.def("load_problem", &load_problem, py::arg("path"));
  m.def(
      "save_problem",
      [](const std::string& path, const PgcsProblem& problem) {
        save_json_file(path, problem_to_json(problem));
      },
      py::arg("path"), py::arg("problem"));
  m.def(
      "save_solution",
      [](const std::string& path, const PgcsSolution& solution) {
        save_json_file(path, solution_to_json(solution));
      },
      py::arg("path"), py::arg("solution"));
  m.def("load_solution", &load_solution, py::arg("path"));

  m.def("dense_cap", &dense_cap);
  m.def("set_dense_cap", &set_dense_cap, py::arg("cap"));
}
