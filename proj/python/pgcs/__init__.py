"""Periodic generalized coupled Sylvester equation toolkit.

Solves A_k X_k - Y_k B_k = E_k, C_k X_{k+1} - Y_k D_k = F_k (cyclic in k)
and provides backward errors, perturbation bounds, exact condition numbers,
and probabilistic/statistical condition estimators.
"""

from ._pgcs import (
    BackwardErrorReport,
    ComponentwiseBoundReport,
    ConditionReport,
    DimensionError,
    NormwiseBoundReport,
    PceConditionEstimates,
    PceResult,
    Perturbation,
    Problem,
    RankDeficientError,
    Residual,
    SceResult,
    SingularSystemError,
    SizeCapError,
    Solution,
    Tolerances,
    ValidationError,
    apply_perturbation,
    apply_sandwich,
    backward_error_bounds,
    benchmark_problem,
    componentwise_bounds,
    condition_numbers,
    condition_upper_bounds,
    default_tolerances,
    dense_cap,
    entrywise_divide,
    kronecker,
    load_problem,
    load_solution,
    normwise_bounds,
    pce_condition_numbers,
    pce_spectral_norm,
    residual,
    run_table1,
    save_problem,
    save_solution,
    sce_condition_numbers,
    set_dense_cap,
    solve,
    unvectorize,
    validate,
    vectorize,
    wallis,
)

__all__ = [
    "BackwardErrorReport",
    "ComponentwiseBoundReport",
    "ConditionReport",
    "DimensionError",
    "NormwiseBoundReport",
    "PceConditionEstimates",
    "PceResult",
    "Perturbation",
    "Problem",
    "RankDeficientError",
    "Residual",
    "SceResult",
    "SingularSystemError",
    "SizeCapError",
    "Solution",
    "Tolerances",
    "ValidationError",
    "apply_perturbation",
    "apply_sandwich",
    "backward_error_bounds",
    "benchmark_problem",
    "componentwise_bounds",
    "condition_numbers",
    "condition_upper_bounds",
    "default_tolerances",
    "dense_cap",
    "entrywise_divide",
    "kronecker",
    "load_problem",
    "load_solution",
    "normwise_bounds",
    "pce_condition_numbers",
    "pce_spectral_norm",
    "residual",
    "run_table1",
    "save_problem",
    "save_solution",
    "sce_condition_numbers",
    "set_dense_cap",
    "solve",
    "unvectorize",
    "validate",
    "vectorize",
    "wallis",
]
