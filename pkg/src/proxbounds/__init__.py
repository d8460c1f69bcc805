"""Proximal gradient methods with verified worst-case bounds and dual certificates."""

from .problems import (
    CompositeProblem,
    InitialCondition,
    eval_F,
    initial_from_reference,
    make_box_constrained_ls,
    make_quadratic_l1,
    problem_from_json,
    problem_to_json,
    soft_threshold,
    solve_reference,
)
from .proxgrad import (
    MappingEval,
    check_descent,
    composite_gradient_mapping,
    prox_grad_step,
    subgradient_at_prox,
)
from .schedules import (
    StepSchedule,
    TSequence,
    custom_t_sequence,
    fista_t_sequence,
    linear_t_sequence,
    opg_t_sequence,
    step_coefficients,
    step_coefficients_recursive,
    validate_t_sequence,
)
from .algorithms import (
    RunTrace,
    run_fo,
    run_fpgm,
    run_fpgm_m,
    run_fpgm_opg,
    run_fpgm_sigma,
    run_gfpgm,
    run_gfpgm_prime,
    run_pgm,
)
from .certificates import (
    BoundReport,
    CostCertificate,
    FeasibilityReport,
    MappingCertificate,
    analytic_bounds,
    anchor_matrix,
    check_feasibility,
    consecutive_matrix,
    cost_certificate,
    dual_bound_cost,
    dual_bound_mapping,
    dual_matrix,
    dual_matrix_mapping,
    mapping_certificate,
    maximize_quad,
    min_eigenvalue,
    quad_objective,
)
from .instances import SplitMix64, child_seed, random_box, random_lasso

__version__ = "0.1.0"

__all__ = [
    "CompositeProblem",
    "InitialCondition",
    "eval_F",
    "initial_from_reference",
    "make_box_constrained_ls",
    "make_quadratic_l1",
    "problem_from_json",
    "problem_to_json",
    "soft_threshold",
    "solve_reference",
    "MappingEval",
    "check_descent",
    "composite_gradient_mapping",
    "prox_grad_step",
    "subgradient_at_prox",
    "StepSchedule",
    "TSequence",
    "custom_t_sequence",
    "fista_t_sequence",
    "linear_t_sequence",
    "opg_t_sequence",
    "step_coefficients",
    "step_coefficients_recursive",
    "validate_t_sequence",
    "RunTrace",
    "run_fo",
    "run_fpgm",
    "run_fpgm_m",
    "run_fpgm_opg",
    "run_fpgm_sigma",
    "run_gfpgm",
    "run_gfpgm_prime",
    "run_pgm",
    "BoundReport",
    "CostCertificate",
    "FeasibilityReport",
    "MappingCertificate",
    "analytic_bounds",
    "anchor_matrix",
    "check_feasibility",
    "consecutive_matrix",
    "cost_certificate",
    "dual_bound_cost",
    "dual_bound_mapping",
    "dual_matrix",
    "dual_matrix_mapping",
    "mapping_certificate",
    "maximize_quad",
    "min_eigenvalue",
    "quad_objective",
    "SplitMix64",
    "child_seed",
    "random_box",
    "random_lasso",
]
