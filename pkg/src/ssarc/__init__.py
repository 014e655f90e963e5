"""Sequential adaptive cubic regularization (multi-shift Lanczos-CG) for
equality-constrained nonlinear optimization."""

from .errors import (ContractViolation, DegenerateModel, DerivativeCheckError,
                     EvaluationError, LadderExhausted, NumericalBreakdown,
                     RankDeficient, SSARCError)
from .linalg import (NullspaceBasis, SymmetricOperator, least_squares_multipliers,
                     min_norm_constraint_step, nullspace_basis, reduced_operator)
from .merit import (PenaltyState, acceptance_ratio, model_value, penalty_value,
                    update_penalty)
from .problems import (Problem, builtin_collection, check_derivatives, get_problem,
                       problem_names)
from .shifted_cg import (ShiftLadder, ShiftSolveResult, ShiftSolveSet,
                         solve_all_shifts, verify_residual)
from .solver import (IterateState, SolverConfig, SolverReport, kkt_residual, solve)
from .step import (StepDecomposition, compose_step, horizontal_step, model_decreases,
                   vertical_step)
from .subproblem import (ShiftSelection, advance_on_failure, select_initial)

__all__ = [
    'acceptance_ratio',
    'advance_on_failure',
    'builtin_collection',
    'check_derivatives',
    'compose_step',
    'ContractViolation',
    'DegenerateModel',
    'DerivativeCheckError',
    'EvaluationError',
    'get_problem',
    'horizontal_step',
    'IterateState',
    'kkt_residual',
    'LadderExhausted',
    'least_squares_multipliers',
    'min_norm_constraint_step',
    'model_decreases',
    'model_value',
    'nullspace_basis',
    'NullspaceBasis',
    'NumericalBreakdown',
    'penalty_value',
    'PenaltyState',
    'Problem',
    'problem_names',
    'RankDeficient',
    'reduced_operator',
    'select_initial',
    'ShiftLadder',
    'ShiftSelection',
    'ShiftSolveResult',
    'ShiftSolveSet',
    'solve',
    'solve_all_shifts',
    'SolverConfig',
    'SolverReport',
    'SSARCError',
    'StepDecomposition',
    'SymmetricOperator',
    'update_penalty',
    'verify_residual',
    'vertical_step',
]

__version__ = '0.1.0'
