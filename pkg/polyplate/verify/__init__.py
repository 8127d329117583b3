from .analytical import (
    AnalyticalSolution,
    circular_plate_solution,
    nonuniform_square_solution,
    patch_field,
)
from .benchmarks import (
    CircularPlateProblem,
    PatchTestProblem,
    SquareNonuniformProblem,
    SquareUDLProblem,
    circular_benchmark,
    square_nonuniform_benchmark,
    square_udl_benchmark,
)
from .convergence import ConvergencePoint, ConvergenceRecord, convergence_report
from .norms import error_norms
from .patch import patch_test
from .suite import DEFAULT_TOLERANCES, ElementChecksProblem, print_summary

__all__ = [
    "AnalyticalSolution",
    "patch_field",
    "nonuniform_square_solution",
    "circular_plate_solution",
    "error_norms",
    "patch_test",
    "square_udl_benchmark",
    "square_nonuniform_benchmark",
    "circular_benchmark",
    "ConvergencePoint",
    "ConvergenceRecord",
    "convergence_report",
    "PatchTestProblem",
    "SquareUDLProblem",
    "SquareNonuniformProblem",
    "CircularPlateProblem",
    "ElementChecksProblem",
    "DEFAULT_TOLERANCES",
    "print_summary",
]
