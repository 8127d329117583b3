from .assembly import assemble, reaction_imbalance, reduce_system
from .boundary import BoundaryCondition
from .dofs import DofMap
from .solution import PlateSolution, solution_field, solve_plate
from .solver import relative_residual, solve

__all__ = [
    "DofMap",
    "BoundaryCondition",
    "PlateSolution",
    "assemble",
    "reduce_system",
    "reaction_imbalance",
    "solve",
    "relative_residual",
    "solution_field",
    "solve_plate",
]
