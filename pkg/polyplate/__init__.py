from .mesh import CVTMesher, PolyMesh, StructuredQuadMesher, TrapezoidalMesher
from .registry import build_mesher, build_problem
from .verify import (
    CircularPlateProblem,
    ElementChecksProblem,
    PatchTestProblem,
    SquareNonuniformProblem,
    SquareUDLProblem,
)

__version__ = "0.0.1"

__all__ = [
    "PolyMesh",
    "StructuredQuadMesher",
    "TrapezoidalMesher",
    "CVTMesher",
    "PatchTestProblem",
    "SquareUDLProblem",
    "SquareNonuniformProblem",
    "CircularPlateProblem",
    "ElementChecksProblem",
    "build_mesher",
    "build_problem",
]
