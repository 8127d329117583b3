from .generators import (
    generate_cvt_polygonal,
    generate_mesh,
    generate_structured_quad,
    generate_trapezoidal,
)
from .io import read_mesh, write_mesh
from .meshers import CVTMesher, StructuredQuadMesher, TrapezoidalMesher
from .polymesh import MeshSpec, PolyMesh

__all__ = [
    "PolyMesh",
    "MeshSpec",
    "generate_structured_quad",
    "generate_trapezoidal",
    "generate_cvt_polygonal",
    "generate_mesh",
    "read_mesh",
    "write_mesh",
    "StructuredQuadMesher",
    "TrapezoidalMesher",
    "CVTMesher",
]
