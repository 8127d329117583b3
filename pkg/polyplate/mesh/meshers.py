# -*- coding: utf-8 -*-
"""Mesh families buildable from configs."""
import numpy as np

from polyplate.common.abstract.mesher import Mesher
from polyplate.common.errors import MeshValidationError
from polyplate.mesh.generators import (
    generate_cvt_polygonal,
    generate_structured_quad,
    generate_trapezoidal,
)
from polyplate.mesh.polymesh import PolyMesh
from polyplate.registry import MESHERS


def _divisions(target_elements: int) -> int:
    return max(1, int(round(np.sqrt(target_elements))))


@MESHERS.register_module
class StructuredQuadMesher(Mesher):
    """n x n squares with n = round(sqrt(target_elements))."""

    kind = "structured_quad"

    def generate(self, target_elements: int, seed: int = 42) -> PolyMesh:
        spec = self.spec(target_elements, seed)
        if spec.domain != "unit_square":
            raise MeshValidationError("[ERROR] structured meshes only cover the square")
        return generate_structured_quad(spec.size, _divisions(target_elements))

    def elements_for_nodes(self, nodes: int) -> int:
        return max(1, int(round(np.sqrt(nodes))) - 1) ** 2


@MESHERS.register_module
class TrapezoidalMesher(StructuredQuadMesher):
    """Structured quads with alternately shifted interior columns.

    Attributes:
        skew (float): column shift as a fraction of the cell size

    """

    kind = "trapezoidal"

    def __init__(self, domain: str = "unit_square", size: float = 1.0, skew: float = 0.2):
        """Initialize."""
        super(TrapezoidalMesher, self).__init__(domain, size)
        self.skew = skew

    def generate(self, target_elements: int, seed: int = 42) -> PolyMesh:
        spec = self.spec(target_elements, seed)
        if spec.domain != "unit_square":
            raise MeshValidationError("[ERROR] trapezoidal meshes only cover the square")
        return generate_trapezoidal(spec.size, _divisions(target_elements), self.skew)


@MESHERS.register_module
class CVTMesher(Mesher):
    """Lloyd-relaxed clipped Voronoi meshes.

    Attributes:
        lloyd_iters (int): number of centroid relaxations

    """

    kind = "cvt_polygonal"

    def __init__(self, domain: str = "unit_square", size: float = 1.0, lloyd_iters: int = 100):
        """Initialize."""
        super(CVTMesher, self).__init__(domain, size)
        self.lloyd_iters = lloyd_iters

    def generate(self, target_elements: int, seed: int = 42) -> PolyMesh:
        return generate_cvt_polygonal(self.spec(target_elements, seed), self.lloyd_iters)

    def elements_for_nodes(self, nodes: int) -> int:
        # a Voronoi mesh has about two vertices per cell
        return max(1, int(round(nodes / 2.0)))
