# -*- coding: utf-8 -*-
"""Zero shear deformation patch test."""
from typing import Tuple

from polyplate.element.dkm_ngon import DEFAULT_STIFFNESS_DEGREE
from polyplate.element.material import PlateMaterial
from polyplate.mesh.polymesh import PolyMesh
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.solution import solve_plate
from polyplate.verify.analytical import patch_field
from polyplate.verify.norms import NORM_DEGREE, error_norms

DEFAULT_E = 10.92e6
DEFAULT_NU = 0.3


def patch_test(
    mesh: PolyMesh,
    h_over_a: float,
    material: PlateMaterial = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
    norm_degree: int = NORM_DEGREE,
) -> Tuple[float, float]:
    """Impose w = 1 + x + y, beta = (-1, -1) on the boundary and measure the error.

    The thickness is h_over_a times the mesh extent; `material` only
    supplies E, nu and kappa.
    """
    h = h_over_a * mesh.scale
    if material is None:
        material = PlateMaterial(DEFAULT_E, DEFAULT_NU, h)
    else:
        material = material.with_thickness(h)
    exact = patch_field()
    bc = BoundaryCondition("prescribed_field", field=exact.boundary_field)
    solution = solve_plate(mesh, material, q=exact.load_function, bc=bc, degree=degree)
    return error_norms(solution, exact, norm_degree)
