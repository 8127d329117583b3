from .dkm_ngon import (
    DEFAULT_STIFFNESS_DEGREE,
    ElementMatrices,
    ElementOperator,
    FieldValues,
    StrainState,
    bending_B,
    constraint_operator,
    element_load,
    element_matrices,
    element_stiffness,
    element_stiffness_parts,
    interpolate_fields,
    quadrature_refinement_gap,
    refined_stiffness_parts,
    recover_fields,
    shear_B_dbeta,
)
from .geometry import ElementGeometry, edge_geometry
from .material import PlateMaterial

__all__ = [
    "PlateMaterial",
    "ElementGeometry",
    "ElementOperator",
    "ElementMatrices",
    "StrainState",
    "FieldValues",
    "DEFAULT_STIFFNESS_DEGREE",
    "edge_geometry",
    "bending_B",
    "shear_B_dbeta",
    "constraint_operator",
    "element_stiffness",
    "element_stiffness_parts",
    "element_load",
    "element_matrices",
    "interpolate_fields",
    "recover_fields",
    "quadrature_refinement_gap",
    "refined_stiffness_parts",
]
