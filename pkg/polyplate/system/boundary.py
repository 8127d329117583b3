# -*- coding: utf-8 -*-
"""Dirichlet boundary conditions on tagged boundary edges."""
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from polyplate.mesh.polymesh import PolyMesh
from polyplate.system.dofs import DofMap

KINDS = ("clamped", "hard_simply_supported", "prescribed_field")
DEFAULT_CORNER_ANGLE_TOL = 1e-6

Field = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]


class BoundaryCondition:
    """Constraint applied to every node of the selected boundary edges.

    - clamped: w = beta_x = beta_y = 0
    - hard_simply_supported: w = 0 and the rotation along the averaged
      boundary tangent is 0; nodes where the two boundary tangents turn by
      more than `corner_angle_tol` radians get both rotations fixed
    - prescribed_field: (w, beta_x, beta_y) = field(x, y)

    Attributes:
        kind (str): one of KINDS
        tags (list): boundary tags the condition applies to; all if None
        field (callable): (x, y) -> (w, beta_x, beta_y) for prescribed_field
        corner_angle_tol (float): tangent turn that marks a corner

    """

    def __init__(
        self,
        kind: str = "clamped",
        tags: Sequence[int] = None,
        field: Field = None,
        corner_angle_tol: float = DEFAULT_CORNER_ANGLE_TOL,
    ):
        """Initialize."""
        if kind not in KINDS:
            raise ValueError(f"[ERROR] unknown boundary condition {kind!r}, expected one of {KINDS}")
        if kind == "prescribed_field" and field is None:
            raise ValueError("[ERROR] prescribed_field needs a field function")
        self.kind = kind
        self.tags = None if tags is None else list(tags)
        self.field = field
        self.corner_angle_tol = corner_angle_tol

    def apply(self, mesh: PolyMesh, dofmap: DofMap):
        nodes = mesh.boundary_nodes(self.tags)
        if self.kind == "clamped":
            for node in nodes:
                for dof in dofmap.node_dofs(node):
                    dofmap.constrain(dof, 0.0)
        elif self.kind == "prescribed_field":
            x, y = mesh.vertices[nodes, 0], mesh.vertices[nodes, 1]
            values = np.stack(
                [np.broadcast_to(np.asarray(v, dtype=float), x.shape) for v in self.field(x, y)],
                axis=1,
            )
            for node, row in zip(nodes, values):
                for dof, value in zip(dofmap.node_dofs(node), row):
                    dofmap.constrain(dof, value)
        else:
            self._apply_hard_simply_supported(mesh, dofmap)

    def _apply_hard_simply_supported(self, mesh: PolyMesh, dofmap: DofMap):
        tangents: Dict[int, List[np.ndarray]] = dict()
        for i, j in mesh.boundary_segments(self.tags):
            t = mesh.vertices[j] - mesh.vertices[i]
            t = t / np.hypot(*t)
            tangents.setdefault(int(i), []).append(t)
            tangents.setdefault(int(j), []).append(t)

        for node, ts in sorted(tangents.items()):
            w_dof, bx_dof, by_dof = dofmap.node_dofs(node)
            dofmap.constrain(w_dof, 0.0)
            if len(ts) != 2 or self.turn_angle(ts[0], ts[1]) > self.corner_angle_tol:
                dofmap.constrain(bx_dof, 0.0)
                dofmap.constrain(by_dof, 0.0)
                continue
            s = ts[0] + ts[1]
            s = s / np.hypot(*s)
            normal = np.array([s[1], -s[0]])
            # u_tilde holds (w, beta_n, beta_s) at this node
            block = np.array(
                [[1.0, 0.0, 0.0], [0.0, normal[0], s[0]], [0.0, normal[1], s[1]]]
            )
            dofmap.set_node_transform(node, block)
            dofmap.constrain(by_dof, 0.0)

    @staticmethod
    def turn_angle(t1: np.ndarray, t2: np.ndarray) -> float:
        return float(abs(np.arctan2(t1[0] * t2[1] - t1[1] * t2[0], t1 @ t2)))

    def describe(self) -> dict:
        return dict(kind=self.kind, tags=self.tags, corner_angle_tol=self.corner_angle_tol)
