# -*- coding: utf-8 -*-
"""Solved plate fields, point evaluation and solution dumps."""
import json
import os
from typing import Dict

import numpy as np
from scipy.spatial import cKDTree

from polyplate.basis.serendipity import serendipity
from polyplate.common.errors import PointLocationError
import polyplate.common.helper_functions as common_utils
from polyplate.element.dkm_ngon import (
    DEFAULT_STIFFNESS_DEGREE,
    FieldValues,
    Load,
    StrainState,
    interpolate_fields,
    recover_fields,
)
from polyplate.element.geometry import ElementGeometry, edge_geometry
from polyplate.element.material import PlateMaterial
from polyplate.mesh.polymesh import PolyMesh
from polyplate.system.assembly import assemble, reaction_imbalance, reduce_system
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.dofs import DofMap
from polyplate.system.solver import relative_residual, solve

LOCATE_TOL = 1e-12
NUDGE = 1e-9
CANDIDATES = 8
CSV_HEADER = "node,x,y,w,beta_x,beta_y"


class PlateSolution:
    """Nodal solution plus evaluators of the element fields.

    Attributes:
        mesh (PolyMesh): solved mesh
        material (PlateMaterial): plate material
        dofmap (DofMap): numbering and constraints used for the solve
        u (np.ndarray): nodal dofs (w_i, beta_x_i, beta_y_i) in global axes
        residual (float): relative residual of the reduced solve
        reaction_imbalance (float): w-reaction mismatch against the load
        bc (BoundaryCondition): boundary condition, if any

    """

    def __init__(
        self,
        mesh: PolyMesh,
        material: PlateMaterial,
        dofmap: DofMap,
        u: np.ndarray,
        residual: float = float("nan"),
        reaction_imbalance: float = float("nan"),
        bc: BoundaryCondition = None,
    ):
        """Initialize."""
        u = np.asarray(u, dtype=float)
        if u.shape != (dofmap.n_dofs,) or dofmap.n_nodes != mesh.n_nodes:
            raise ValueError("[ERROR] solution vector does not match the mesh dofs")
        self.mesh = mesh
        self.material = material
        self.dofmap = dofmap
        self.u = u
        self.residual = residual
        self.reaction_imbalance = reaction_imbalance
        self.bc = bc

        centroids = np.array(
            [common_utils.polygon_centroid(mesh.element_vertices(e)) for e in range(mesh.n_elements)]
        )
        self._centroids = centroids
        self._tree = cKDTree(centroids)
        self._geometry: Dict[int, ElementGeometry] = dict()

    def element_dofs(self, e: int) -> np.ndarray:
        return self.u[DofMap.element_dofs(self.mesh.elements[e])]

    def geometry(self, e: int) -> ElementGeometry:
        if e not in self._geometry:
            self._geometry[e] = edge_geometry(self.mesh.element_vertices(e))
        return self._geometry[e]

    @staticmethod
    def _edge_distances(polygon: np.ndarray, point: np.ndarray) -> np.ndarray:
        """Signed distances from `point` to the edge lines, positive inside."""
        edges = np.roll(polygon, -1, axis=0) - polygon
        rel = point - polygon
        cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
        return cross / np.hypot(edges[:, 0], edges[:, 1])

    def _contains(self, e: int, point: np.ndarray) -> bool:
        polygon = self.mesh.element_vertices(e)
        diameter = common_utils.polygon_diameter(polygon)
        return bool(self._edge_distances(polygon, point).min() >= -LOCATE_TOL * diameter)

    def locate(self, point: np.ndarray) -> int:
        """Index of an element containing `point`."""
        point = np.asarray(point, dtype=float)
        k = min(CANDIDATES, self.mesh.n_elements)
        _, nearest = self._tree.query(point, k=k)
        for e in np.atleast_1d(nearest):
            if self._contains(int(e), point):
                return int(e)
        for e in range(self.mesh.n_elements):
            if self._contains(e, point):
                return e
        raise PointLocationError(f"[ERROR] point {point.tolist()} lies outside the mesh")

    def _evaluation_point(self, e: int, point: np.ndarray) -> np.ndarray:
        """Move points on an element edge or vertex slightly inside."""
        polygon = self.mesh.element_vertices(e)
        diameter = common_utils.polygon_diameter(polygon)
        if self._edge_distances(polygon, point).min() > LOCATE_TOL * diameter:
            return point
        centroid = self._centroids[e]
        direction = centroid - point
        return point + NUDGE * diameter * direction / np.hypot(*direction)

    def element_fields(self, e: int, points: np.ndarray) -> FieldValues:
        """Fields of element e at points strictly inside it."""
        polygon = self.mesh.element_vertices(e)
        basis = serendipity(polygon, np.asarray(points, dtype=float))
        return interpolate_fields(
            polygon, self.geometry(e), self.material, self.element_dofs(e), points, basis
        )

    def element_strains(self, e: int, points: np.ndarray) -> StrainState:
        polygon = self.mesh.element_vertices(e)
        basis = serendipity(polygon, np.asarray(points, dtype=float))
        return recover_fields(
            polygon, self.geometry(e), self.material, self.element_dofs(e), points, basis
        )

    def evaluate(self, point: np.ndarray) -> FieldValues:
        """(w, beta, grad w, grad beta) at any point of the mesh."""
        point = np.asarray(point, dtype=float)
        e = self.locate(point)
        return self.element_fields(e, self._evaluation_point(e, point))

    def strains(self, point: np.ndarray) -> StrainState:
        point = np.asarray(point, dtype=float)
        e = self.locate(point)
        return self.element_strains(e, self._evaluation_point(e, point))

    def deflection(self, point: np.ndarray) -> float:
        return float(self.evaluate(point).w)

    def nodal_table(self) -> np.ndarray:
        """Rows of (node, x, y, w, beta_x, beta_y)."""
        nodes = np.arange(self.mesh.n_nodes)
        return np.column_stack(
            [nodes, self.mesh.vertices, self.u.reshape(-1, 3)]
        )

    def to_csv(self, path: str):
        lines = [CSV_HEADER]
        for row in self.nodal_table():
            values = ",".join(format(v, ".17g") for v in row[1:])
            lines.append(f"{int(row[0])},{values}")
        with open(path, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")

    def metadata(self) -> dict:
        return dict(
            material=self.material.to_dict(),
            bc=None if self.bc is None else self.bc.describe(),
            mesh=self.mesh.stats(),
            n_dofs=self.dofmap.n_dofs,
            n_constrained=len(self.dofmap.prescribed),
            residual=self.residual,
            reaction_imbalance=self.reaction_imbalance,
            shear_strain_convention="gamma = beta + grad(w)",
        )

    def write(self, directory: str, name: str = "solution"):
        """Write <name>.csv and <name>.json into `directory`."""
        os.makedirs(directory, exist_ok=True)
        self.to_csv(os.path.join(directory, f"{name}.csv"))
        with open(os.path.join(directory, f"{name}.json"), "w", encoding="utf-8") as f:
            json.dump(self.metadata(), f, indent=2, sort_keys=True)

    def __repr__(self):
        return "PlateSolution(n_nodes={}, residual={:.3e})".format(
            self.mesh.n_nodes, self.residual
        )


def solution_field(
    mesh: PolyMesh, dofmap: DofMap, u: np.ndarray, material: PlateMaterial
) -> PlateSolution:
    """Wrap a solution vector in the dofmap's (possibly rotated) unknowns."""
    return PlateSolution(mesh, material, dofmap, dofmap.to_nodal(np.asarray(u, dtype=float)))


def solve_plate(
    mesh: PolyMesh,
    material: PlateMaterial,
    q: Load = 1.0,
    bc: BoundaryCondition = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
    verbose: bool = False,
) -> PlateSolution:
    """Assemble, reduce, solve and wrap the solution."""
    k, f, dofmap = assemble(mesh, material, q, bc, degree)
    k_ff, f_f = reduce_system(k, f, dofmap)
    u_free = solve(k_ff, f_f)
    u_tilde = dofmap.expand(u_free)
    residual = relative_residual(k_ff, u_free, f_f)
    imbalance = reaction_imbalance(k, f, u_tilde, dofmap)
    if verbose:
        print(
            "[INFO] solved %d free dofs (%d constrained), residual %.3e"
            % (len(f_f), len(dofmap.prescribed), residual)
        )
    return PlateSolution(
        mesh,
        material,
        dofmap,
        dofmap.to_nodal(u_tilde),
        residual=residual,
        reaction_imbalance=imbalance,
        bc=bc,
    )
