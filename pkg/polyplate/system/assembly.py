# -*- coding: utf-8 -*-
"""Global assembly of the plate system and Dirichlet elimination."""
from typing import Iterator, Tuple

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from polyplate.element.dkm_ngon import DEFAULT_STIFFNESS_DEGREE, Load, element_matrices
from polyplate.element.material import PlateMaterial
from polyplate.mesh.polymesh import PolyMesh
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.dofs import DofMap


def element_contributions(
    mesh: PolyMesh,
    material: PlateMaterial,
    q: Load = 1.0,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (global dofs, K_e, f_e) element by element."""
    for e, loop in enumerate(mesh.elements):
        k_e, f_e = element_matrices(mesh.element_vertices(e), material, q, degree)
        yield DofMap.element_dofs(loop), k_e, f_e


def assemble(
    mesh: PolyMesh,
    material: PlateMaterial,
    q: Load = 1.0,
    bc: BoundaryCondition = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> Tuple[csr_matrix, np.ndarray, DofMap]:
    """Assemble K and f and collect the boundary constraints.

    When the boundary condition rotates nodal rotations, the returned system
    is already expressed in the rotated unknowns (T^T K T, T^T f); the
    DofMap carries T to map the solution back.

    Returns:
        K (csr, symmetric), f, dofmap

    """
    dofmap = DofMap(mesh.n_nodes)
    n_dofs = dofmap.n_dofs
    rows, cols, data = [], [], []
    f = np.zeros(n_dofs)
    for dofs, k_e, f_e in element_contributions(mesh, material, q, degree):
        m = len(dofs)
        rows.append(np.repeat(dofs, m))
        cols.append(np.tile(dofs, m))
        data.append(k_e.ravel())
        np.add.at(f, dofs, f_e)

    k = coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_dofs, n_dofs),
    ).tocsr()
    k = (0.5 * (k + k.T)).tocsr()

    if bc is not None:
        bc.apply(mesh, dofmap)
    if not dofmap.prescribed:
        print("[WARNING] no Dirichlet constraints; the free system is singular")

    k = dofmap.rotate_matrix(k)
    f = dofmap.rotate_vector(f)
    return k, f, dofmap


def reduce_system(
    k: csr_matrix, f: np.ndarray, dofmap: DofMap
) -> Tuple[csr_matrix, np.ndarray]:
    """Free-free block and right-hand side with prescribed values moved over."""
    free, constrained = dofmap.free, dofmap.constrained
    k_free = k[free]
    k_ff = k_free[:, free].tocsr()
    f_f = f[free] - k_free[:, constrained] @ dofmap.values
    return k_ff, np.asarray(f_f, dtype=float)


def reaction_imbalance(
    k: csr_matrix, f: np.ndarray, u_tilde: np.ndarray, dofmap: DofMap
) -> float:
    """Mismatch between the w-reactions and the total transverse load.

    Relative to the total load; absolute when the load sums to zero.
    """
    constrained = dofmap.constrained
    w_constrained = constrained[constrained % 3 == 0]
    reactions = (k @ u_tilde - f)[w_constrained]
    total = float(f[0::3].sum())
    mismatch = abs(float(reactions.sum()) + total)
    if total == 0.0:
        return mismatch
    return mismatch / abs(total)
