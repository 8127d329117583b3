# -*- coding: utf-8 -*-
"""Direct sparse solve of the reduced symmetric positive definite system."""
import numpy as np
from scipy.sparse import csr_matrix, diags
from scipy.sparse.linalg import splu

from polyplate.common.errors import SolverError

RESIDUAL_TOL = 1e-10
PIVOT_TOL = 1e-12


def relative_residual(k: csr_matrix, u: np.ndarray, f: np.ndarray) -> float:
    """||K u - f|| / ||f||, or the absolute residual when f vanishes."""
    if len(f) == 0:
        return 0.0
    r = float(np.linalg.norm(k @ u - f))
    norm_f = float(np.linalg.norm(f))
    return r / norm_f if norm_f > 0.0 else r


def solve(k: csr_matrix, f: np.ndarray, residual_tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Solve K u = f with a symmetric-mode sparse LU.

    The matrix is scaled by its diagonal before factorization. Pivots are
    taken from the diagonal, so for a positive definite K they are the D of
    its LDL^T factorization; a pivot that is not positive relative to the
    largest one raises SolverError. One step of iterative refinement follows
    the solve.
    """
    f = np.asarray(f, dtype=float)
    n = k.shape[0]
    if n == 0:
        return np.zeros(0)

    diagonal = k.diagonal()
    if np.any(diagonal <= 0.0):
        index = int(np.argmin(diagonal))
        raise SolverError(
            f"[ERROR] matrix is not positive definite: diagonal entry {index} is {diagonal[index]:.3e}"
        )
    scaling = diags(1.0 / np.sqrt(diagonal))
    scaled = (scaling @ k @ scaling).tocsc()

    try:
        lu = splu(
            scaled,
            permc_spec="MMD_AT_PLUS_A",
            diag_pivot_thresh=0.0,
            options=dict(SymmetricMode=True),
        )
    except RuntimeError as e:
        raise SolverError(f"[ERROR] factorization failed: {e}")

    pivots = lu.U.diagonal()
    largest = float(np.abs(pivots).max())
    index = int(np.argmin(pivots))
    smallest = float(pivots[index])
    if smallest <= PIVOT_TOL * largest:
        raise SolverError(
            f"[ERROR] matrix is singular or indefinite: smallest pivot {smallest:.3e} "
            f"(relative {smallest / largest:.3e}) at position {index}"
        )

    g = scaling @ f
    v = lu.solve(g)
    v = v + lu.solve(g - scaled @ v)
    u = scaling @ v

    residual = relative_residual(k, u, f)
    if residual > residual_tol:
        print(f"[WARNING] relative residual {residual:.3e} exceeds {residual_tol:.1e}")
    return u
