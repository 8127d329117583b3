# -*- coding: utf-8 -*-
"""Explicit shear matrices of the quadrilateral and the pentagon.

The tables below list, per edge, the indices entering its column of the
assumed shear matrix, numbering nodes and edges the usual way:
nodes 1..n, edges n+1..2n with edge n+1 running from node 1 to node 2.
A row (m, i, k, j) reads

    ( S_m / D_i lam_i - S_k / D_j lam_j ,  -C_m / D_i lam_i + C_k / D_j lam_j )

for the edge from node i to node j, where m is the edge entering node i,
k the edge leaving node j and D the corner determinant.
"""
from typing import Dict, List, Tuple

import numpy as np

from polyplate.basis.wachspress import BasisEval
from polyplate.element.geometry import ElementGeometry

QUAD = [(8, 1, 6, 2), (5, 2, 7, 3), (6, 3, 8, 4), (7, 4, 5, 1)]
PENT = [(10, 1, 7, 2), (6, 2, 8, 3), (7, 3, 9, 4), (8, 4, 10, 5), (9, 5, 6, 1)]
TABLES: Dict[int, List[Tuple[int, int, int, int]]] = {4: QUAD, 5: PENT}


def closed_form_shear(geom: ElementGeometry, basis: BasisEval) -> np.ndarray:
    """Explicit -(2/3) [...] matrix, shape (..., 2, n), without the alpha_k factors."""
    n = geom.n
    if n not in TABLES:
        raise ValueError(f"[ERROR] explicit shear matrices exist for n = 4, 5, not n = {n}")
    c, s = geom.cosines[:, 0], geom.cosines[:, 1]
    det = geom.corner_det
    lam = basis.lam
    out = np.zeros(lam.shape[:-1] + (2, n))
    for col, (m, i, k, j) in enumerate(TABLES[n]):
        m, k = m - n - 1, k - n - 1
        i, j = i - 1, j - 1
        li, lj = lam[..., i] / det[i], lam[..., j] / det[j]
        out[..., 0, col] = s[m] * li - s[k] * lj
        out[..., 1, col] = -c[m] * li + c[k] * lj
    return -(2.0 / 3.0) * out
