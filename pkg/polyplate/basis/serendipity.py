# -*- coding: utf-8 -*-
"""Quadratic serendipity functions built from pairwise Wachspress products.

The construction takes every product mu_ab = lambda_a lambda_b, keeps the
2n boundary products (a == b, or a and b adjacent) and redistributes each
interior product onto them so that quadratics are still reproduced
(transformation A). A second transformation B, the inverse of the nodal
collocation matrix, turns the result into a Lagrange basis at the vertices
and edge midpoints.
"""
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from polyplate.basis.wachspress import BasisEval, check_polygon, wachspress
from polyplate.common.errors import SerendipityConstructionError

COLLOCATION_COND_LIMIT = 1e12


@lru_cache(maxsize=16)
def pair_layout(n: int) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """Boundary pairs (n vertex pairs, then n edge pairs) and interior pairs."""
    boundary = [(a, a) for a in range(n)] + [(a, (a + 1) % n) for a in range(n)]
    adjacent = {frozenset(p) for p in boundary}
    interior = [
        (c, d) for c in range(n) for d in range(c + 1, n) if frozenset((c, d)) not in adjacent
    ]
    return boundary, interior


def _pair_data(polygon: np.ndarray, pairs: List[Tuple[int, int]]) -> np.ndarray:
    """Columns [1, (v_a + v_b)/2, sym(v_a v_b^T)] for each pair, as a 6 x npairs matrix."""
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    va, vb = polygon[a], polygon[b]
    mid = 0.5 * (va + vb)
    return np.stack(
        [
            np.ones(len(pairs)),
            mid[:, 0],
            mid[:, 1],
            va[:, 0] * vb[:, 0],
            0.5 * (va[:, 0] * vb[:, 1] + va[:, 1] * vb[:, 0]),
            va[:, 1] * vb[:, 1],
        ]
    )


def _pair_products(lam: np.ndarray, pairs: List[Tuple[int, int]]) -> np.ndarray:
    """mu_aa for diagonal pairs and 2 mu_ab otherwise; last axis runs over pairs."""
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    factor = np.array([1.0 if p[0] == p[1] else 2.0 for p in pairs])
    return factor * lam[..., a] * lam[..., b]


def _pair_product_gradients(
    lam: np.ndarray, grad_lam: np.ndarray, pairs: List[Tuple[int, int]]
) -> np.ndarray:
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    factor = np.array([1.0 if p[0] == p[1] else 2.0 for p in pairs])
    grad = lam[..., b, None] * grad_lam[..., a, :] + lam[..., a, None] * grad_lam[..., b, :]
    return factor[:, None] * grad


def nodal_wachspress(n: int) -> np.ndarray:
    """Wachspress values at the 2n nodes: vertices, then edge midpoints."""
    lam = np.zeros((2 * n, n))
    lam[np.arange(n), np.arange(n)] = 1.0
    for k in range(n):
        lam[n + k, k] = 0.5
        lam[n + k, (k + 1) % n] = 0.5
    return lam


def serendipity_transform(polygon: np.ndarray) -> np.ndarray:
    """Matrix mapping all pair products to the 2n Lagrange serendipity functions.

    Columns follow the boundary pairs, then the interior pairs, of `pair_layout`.
    """
    n = len(polygon)
    boundary, interior = pair_layout(n)
    transform_a = np.eye(2 * n, 2 * n + len(interior))
    if interior:
        lhs = _pair_data(polygon, boundary)
        rhs = _pair_data(polygon, interior)
        coeff, _, rank, _ = np.linalg.lstsq(lhs, rhs, rcond=None)
        if rank < 6:
            raise SerendipityConstructionError(
                "[ERROR] boundary pairs cannot reproduce quadratics on this polygon"
            )
        transform_a[:, 2 * n :] = coeff

    # interior products vanish at every node, so only boundary pairs enter here
    collocation = _pair_products(nodal_wachspress(n), boundary)
    if np.linalg.cond(collocation) > COLLOCATION_COND_LIMIT:
        raise SerendipityConstructionError("[ERROR] serendipity collocation matrix is singular")
    transform_b = np.linalg.inv(collocation.T)
    return transform_b @ transform_a


def serendipity(polygon: np.ndarray, point: np.ndarray, check: bool = True) -> BasisEval:
    """Vertex and mid-edge serendipity functions with their gradients.

    Returns:
        BasisEval with the Wachspress fields, phi (vertex functions) and
        psi (mid-edge functions, equal to 1 at the midpoint of edge k).

    """
    polygon = check_polygon(polygon) if check else np.asarray(polygon, dtype=float)
    n = len(polygon)
    base = wachspress(polygon, point, check=False)
    boundary, interior = pair_layout(n)
    pairs = boundary + interior

    transform = serendipity_transform(polygon)
    products = _pair_products(base.lam, pairs)
    gradients = _pair_product_gradients(base.lam, base.grad_lam, pairs)
    values = products @ transform.T
    grads = np.einsum("...pd,fp->...fd", gradients, transform)

    return BasisEval(
        lam=base.lam,
        grad_lam=base.grad_lam,
        psi=values[..., n:],
        grad_psi=grads[..., n:, :],
        phi=values[..., :n],
        grad_phi=grads[..., :n, :],
    )


def serendipity_at_nodes(polygon: np.ndarray) -> np.ndarray:
    """Values of all 2n functions (columns) at the 2n nodes (rows).

    Uses the exact nodal Wachspress values, so the result is the identity
    up to round-off when the construction is correct.
    """
    polygon = check_polygon(polygon)
    n = len(polygon)
    boundary, interior = pair_layout(n)
    products = _pair_products(nodal_wachspress(n), boundary + interior)
    return products @ serendipity_transform(polygon).T
