# -*- coding: utf-8 -*-
"""Wachspress barycentric coordinates on convex polygons.

For vertex i with neighbours i-1 and i+1,

    w_i(x) = A(v_{i-1}, v_i, v_{i+1}) / (A(x, v_{i-1}, v_i) A(x, v_i, v_{i+1}))

and lambda_i = w_i / sum_j w_j, where A is the signed triangle area.
Gradients use grad(lambda_i) = lambda_i (R_i - sum_j lambda_j R_j) with
R_i = grad(w_i) / w_i.
"""
from typing import NamedTuple

import numpy as np

from polyplate.common.errors import BasisEvaluationError
import polyplate.common.helper_functions as common_utils

INTERIOR_TOL = 1e-12


class BasisEval(NamedTuple):
    """Basis values and gradients at one point or a batch of points.

    Leading axes are the points (absent for a single point); then one entry
    per vertex (lam, phi) or per edge (psi); gradients end with (d/dx, d/dy).

    Attributes:
        lam (np.ndarray): Wachspress coordinates
        grad_lam (np.ndarray): their gradients
        psi (np.ndarray): mid-edge serendipity functions, edge k = (v_k, v_k+1)
        grad_psi (np.ndarray): their gradients
        phi (np.ndarray): vertex serendipity functions
        grad_phi (np.ndarray): their gradients

    """

    lam: np.ndarray
    grad_lam: np.ndarray
    psi: np.ndarray = None
    grad_psi: np.ndarray = None
    phi: np.ndarray = None
    grad_phi: np.ndarray = None


def check_polygon(polygon: np.ndarray) -> np.ndarray:
    polygon = np.asarray(polygon, dtype=float)
    if polygon.ndim != 2 or polygon.shape[1] != 2 or len(polygon) < 3:
        raise BasisEvaluationError("[ERROR] polygon must be an (n >= 3, 2) array")
    if not common_utils.is_convex_ccw(polygon):
        raise BasisEvaluationError("[ERROR] polygon must be convex and counter-clockwise")
    return polygon


def edge_areas(polygon: np.ndarray, points: np.ndarray) -> np.ndarray:
    """A(x, v_j, v_{j+1}) for every point (rows) and edge j (columns)."""
    d0 = polygon[None, :, :] - points[:, None, :]
    d1 = np.roll(polygon, -1, axis=0)[None, :, :] - points[:, None, :]
    return 0.5 * (d0[..., 0] * d1[..., 1] - d0[..., 1] * d1[..., 0])


def wachspress(polygon: np.ndarray, point: np.ndarray, check: bool = True) -> BasisEval:
    """Wachspress coordinates and their analytic gradients.

    Args:
        polygon (np.ndarray): (n, 2) convex counter-clockwise vertices
        point (np.ndarray): (2,) point or (m, 2) points strictly inside
        check (bool): validate convexity of the polygon

    Returns:
        BasisEval with lam (n,) or (m, n) and grad_lam (n, 2) or (m, n, 2)

    """
    polygon = check_polygon(polygon) if check else np.asarray(polygon, dtype=float)
    point = np.asarray(point, dtype=float)
    single = point.ndim == 1
    points = np.atleast_2d(point)

    nxt = np.roll(polygon, -1, axis=0)
    prv = np.roll(polygon, 1, axis=0)
    ell = np.hypot(*(nxt - polygon).T)
    diam = common_utils.polygon_diameter(polygon)

    areas = edge_areas(polygon, points)
    distance = 2.0 * areas / ell[None, :]
    if np.any(distance <= INTERIOR_TOL * diam):
        bad = int(np.argmin(distance.min(axis=1)))
        raise BasisEvaluationError(
            f"[ERROR] point {points[bad].tolist()} is not strictly inside the polygon"
        )

    corner = 0.5 * (
        (polygon[:, 0] - prv[:, 0]) * (nxt[:, 1] - polygon[:, 1])
        - (polygon[:, 1] - prv[:, 1]) * (nxt[:, 0] - polygon[:, 0])
    )
    areas_prev = np.roll(areas, 1, axis=1)
    weights = corner[None, :] / (areas_prev * areas)
    lam = weights / weights.sum(axis=1, keepdims=True)

    # gradient of A(x, v_j, v_{j+1}) is constant per edge
    grad_area = 0.5 * np.stack(
        [polygon[:, 1] - nxt[:, 1], nxt[:, 0] - polygon[:, 0]], axis=1
    )
    ratio = grad_area[None, :, :] / areas[:, :, None]
    r = -(np.roll(ratio, 1, axis=1) + ratio)
    mean_r = (lam[:, :, None] * r).sum(axis=1, keepdims=True)
    grad_lam = lam[:, :, None] * (r - mean_r)

    if single:
        return BasisEval(lam[0], grad_lam[0])
    return BasisEval(lam, grad_lam)
