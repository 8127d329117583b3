# -*- coding: utf-8 -*-
"""Quadrature rules on triangles, convex polygons and segments.

Triangle rules are conical products: a Gauss-Jacobi rule (weight 1 - t)
in the collapsed direction times a Gauss-Legendre rule along it. They are
not the symmetric Gauss (Dunavant-type) triangle rules; weights stay
positive and points interior for any requested degree. A polygon is cut
into a fan of triangles around its area centroid and the triangle rule
is mapped onto each.
"""
from functools import lru_cache
from typing import NamedTuple, Tuple

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from polyplate.common.errors import GeometryError
import polyplate.common.helper_functions as common_utils


class PolygonQuadrature(NamedTuple):
    """Points and weights of a rule on one polygon.

    Attributes:
        points (np.ndarray): (m, 2) physical coordinates
        weights (np.ndarray): (m,) positive weights summing to the area

    """

    points: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=32)
def reference_triangle_rule(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """Rule on the triangle (0,0), (1,0), (0,1) exact up to `degree`.

    Returns:
        (m, 2) barycentric-free reference coordinates and (m,) weights
        summing to 1/2.
    """
    if degree < 1:
        raise ValueError(f"[ERROR] quadrature degree must be >= 1, got {degree}")
    m = (degree + 2) // 2
    t, wt = roots_jacobi(m, 1.0, 0.0)
    s, ws = roots_legendre(m)
    u = 0.5 * (1.0 + t)
    v = 0.5 * (1.0 + s)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    points = np.stack([uu.ravel(), (vv * (1.0 - uu)).ravel()], axis=1)
    weights = np.outer(0.25 * wt, 0.5 * ws).ravel()
    points.setflags(write=False)
    weights.setflags(write=False)
    return points, weights


def triangle_quadrature(triangle: np.ndarray, degree: int) -> PolygonQuadrature:
    ref_points, ref_weights = reference_triangle_rule(int(degree))
    p0, p1, p2 = triangle
    jac = np.stack([p1 - p0, p2 - p0], axis=1)
    det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
    points = p0 + ref_points @ jac.T
    return PolygonQuadrature(points, ref_weights * abs(det))


def polygon_quadrature(polygon: np.ndarray, degree: int = 8) -> PolygonQuadrature:
    """Fan the polygon about its centroid and map a triangle rule onto each piece."""
    polygon = np.asarray(polygon, dtype=float)
    if degree < 1:
        raise ValueError(f"[ERROR] quadrature degree must be >= 1, got {degree}")
    area = common_utils.polygon_signed_area(polygon)
    scale = float(np.ptp(polygon, axis=0).max()) if len(polygon) else 0.0
    if len(polygon) < 3 or area <= 1e-14 * scale ** 2:
        raise GeometryError("[ERROR] cannot integrate over a degenerate polygon")
    center = common_utils.polygon_centroid(polygon)
    points, weights = [], []
    n = len(polygon)
    for k in range(n):
        rule = triangle_quadrature(
            np.stack([center, polygon[k], polygon[(k + 1) % n]]), degree
        )
        points.append(rule.points)
        weights.append(rule.weights)
    return PolygonQuadrature(np.vstack(points), np.concatenate(weights))


def segment_quadrature(p0: np.ndarray, p1: np.ndarray, npoints: int) -> PolygonQuadrature:
    """Gauss-Legendre rule on a straight segment; weights sum to its length."""
    s, ws = roots_legendre(npoints)
    t = 0.5 * (1.0 + s)
    points = p0 + t[:, None] * (p1 - p0)
    return PolygonQuadrature(points, 0.5 * ws * float(np.hypot(*(p1 - p0))))
