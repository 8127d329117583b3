# -*- coding: utf-8 -*-
"""Edge lengths, directional cosines and corner determinants of a polygon."""
from typing import NamedTuple

import numpy as np

from polyplate.common.errors import GeometryError
import polyplate.common.helper_functions as common_utils

EDGE_TOL = 1e-12
CORNER_TOL = 1e-10


class ElementGeometry(NamedTuple):
    """Per-edge and per-corner data of one element.

    Edge k runs from vertex k to vertex k + 1. Vertex i starts edge i and
    ends edge i - 1.

    Attributes:
        vertices (np.ndarray): (n, 2) counter-clockwise coordinates
        edge_lengths (np.ndarray): (n,) lengths l_k
        cosines (np.ndarray): (n, 2) rows (C_k, S_k) of the unit edge tangents
        node_edges (np.ndarray): (n, 2) rows (k, m) = (outgoing, incoming) edge
        corner_det (np.ndarray): (n,) Delta_i = C_k S_m - S_k C_m

    """

    vertices: np.ndarray
    edge_lengths: np.ndarray
    cosines: np.ndarray
    node_edges: np.ndarray
    corner_det: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)


def edge_geometry(polygon: np.ndarray) -> ElementGeometry:
    polygon = np.asarray(polygon, dtype=float)
    n = len(polygon)
    if n < 3:
        raise GeometryError("[ERROR] an element needs at least three vertices")
    diam = common_utils.polygon_diameter(polygon)
    edges = np.roll(polygon, -1, axis=0) - polygon
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if np.any(lengths < EDGE_TOL * diam):
        k = int(np.argmin(lengths))
        raise GeometryError(f"[ERROR] edge {k} is degenerate (length {lengths[k]:.3e})")
    cosines = edges / lengths[:, None]

    outgoing = np.arange(n)
    incoming = (outgoing - 1) % n
    c, s = cosines[:, 0], cosines[:, 1]
    det = c[outgoing] * s[incoming] - s[outgoing] * c[incoming]
    if np.any(np.abs(det) <= CORNER_TOL):
        i = int(np.argmin(np.abs(det)))
        raise GeometryError(
            f"[ERROR] corner {i} has parallel edges (determinant {det[i]:.3e})"
        )
    return ElementGeometry(
        vertices=polygon,
        edge_lengths=lengths,
        cosines=cosines,
        node_edges=np.stack([outgoing, incoming], axis=1),
        corner_det=det,
    )
