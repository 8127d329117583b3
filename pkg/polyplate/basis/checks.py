# -*- coding: utf-8 -*-
"""Finite-difference checks of analytic basis gradients."""
from typing import Callable

import numpy as np

from polyplate.basis.wachspress import BasisEval
import polyplate.common.helper_functions as common_utils

FD_STEP = 1e-6


def interior_points(polygon: np.ndarray, npoints: int, rng: np.random.Generator) -> np.ndarray:
    """Random points kept away from the boundary.

    Points are Dirichlet-weighted vertex combinations pulled 10% toward the
    centroid.
    """
    weights = rng.dirichlet(np.ones(len(polygon)), size=npoints)
    center = common_utils.polygon_centroid(polygon)
    return center + 0.9 * (weights @ polygon - center)


def gradient_check(
    basis_fn: Callable[[np.ndarray, np.ndarray], BasisEval],
    polygon: np.ndarray,
    npoints: int = 10,
    seed: int = 0,
) -> float:
    """Max deviation between analytic and central-difference gradients.

    Every field the basis returns (lam, psi, phi) is checked. Deviations are
    relative to the largest analytic gradient, floored at 1 / diameter.
    """
    polygon = np.asarray(polygon, dtype=float)
    rng = np.random.default_rng(seed)
    points = interior_points(polygon, npoints, rng)
    diam = common_utils.polygon_diameter(polygon)
    step = FD_STEP * diam

    exact = basis_fn(polygon, points)
    shifted = []
    for axis in range(2):
        offset = np.zeros(2)
        offset[axis] = step
        shifted.append((basis_fn(polygon, points + offset), basis_fn(polygon, points - offset)))

    deviation = 0.0
    for name in ("lam", "psi", "phi"):
        values = getattr(exact, name)
        if values is None:
            continue
        analytic = getattr(exact, "grad_" + name)
        fd = np.stack(
            [(getattr(plus, name) - getattr(minus, name)) / (2.0 * step) for plus, minus in shifted],
            axis=-1,
        )
        scale = max(float(np.abs(analytic).max()), 1.0 / diam)
        deviation = max(deviation, float(np.abs(fd - analytic).max()) / scale)
    return deviation
