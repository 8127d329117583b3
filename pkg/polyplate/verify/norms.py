# -*- coding: utf-8 -*-
"""Relative L2 norm and H1 seminorm of the discretization error."""
from typing import Tuple

import numpy as np

from polyplate.basis.quadrature import polygon_quadrature
from polyplate.system.solution import PlateSolution
from polyplate.verify.analytical import AnalyticalSolution

NORM_DEGREE = 6


def _squared_parts(fields) -> Tuple[np.ndarray, np.ndarray]:
    """|u|^2 with u = (w, beta_x, beta_y) and |u'|^2 with the six first derivatives."""
    values = fields.w ** 2 + (fields.beta ** 2).sum(axis=-1)
    derivatives = (fields.grad_w ** 2).sum(axis=-1) + (fields.grad_beta ** 2).sum(axis=(-2, -1))
    return values, derivatives


def error_norms(
    solution: PlateSolution, exact: AnalyticalSolution, degree: int = NORM_DEGREE
) -> Tuple[float, float]:
    """Return (L2_rel, H1_rel).

        L2_rel = sqrt(sum_e int |u_h - u|^2) / sqrt(sum_e int |u|^2)
        H1_rel = sqrt(sum_e int |u_h' - u'|^2) / sqrt(sum_e int |u'|^2)

    Each element is integrated with the fan rule of the given degree.
    """
    if degree < NORM_DEGREE:
        print(f"[WARNING] error norms integrated with degree {degree} < {NORM_DEGREE}")
    mesh = solution.mesh
    err_l2 = ref_l2 = err_h1 = ref_h1 = 0.0
    for e in range(mesh.n_elements):
        quadrature = polygon_quadrature(mesh.element_vertices(e), degree)
        approx = solution.element_fields(e, quadrature.points)
        reference = exact.fields(quadrature.points)
        difference = type(approx)(*(a - r for a, r in zip(approx, reference)))

        diff_values, diff_derivatives = _squared_parts(difference)
        ref_values, ref_derivatives = _squared_parts(reference)
        weights = quadrature.weights
        err_l2 += float(weights @ diff_values)
        ref_l2 += float(weights @ ref_values)
        err_h1 += float(weights @ diff_derivatives)
        ref_h1 += float(weights @ ref_derivatives)

    if ref_l2 == 0.0 or ref_h1 == 0.0:
        raise ValueError(
            f"[ERROR] exact solution {exact.name!r} has a vanishing norm; relative errors are undefined"
        )
    return float(np.sqrt(err_l2 / ref_l2)), float(np.sqrt(err_h1 / ref_h1))
