# -*- coding: utf-8 -*-
"""Series solutions that check the deflection normalization."""
import numpy as np

from polyplate.element.material import PlateMaterial
from polyplate.verify.reference import KIRCHHOFF_CLAMPED

NAVIER_TERMS = 199


def normalized_deflection(w_center: float, material: PlateMaterial, a: float = 1.0, q: float = 1.0) -> float:
    """w_bar = 100 w_c D_b / (q a^4)."""
    return 100.0 * w_center * material.D_b / (q * a ** 4)


def kirchhoff_clamped_center_coefficient() -> float:
    """Thin clamped square: w_c D_b / (q a^4)."""
    return KIRCHHOFF_CLAMPED


def navier_ss_center_deflection(
    material: PlateMaterial, a: float = 1.0, q: float = 1.0, terms: int = NAVIER_TERMS
) -> float:
    """Center deflection of a hard simply supported square under uniform load.

    The thin-plate double sine series gives w_K; the shear correction adds
    the moment-sum series divided by D_s, which is exact for hard simple
    supports on polygons.
    """
    odd = np.arange(1, terms + 1, 2, dtype=float)
    m, n = np.meshgrid(odd, odd, indexing="ij")
    sign = (-1.0) ** ((m - 1) / 2 + (n - 1) / 2)
    k2 = (m / a) ** 2 + (n / a) ** 2
    load = 16.0 * q / (np.pi ** 2 * m * n)
    moment_sum = float((sign * load / (np.pi ** 2 * k2)).sum())
    w_kirchhoff = float((sign * load / (np.pi ** 4 * k2 ** 2)).sum()) / material.D_b
    return w_kirchhoff + moment_sum / material.D_s
