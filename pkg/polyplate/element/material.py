# -*- coding: utf-8 -*-
"""Isotropic plate material and its constitutive matrices."""
import numpy as np


class PlateMaterial:
    """Homogeneous isotropic Reissner-Mindlin plate.

    Attributes:
        E (float): Young's modulus
        nu (float): Poisson ratio
        h (float): thickness
        kappa (float): shear correction factor

    """

    def __init__(self, E: float, nu: float, h: float, kappa: float = 5.0 / 6.0):
        """Initialize."""
        if not E > 0:
            raise ValueError(f"[ERROR] E must be positive, got {E!r}")
        if not 0.0 <= nu < 0.5:
            raise ValueError(f"[ERROR] nu must lie in [0, 0.5), got {nu!r}")
        if not h > 0:
            raise ValueError(f"[ERROR] thickness must be positive, got {h!r}")
        if not kappa > 0:
            raise ValueError(f"[ERROR] kappa must be positive, got {kappa!r}")
        self.E = float(E)
        self.nu = float(nu)
        self.h = float(h)
        self.kappa = float(kappa)

    @property
    def G(self) -> float:
        """Shear modulus."""
        return self.E / (2.0 * (1.0 + self.nu))

    @property
    def D_b(self) -> float:
        """Bending rigidity E h^3 / (12 (1 - nu^2))."""
        return self.E * self.h ** 3 / (12.0 * (1.0 - self.nu ** 2))

    @property
    def D_s(self) -> float:
        """Shear rigidity kappa G h."""
        return self.kappa * self.G * self.h

    @property
    def bending_matrix(self) -> np.ndarray:
        nu = self.nu
        return self.D_b * np.array(
            [[1.0, nu, 0.0], [nu, 1.0, 0.0], [0.0, 0.0, 0.5 * (1.0 - nu)]]
        )

    @property
    def shear_matrix(self) -> np.ndarray:
        return self.D_s * np.eye(2)

    def with_thickness(self, h: float) -> "PlateMaterial":
        return PlateMaterial(self.E, self.nu, h, self.kappa)

    def to_dict(self) -> dict:
        return dict(
            E=self.E, nu=self.nu, h=self.h, kappa=self.kappa, D_b=self.D_b, D_s=self.D_s
        )

    def __repr__(self):
        return "PlateMaterial(E={}, nu={}, h={}, kappa={})".format(
            self.E, self.nu, self.h, self.kappa
        )
