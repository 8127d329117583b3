# -*- coding: utf-8 -*-
"""Closed-form plate solutions used by the patch test and the benchmarks.

Every field is a bivariate power-series polynomial stored as a
`numpy.polynomial.polynomial` coefficient array c[i, j] of x^i y^j, so
derivatives of any order are exact. The shear strain convention is
gamma = beta + grad(w); under it the equilibrium equations read

    div(Q) + q = 0,   div(M) - Q = 0,   Q = D_s gamma.
"""
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from polyplate.element.dkm_ngon import FieldValues
from polyplate.element.material import PlateMaterial

FD_STEP = 1e-5


def _pad_sum(*coefs: np.ndarray) -> np.ndarray:
    """Sum 2D coefficient arrays of different shapes."""
    rows = max(c.shape[0] for c in coefs)
    cols = max(c.shape[1] for c in coefs)
    total = np.zeros((rows, cols))
    for c in coefs:
        total[: c.shape[0], : c.shape[1]] += c
    return total


def _outer(px, py) -> np.ndarray:
    """Coefficients of px(x) * py(y)."""
    return np.outer(np.atleast_1d(px), np.atleast_1d(py)).astype(float)


def _dx(c: np.ndarray) -> np.ndarray:
    return P.polyder(c, axis=0) if c.shape[0] > 1 else np.zeros((1, c.shape[1]))


def _dy(c: np.ndarray) -> np.ndarray:
    return P.polyder(c, axis=1) if c.shape[1] > 1 else np.zeros((c.shape[0], 1))


class AnalyticalSolution:
    """Polynomial (w, beta_x, beta_y) with the load it equilibrates.

    Attributes:
        name (str): short identifier used in reports
        w (np.ndarray): coefficients of the bending part of w
        w_shear (np.ndarray): coefficients of the shear part of w
        beta_x (np.ndarray): coefficients of beta_x
        beta_y (np.ndarray): coefficients of beta_y
        q (np.ndarray): coefficients of the transverse load
        bc (str): boundary condition the solution satisfies
        params (dict): material and geometry parameters it was built for

    """

    def __init__(
        self,
        name: str,
        w: np.ndarray,
        beta_x: np.ndarray,
        beta_y: np.ndarray,
        q: np.ndarray,
        bc: str,
        params: dict = None,
        w_shear: np.ndarray = None,
    ):
        """Initialize."""
        self.name = name
        self.w = np.atleast_2d(np.asarray(w, dtype=float))
        if w_shear is None:
            w_shear = np.zeros((1, 1))
        self.w_shear = np.atleast_2d(np.asarray(w_shear, dtype=float))
        self.beta_x = np.atleast_2d(np.asarray(beta_x, dtype=float))
        self.beta_y = np.atleast_2d(np.asarray(beta_y, dtype=float))
        self.q = np.atleast_2d(np.asarray(q, dtype=float))
        self.bc = bc
        self.params = dict() if params is None else dict(params)

    @staticmethod
    def _eval(c: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.asarray(P.polyval2d(x, y, c), dtype=float)

    @property
    def w_total(self) -> np.ndarray:
        return _pad_sum(self.w, self.w_shear)

    def deflection(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self._eval(self.w_total, x, y)

    def rotations(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.stack([self._eval(self.beta_x, x, y), self._eval(self.beta_y, x, y)], axis=-1)

    def grad_w(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        w = self.w_total
        return np.stack([self._eval(_dx(w), x, y), self._eval(_dy(w), x, y)], axis=-1)

    def grad_beta(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """[[beta_x,x, beta_x,y], [beta_y,x, beta_y,y]] on the trailing axes."""
        rows = [
            np.stack([self._eval(_dx(c), x, y), self._eval(_dy(c), x, y)], axis=-1)
            for c in (self.beta_x, self.beta_y)
        ]
        return np.stack(rows, axis=-2)

    def fields(self, points: np.ndarray) -> FieldValues:
        points = np.asarray(points, dtype=float)
        x, y = points[..., 0], points[..., 1]
        return FieldValues(
            w=self.deflection(x, y),
            beta=self.rotations(x, y),
            grad_w=self.grad_w(x, y),
            grad_beta=self.grad_beta(x, y),
        )

    def load(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self._eval(self.q, x, y)

    @property
    def load_function(self) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
        """The load as an (x, y) callable, or a float when it is constant."""
        if self.q.size == 1:
            return float(self.q.ravel()[0])
        return self.load

    def boundary_field(
        self, x: np.ndarray, y: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        beta = self.rotations(x, y)
        return self.deflection(x, y), beta[..., 0], beta[..., 1]

    def _equilibrium_terms(self, material: PlateMaterial):
        nu, d_b, d_s = material.nu, material.D_b, material.D_s
        bx, by = self.beta_x, self.beta_y
        # curvatures and resultants as polynomials
        k_xx, k_yy = _dx(bx), _dy(by)
        k_xy = _pad_sum(_dy(bx), _dx(by))
        m_x = d_b * _pad_sum(k_xx, nu * k_yy)
        m_y = d_b * _pad_sum(nu * k_xx, k_yy)
        m_xy = d_b * 0.5 * (1.0 - nu) * k_xy
        # beta + grad of the bending part is summed first; it cancels exactly
        q_x = d_s * _pad_sum(bx, _dx(self.w), _dx(self.w_shear))
        q_y = d_s * _pad_sum(by, _dy(self.w), _dy(self.w_shear))
        div_q = _pad_sum(_dx(q_x), _dy(q_y))
        div_m_x = _pad_sum(_dx(m_x), _dy(m_xy))
        div_m_y = _pad_sum(_dx(m_xy), _dy(m_y))
        return div_q, div_m_x, div_m_y, q_x, q_y

    def strong_residual(self, points: np.ndarray, material: PlateMaterial) -> np.ndarray:
        """Residuals of the three equilibrium equations, shape (..., 3)."""
        points = np.asarray(points, dtype=float)
        x, y = points[..., 0], points[..., 1]
        div_q, div_m_x, div_m_y, q_x, q_y = self._equilibrium_terms(material)
        return np.stack(
            [
                self._eval(div_q, x, y) + self.load(x, y),
                self._eval(div_m_x, x, y) - self._eval(q_x, x, y),
                self._eval(div_m_y, x, y) - self._eval(q_y, x, y),
            ],
            axis=-1,
        )

    def relative_strong_residual(self, points: np.ndarray, material: PlateMaterial) -> float:
        """Largest residual relative to the largest term entering the equations."""
        points = np.asarray(points, dtype=float)
        x, y = points[..., 0], points[..., 1]
        terms = self._equilibrium_terms(material)
        scale = max(
            max(float(np.abs(self._eval(c, x, y)).max()) for c in terms),
            float(np.abs(self.load(x, y)).max()),
        )
        residual = float(np.abs(self.strong_residual(points, material)).max())
        return residual / scale if scale > 0.0 else residual

    def gradient_self_check(self, points: np.ndarray, step: float = FD_STEP) -> float:
        """Max relative gap between exact gradients and central differences."""
        points = np.asarray(points, dtype=float)
        x, y = points[..., 0], points[..., 1]
        values = [
            lambda a, b: self.deflection(a, b),
            lambda a, b: self._eval(self.beta_x, a, b),
            lambda a, b: self._eval(self.beta_y, a, b),
        ]
        exact = np.concatenate(
            [self.grad_w(x, y)[None], self.grad_beta(x, y).swapaxes(0, -2)], axis=0
        )
        fd = np.stack(
            [
                np.stack(
                    [
                        (f(x + step, y) - f(x - step, y)) / (2.0 * step),
                        (f(x, y + step) - f(x, y - step)) / (2.0 * step),
                    ],
                    axis=-1,
                )
                for f in values
            ]
        )
        scale = float(np.abs(exact).max())
        deviation = float(np.abs(fd - exact).max())
        return deviation / scale if scale > 0.0 else deviation

    def __repr__(self):
        return f"AnalyticalSolution(name={self.name!r}, bc={self.bc!r})"


def patch_field() -> AnalyticalSolution:
    """w = 1 + x + y, beta_x = beta_y = -1: zero shear, zero curvature."""
    return AnalyticalSolution(
        name="patch",
        w=[[1.0, 1.0], [1.0, 0.0]],
        beta_x=[[-1.0]],
        beta_y=[[-1.0]],
        q=[[0.0]],
        bc="prescribed_field",
    )


def nonuniform_square_solution(material: PlateMaterial) -> AnalyticalSolution:
    """Clamped unit square under the polynomial load of the thickness study.

        beta_x = -y^3 (y-1)^3 x^2 (x-1)^2 (2x-1),  beta_y likewise
        w = x^3 (x-1)^3 y^3 (y-1)^3 / 3 - 2 h^2 / (5 (1 - nu)) A_1

    The load is D_b times the bracket of the classical closed form, which
    makes the fields exact for every thickness when kappa = 5/6.
    """
    nu, h = material.nu, material.h
    p = np.array([0.0, -1.0, 1.0])  # x (x - 1)
    p3 = P.polypow(p, 3)
    quint = np.array([1.0, -5.0, 5.0])  # 5 x^2 - 5 x + 1
    f = P.polymul(p, quint)

    w_bending = _outer(p3, p3) / 3.0
    a1 = _pad_sum(_outer(f, p3), _outer(p3, f))
    w_shear = -2.0 * h ** 2 / (5.0 * (1.0 - nu)) * a1

    # 12 y(y-1)(5x^2-5x+1)(2 y^2 (y-1)^2 + x(x-1)(5y^2-5y+1)) and its mirror
    first = 12.0 * _pad_sum(_outer(quint, 2.0 * p3), _outer(f, f))
    second = 12.0 * _pad_sum(_outer(2.0 * p3, quint), _outer(f, f))
    bracket = _pad_sum(first, second)
    return AnalyticalSolution(
        name="square_nonuniform",
        w=w_bending,
        beta_x=-_dx(w_bending),
        beta_y=-_dy(w_bending),
        q=material.D_b * bracket,
        bc="clamped",
        params=dict(material.to_dict(), a=1.0),
        w_shear=w_shear,
    )


def circular_plate_solution(material: PlateMaterial, q: float = 1.0) -> AnalyticalSolution:
    """Clamped disk of radius 1 under uniform load q.

        w = q (1 - r^2)^2 / (64 D_b) + q (1 - r^2) / (4 D_s)
        beta = -q (x, y) (r^2 - 1) / (16 D_b)
    """
    d_b, d_s = material.D_b, material.D_s
    one_minus_r2 = np.array([[1.0, 0.0, -1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    w_bending = q / (64.0 * d_b) * _mul2d(one_minus_r2, one_minus_r2)
    return AnalyticalSolution(
        name="circular",
        w=w_bending,
        beta_x=-_dx(w_bending),
        beta_y=-_dy(w_bending),
        q=[[q]],
        bc="clamped",
        params=dict(material.to_dict(), radius=1.0),
        w_shear=q / (4.0 * d_s) * one_minus_r2,
    )


def _mul2d(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients of the product of two bivariate polynomials."""
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
    for i, j in zip(*np.nonzero(a)):
        out[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
    return out
