# -*- coding: utf-8 -*-
"""Discrete Kirchhoff-Mindlin element on convex n-gons.

Nodal dofs are (w_i, beta_x_i, beta_y_i) at every vertex. Rotations are
enriched along each edge k by a quadratic tangential bubble
psi_k (C_k, S_k) dbeta_k. The edge variables dbeta_k are eliminated by
the edge-integrated shear constraint, which leaves an element with 3n
dofs:

    dbeta = An u,   B_b = B_bbeta + B_bdbeta An,   B_s = B_sdbeta An

The transverse shear strain convention is gamma = beta + grad(w).
"""
from typing import Callable, NamedTuple, Tuple, Union

import numpy as np

from polyplate.basis.quadrature import PolygonQuadrature, polygon_quadrature
from polyplate.basis.serendipity import serendipity
from polyplate.basis.wachspress import BasisEval, wachspress
from polyplate.element.geometry import ElementGeometry, edge_geometry
from polyplate.element.material import PlateMaterial

DEFAULT_STIFFNESS_DEGREE = 16
MAX_STIFFNESS_DEGREE = 128
# relative Frobenius change of K_e that stops degree doubling
STIFFNESS_REFINEMENT_TOL = 1e-10

Load = Union[float, Callable[[np.ndarray, np.ndarray], np.ndarray]]


class ElementOperator(NamedTuple):
    """Elimination of the edge variables.

    Attributes:
        A_db (np.ndarray): (n, n) diagonal of (2/3) l_k (1 + alpha_k)
        A2 (np.ndarray): (n, 3n) edge constraint rows acting on nodal dofs
        An (np.ndarray): (n, 3n) operator with dbeta = An u
        alpha (np.ndarray): (n,) alpha_k = 12 D_b / (D_s l_k^2)

    """

    A_db: np.ndarray
    A2: np.ndarray
    An: np.ndarray
    alpha: np.ndarray


class ElementMatrices(NamedTuple):
    K_e: np.ndarray
    f_e: np.ndarray


class StrainState(NamedTuple):
    """Strains and stress resultants; trailing axis holds the components.

    Attributes:
        eps_b (np.ndarray): curvatures (beta_x,x, beta_y,y, beta_x,y + beta_y,x)
        eps_s (np.ndarray): assumed shear strains (gamma_xz, gamma_yz)
        moments (np.ndarray): (M_x, M_y, M_xy)
        shear_forces (np.ndarray): (Q_x, Q_y)

    """

    eps_b: np.ndarray
    eps_s: np.ndarray
    moments: np.ndarray
    shear_forces: np.ndarray


class FieldValues(NamedTuple):
    """Interpolated primary fields.

    Attributes:
        w (np.ndarray): deflection
        beta (np.ndarray): rotations (beta_x, beta_y) on the trailing axis
        grad_w (np.ndarray): (w,x, w,y)
        grad_beta (np.ndarray): [[beta_x,x, beta_x,y], [beta_y,x, beta_y,y]]

    """

    w: np.ndarray
    beta: np.ndarray
    grad_w: np.ndarray
    grad_beta: np.ndarray


def edge_alpha(geom: ElementGeometry, material: PlateMaterial) -> np.ndarray:
    return 12.0 * material.D_b / (material.D_s * geom.edge_lengths ** 2)


def bending_B(
    polygon: np.ndarray, geom: ElementGeometry, point: np.ndarray, basis: BasisEval
) -> Tuple[np.ndarray, np.ndarray]:
    """Curvature matrices of the nodal rotations and of the edge variables.

    `basis` must carry the serendipity fields evaluated at `point`; leading
    axes of the result follow the points of `basis`.

    Returns:
        B_bbeta (..., 3, 3n) and B_bdbeta (..., 3, n)

    """
    n = geom.n
    grad_lam = basis.grad_lam
    lead = grad_lam.shape[:-2]
    b_beta = np.zeros(lead + (3, 3 * n))
    dx, dy = grad_lam[..., 0], grad_lam[..., 1]
    b_beta[..., 0, 1::3] = dx
    b_beta[..., 1, 2::3] = dy
    b_beta[..., 2, 1::3] = dy
    b_beta[..., 2, 2::3] = dx

    c, s = geom.cosines[:, 0], geom.cosines[:, 1]
    px, py = basis.grad_psi[..., 0], basis.grad_psi[..., 1]
    b_dbeta = np.stack([px * c, py * s, py * c + px * s], axis=-2)
    return b_beta, b_dbeta


def shear_B_dbeta(
    polygon: np.ndarray, geom: ElementGeometry, material: PlateMaterial, basis: BasisEval
) -> np.ndarray:
    """Assumed shear strains per unit edge variable, shape (..., 2, n).

    The tangential shear on edge k is -(2/3) alpha_k dbeta_k. Nodal
    Cartesian shears follow from the tangential shears of the outgoing edge
    k and incoming edge m by inverting [[C_k, S_k], [C_m, S_m]], and are
    interpolated with the Wachspress coordinates.
    """
    n = geom.n
    alpha = edge_alpha(geom, material)
    c, s = geom.cosines[:, 0], geom.cosines[:, 1]
    det = geom.corner_det
    nodes = np.arange(n)
    nxt = (nodes + 1) % n
    prv = (nodes - 1) % n

    # column k: node k sees edge k as outgoing, node k+1 sees it as incoming
    start = np.stack([s[prv] / det, -c[prv] / det])
    end = np.stack([-s[nxt] / det[nxt], c[nxt] / det[nxt]])
    lam = basis.lam
    columns = start * lam[..., None, :] + end * lam[..., None, nxt]
    return -(2.0 / 3.0) * alpha * columns


def constraint_operator(
    polygon: np.ndarray, geom: ElementGeometry, material: PlateMaterial
) -> ElementOperator:
    """Solve every edge constraint for its edge variable.

        dbeta_k = -[w_j - w_i + (l_k/2)(C_k (bx_i + bx_j) + S_k (by_i + by_j))]
                  / ((2/3) l_k (1 + alpha_k))
    """
    n = geom.n
    ell = geom.edge_lengths
    c, s = geom.cosines[:, 0], geom.cosines[:, 1]
    alpha = edge_alpha(geom, material)

    a2 = np.zeros((n, 3 * n))
    for k in range(n):
        for node, sign in ((k, -1.0), ((k + 1) % n, 1.0)):
            a2[k, 3 * node] += sign
            a2[k, 3 * node + 1] += 0.5 * ell[k] * c[k]
            a2[k, 3 * node + 2] += 0.5 * ell[k] * s[k]
    diag = (2.0 / 3.0) * ell * (1.0 + alpha)
    an = -a2 / diag[:, None]
    return ElementOperator(A_db=np.diag(diag), A2=a2, An=an, alpha=alpha)


def strain_matrices(
    polygon: np.ndarray,
    geom: ElementGeometry,
    material: PlateMaterial,
    basis: BasisEval,
    operator: ElementOperator = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """B_b (..., 3, 3n) and B_s (..., 2, 3n) after elimination."""
    if operator is None:
        operator = constraint_operator(polygon, geom, material)
    b_beta, b_dbeta = bending_B(polygon, geom, None, basis)
    b_b = b_beta + b_dbeta @ operator.An
    b_s = shear_B_dbeta(polygon, geom, material, basis) @ operator.An
    return b_b, b_s


def _integrate_stiffness(polygon, geom, material, quadrature):
    basis = serendipity(polygon, quadrature.points, check=False)
    b_b, b_s = strain_matrices(polygon, geom, material, basis)
    w = quadrature.weights
    k_b = np.einsum("q,qai,ab,qbj->ij", w, b_b, material.bending_matrix, b_b)
    k_s = np.einsum("q,qai,ab,qbj->ij", w, b_s, material.shear_matrix, b_s)
    return 0.5 * (k_b + k_b.T), 0.5 * (k_s + k_s.T)


def _fixed_stiffness(polygon, geom, material, degree):
    k_b, k_s = _integrate_stiffness(polygon, geom, material, polygon_quadrature(polygon, degree))
    return k_b + k_s


def _relative_change(coarse: np.ndarray, fine: np.ndarray) -> float:
    return float(np.linalg.norm(coarse - fine) / np.linalg.norm(fine))


def refined_stiffness_parts(
    polygon: np.ndarray,
    geom: ElementGeometry,
    material: PlateMaterial,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
    tol: float = STIFFNESS_REFINEMENT_TOL,
) -> Tuple[np.ndarray, np.ndarray, int]:
    """K_b, K_s with the fan rule degree doubled until K_e settles.

    The integrands are rational with poles just outside the polygon, so
    short edges and many sides need more points than the nominal degree
    suggests. Doubling stops once the relative change of K_b + K_s is at
    most tol, or at MAX_STIFFNESS_DEGREE.

    Returns:
        K_b and K_s from the finest rule, and the degree of that rule
    """
    polygon = np.asarray(polygon, dtype=float)
    if geom is None:
        geom = edge_geometry(polygon)
    degree = int(degree)
    k_b, k_s = _integrate_stiffness(polygon, geom, material, polygon_quadrature(polygon, degree))
    while degree < MAX_STIFFNESS_DEGREE:
        degree = min(2 * degree, MAX_STIFFNESS_DEGREE)
        fine_b, fine_s = _integrate_stiffness(
            polygon, geom, material, polygon_quadrature(polygon, degree)
        )
        change = _relative_change(k_b + k_s, fine_b + fine_s)
        k_b, k_s = fine_b, fine_s
        if change <= tol:
            break
    return k_b, k_s, degree


def element_stiffness_parts(
    polygon: np.ndarray,
    geom: ElementGeometry,
    material: PlateMaterial,
    quadrature: PolygonQuadrature = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> Tuple[np.ndarray, np.ndarray]:
    """Bending and shear stiffness K_b, K_s, each (3n, 3n) and symmetric.

    A given quadrature is used as is. Without one the degree is refined
    upwards from `degree`.
    """
    polygon = np.asarray(polygon, dtype=float)
    if geom is None:
        geom = edge_geometry(polygon)
    if quadrature is not None:
        return _integrate_stiffness(polygon, geom, material, quadrature)
    k_b, k_s, _ = refined_stiffness_parts(polygon, geom, material, degree)
    return k_b, k_s


def element_stiffness(
    polygon: np.ndarray,
    geom: ElementGeometry,
    material: PlateMaterial,
    quadrature: PolygonQuadrature = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> np.ndarray:
    """K_e = K_b + K_s in dof order (w_1, bx_1, by_1, ..., w_n, bx_n, by_n)."""
    k_b, k_s = element_stiffness_parts(polygon, geom, material, quadrature, degree)
    return k_b + k_s


def evaluate_load(q: Load, points: np.ndarray) -> np.ndarray:
    if callable(q):
        values = q(points[..., 0], points[..., 1])
        return np.broadcast_to(np.asarray(values, dtype=float), points.shape[:-1])
    return np.full(points.shape[:-1], float(q))


def element_load(
    polygon: np.ndarray,
    basis: BasisEval = None,
    quadrature: PolygonQuadrature = None,
    q: Load = 1.0,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> np.ndarray:
    """Consistent load vector: the w entries are the integrals of lambda_i q."""
    polygon = np.asarray(polygon, dtype=float)
    if quadrature is None:
        quadrature = polygon_quadrature(polygon, degree)
    if basis is None:
        basis = wachspress(polygon, quadrature.points, check=False)
    values = evaluate_load(q, quadrature.points)
    f_e = np.zeros(3 * len(polygon))
    f_e[0::3] = (quadrature.weights * values) @ basis.lam
    return f_e


def element_matrices(
    polygon: np.ndarray,
    material: PlateMaterial,
    q: Load = 1.0,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> ElementMatrices:
    polygon = np.asarray(polygon, dtype=float)
    k_e = element_stiffness(polygon, edge_geometry(polygon), material, degree=degree)
    f_e = element_load(polygon, q=q, degree=degree)
    return ElementMatrices(k_e, f_e)


def interpolate_fields(
    polygon: np.ndarray,
    geom: ElementGeometry,
    material: PlateMaterial,
    u_e: np.ndarray,
    point: np.ndarray,
    basis: BasisEval = None,
) -> FieldValues:
    """Deflection and rotations with the eliminated edge bubbles restored."""
    polygon = np.asarray(polygon, dtype=float)
    if basis is None:
        basis = serendipity(polygon, point)
    u_e = np.asarray(u_e, dtype=float)
    dbeta = constraint_operator(polygon, geom, material).An @ u_e
    w_n, bx_n, by_n = u_e[0::3], u_e[1::3], u_e[2::3]
    edge_beta = geom.cosines * dbeta[:, None]

    w = basis.lam @ w_n
    grad_w = np.einsum("...nd,n->...d", basis.grad_lam, w_n)
    nodal = np.stack([bx_n, by_n], axis=1)
    beta = basis.lam @ nodal + basis.psi @ edge_beta
    grad_beta = np.einsum("...nd,nc->...cd", basis.grad_lam, nodal) + np.einsum(
        "...kd,kc->...cd", basis.grad_psi, edge_beta
    )
    return FieldValues(w, beta, grad_w, grad_beta)


def recover_fields(
    polygon: np.ndarray,
    geom: ElementGeometry,
    material: PlateMaterial,
    u_e: np.ndarray,
    point: np.ndarray,
    basis: BasisEval = None,
) -> StrainState:
    """Strains from B_b u, B_s u and resultants from the full D_b, D_s matrices."""
    polygon = np.asarray(polygon, dtype=float)
    if basis is None:
        basis = serendipity(polygon, point)
    b_b, b_s = strain_matrices(polygon, geom, material, basis)
    u_e = np.asarray(u_e, dtype=float)
    eps_b = b_b @ u_e
    eps_s = b_s @ u_e
    return StrainState(
        eps_b=eps_b,
        eps_s=eps_s,
        moments=eps_b @ material.bending_matrix.T,
        shear_forces=eps_s @ material.shear_matrix.T,
    )


def rotation_transform(n: int, angle: float) -> np.ndarray:
    """Dof map u -> T u for coordinates rotated by `angle`; w is unchanged."""
    c, s = np.cos(angle), np.sin(angle)
    block = np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    return np.kron(np.eye(n), block)


def quadrature_refinement_gap(
    polygon: np.ndarray,
    material: PlateMaterial,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
    tol: float = STIFFNESS_REFINEMENT_TOL,
) -> float:
    """Relative Frobenius gap between K_e as assembled and K_e at twice its degree.

    tol=None switches the refinement off, so the fixed rule of `degree` is
    compared with the fixed rule of 2 * degree.
    """
    polygon = np.asarray(polygon, dtype=float)
    geom = edge_geometry(polygon)
    if tol is None:
        coarse, used = _fixed_stiffness(polygon, geom, material, degree), int(degree)
    else:
        k_b, k_s, used = refined_stiffness_parts(polygon, geom, material, degree, tol)
        coarse = k_b + k_s
    return _relative_change(coarse, _fixed_stiffness(polygon, geom, material, 2 * used))
