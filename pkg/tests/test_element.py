import numpy as np
import pytest

from polyplate.basis.checks import interior_points
from polyplate.basis.quadrature import polygon_quadrature
from polyplate.basis.serendipity import serendipity
from polyplate.basis.wachspress import wachspress
from polyplate.common.errors import GeometryError
import polyplate.common.helper_functions as common_utils
from polyplate.element.dkm_ngon import (
    MAX_STIFFNESS_DEGREE,
    constraint_operator,
    edge_alpha,
    element_load,
    element_matrices,
    element_stiffness,
    element_stiffness_parts,
    interpolate_fields,
    quadrature_refinement_gap,
    recover_fields,
    refined_stiffness_parts,
    rotation_transform,
    shear_B_dbeta,
    strain_matrices,
)
from polyplate.element.geometry import edge_geometry
from polyplate.element.material import PlateMaterial
from polyplate.verify.closed_form import closed_form_shear
from polyplate.verify.suite import closed_form_deviation, zero_eigenvalues

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def material(h: float) -> PlateMaterial:
    return PlateMaterial(E=10.92e6, nu=0.3, h=h)


def zero(x, y):
    return np.zeros_like(x)


def nodal_field(polygon: np.ndarray, w, bx, by) -> np.ndarray:
    x, y = polygon[:, 0], polygon[:, 1]
    u = np.zeros(3 * len(polygon))
    u[0::3] = w(x, y)
    u[1::3] = bx(x, y)
    u[2::3] = by(x, y)
    return u


def patch_field(polygon: np.ndarray) -> np.ndarray:
    """w = 1 + x + y with beta = -grad(w), free of shear and curvature."""
    return nodal_field(
        polygon,
        lambda x, y: 1.0 + x + y,
        lambda x, y: -np.ones_like(x),
        lambda x, y: -np.ones_like(x),
    )


def test_material():
    mat = material(0.1)
    assert mat.D_b == pytest.approx(1000.0, rel=1e-12)
    assert mat.D_s == pytest.approx(350000.0, rel=1e-12)
    assert mat.with_thickness(0.2).D_b == pytest.approx(8000.0, rel=1e-12)
    assert mat.to_dict()["kappa"] == pytest.approx(5.0 / 6.0)
    for kwargs in (dict(E=-1.0, nu=0.3, h=0.1), dict(E=1.0, nu=0.5, h=0.1), dict(E=1.0, nu=0.3, h=0.0)):
        with pytest.raises(ValueError):
            PlateMaterial(**kwargs)


def test_edge_geometry():
    geom = edge_geometry(UNIT_SQUARE)
    assert np.allclose(geom.edge_lengths, 1.0)
    assert np.allclose(geom.cosines, [[1, 0], [0, 1], [-1, 0], [0, -1]])
    assert np.allclose(geom.corner_det, -1.0)
    assert geom.node_edges.tolist() == [[0, 3], [1, 0], [2, 1], [3, 2]]

    with pytest.raises(GeometryError, match="degenerate"):
        edge_geometry(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(GeometryError, match="parallel"):
        edge_geometry(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]))


def test_stiffness_rank_and_symmetry():
    rng = np.random.default_rng(0)
    polygons = [UNIT_SQUARE, common_utils.regular_polygon(6)]
    polygons += [common_utils.random_convex_polygon(n, rng) for n in (3, 5, 7, 8)]
    for polygon in polygons:
        diam = common_utils.polygon_diameter(polygon)
        for ratio in (0.1, 1e-5):
            k_e = element_stiffness(polygon, None, material(ratio * diam))
            assert k_e.shape == (3 * len(polygon), 3 * len(polygon))
            assert np.abs(k_e - k_e.T).max() <= 1e-14 * np.abs(k_e).max()
            assert zero_eigenvalues(k_e, 1e-9) == 3


def test_rigid_modes_carry_no_energy():
    polygon = common_utils.random_convex_polygon(6, np.random.default_rng(1))
    k_e = element_stiffness(polygon, None, material(0.05))
    modes = [
        nodal_field(polygon, lambda x, y: np.ones_like(x), zero, zero),
        nodal_field(polygon, lambda x, y: x, lambda x, y: -np.ones_like(x), zero),
        nodal_field(polygon, lambda x, y: y, zero, lambda x, y: -np.ones_like(x)),
    ]
    scale = np.abs(k_e).max()
    for u in modes:
        assert np.abs(k_e @ u).max() < 1e-10 * scale * np.abs(u).max()


def test_constraint_operator_annihilates_kirchhoff_fields():
    rng = np.random.default_rng(2)
    for n in (3, 4, 5, 7):
        polygon = common_utils.random_convex_polygon(n, rng)
        geom = edge_geometry(polygon)
        operator = constraint_operator(polygon, geom, material(0.1))
        assert np.abs(operator.An @ patch_field(polygon)).max() < 1e-13
        assert np.allclose(np.diag(operator.A_db), (2.0 / 3.0) * geom.edge_lengths * (1.0 + operator.alpha))


def test_patch_field_has_no_strain():
    polygon = common_utils.random_convex_polygon(5, np.random.default_rng(3))
    geom = edge_geometry(polygon)
    mat = material(0.1)
    points = interior_points(polygon, 8, np.random.default_rng(4))
    u = patch_field(polygon)

    state = recover_fields(polygon, geom, mat, u, points)
    assert np.abs(state.eps_b).max() < 1e-12
    assert np.abs(state.eps_s).max() < 1e-12

    fields = interpolate_fields(polygon, geom, mat, u, points)
    assert np.abs(fields.w - (1.0 + points.sum(axis=1))).max() < 1e-12
    assert np.abs(fields.beta + 1.0).max() < 1e-12
    assert np.abs(fields.grad_w - 1.0).max() < 1e-11
    assert np.abs(fields.grad_beta).max() < 1e-11


def test_explicit_quad_and_pentagon_shear_matrices():
    rng = np.random.default_rng(5)
    for n in (4, 5):
        for _ in range(10):
            polygon = common_utils.random_convex_polygon(n, rng)
            points = interior_points(polygon, 10, rng)
            mat = material(0.1 * common_utils.polygon_diameter(polygon))
            assert closed_form_deviation(polygon, mat, points) < 1e-10

            geom = edge_geometry(polygon)
            basis = wachspress(polygon, points)
            general = shear_B_dbeta(polygon, geom, mat, basis)
            explicit = closed_form_shear(geom, basis) * edge_alpha(geom, mat)
            assert np.allclose(general, explicit, rtol=1e-10, atol=1e-12 * np.abs(explicit).max())

    hexagon = common_utils.regular_polygon(6)
    with pytest.raises(ValueError):
        closed_form_shear(edge_geometry(hexagon), wachspress(hexagon, np.zeros(2)))


def test_shear_vanishes_in_the_thin_limit():
    polygon = common_utils.random_convex_polygon(6, np.random.default_rng(6))
    geom = edge_geometry(polygon)
    points = interior_points(polygon, 10, np.random.default_rng(7))
    basis = serendipity(polygon, points)
    u = np.random.default_rng(8).normal(size=3 * len(polygon))

    _, b_s_thick = strain_matrices(polygon, geom, material(0.2), basis)
    _, b_s_thin = strain_matrices(polygon, geom, material(1e-5), basis)
    assert np.abs(b_s_thin @ u).max() < 1e-6 * np.abs(b_s_thick @ u).max()

    k_b, k_s = element_stiffness_parts(polygon, geom, material(1e-5))
    assert np.abs(k_s).max() < 1e-6 * np.abs(k_b).max()


def test_stiffness_quadrature_is_converged():
    rng = np.random.default_rng(9)
    polygons = [common_utils.regular_polygon(6), common_utils.random_convex_polygon(5, rng)]
    polygons += [common_utils.random_convex_polygon(n, rng) for n in range(3, 11)]
    for polygon in polygons:
        for ratio in (0.1, 1e-5):
            mat = material(ratio * common_utils.polygon_diameter(polygon))
            assert quadrature_refinement_gap(polygon, mat, 16) < 1e-8
        assert quadrature_refinement_gap(polygon, mat, 1, tol=None) > 1e-6


def test_stiffness_degree_is_refined_until_settled():
    polygon = common_utils.regular_polygon(6)
    mat = material(0.1 * common_utils.polygon_diameter(polygon))
    geom = edge_geometry(polygon)
    k_b, k_s, used = refined_stiffness_parts(polygon, geom, mat, 16)
    assert 32 <= used <= MAX_STIFFNESS_DEGREE
    reference = element_stiffness(polygon, geom, mat, quadrature=polygon_quadrature(polygon, 96))
    assert np.linalg.norm(k_b + k_s - reference) < 1e-9 * np.linalg.norm(reference)

    # a fixed degree 4 rule is visibly off
    coarse = element_stiffness(polygon, geom, mat, quadrature=polygon_quadrature(polygon, 4))
    assert np.linalg.norm(coarse - reference) > 1e-4 * np.linalg.norm(reference)


def test_consistent_load():
    polygon = common_utils.random_convex_polygon(7, np.random.default_rng(10))
    area = common_utils.polygon_area(polygon)
    f_e = element_load(polygon, q=2.5)
    assert f_e[0::3].sum() == pytest.approx(2.5 * area, rel=1e-13)
    assert np.all(f_e[0::3] > 0.0)
    assert np.all(f_e[1::3] == 0.0) and np.all(f_e[2::3] == 0.0)

    linear = element_load(polygon, q=lambda x, y: 2.0 + x)
    centroid = common_utils.polygon_centroid(polygon)
    assert linear[0::3].sum() == pytest.approx(area * (2.0 + centroid[0]), rel=1e-12)

    k_e, f_unit = element_matrices(polygon, material(0.1))
    assert k_e.shape == (21, 21)
    assert f_unit[0::3].sum() == pytest.approx(area, rel=1e-13)


def test_stiffness_is_invariant_under_rotation():
    polygon = common_utils.random_convex_polygon(5, np.random.default_rng(11))
    angle = 0.7
    c, s = np.cos(angle), np.sin(angle)
    rotated = polygon @ np.array([[c, -s], [s, c]]).T
    mat = material(0.1)

    k_e = element_stiffness(polygon, None, mat)
    k_rot = element_stiffness(rotated, None, mat)
    transform = rotation_transform(len(polygon), angle)
    assert np.abs(transform.T @ k_rot @ transform - k_e).max() < 1e-9 * np.abs(k_e).max()


if __name__ == "__main__":
    test_material()
    test_stiffness_rank_and_symmetry()
    test_explicit_quad_and_pentagon_shear_matrices()
    test_stiffness_is_invariant_under_rotation()
