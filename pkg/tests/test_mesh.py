import numpy as np
import pytest
from scipy.spatial import cKDTree

from polyplate import build_mesher
from polyplate.common.errors import MeshGenerationError, MeshParseError, MeshValidationError
import polyplate.common.helper_functions as common_utils
from polyplate.mesh.generators import (
    DISK_SEGMENTS,
    disk_clip_polygon,
    domain_polygon,
    generate_cvt_polygonal,
    generate_structured_quad,
    generate_trapezoidal,
    inside_convex,
    sample_seeds,
)
from polyplate.mesh.io import parse_mesh, read_mesh, write_mesh
from polyplate.mesh.polymesh import BOTTOM, CIRCLE, LEFT, MeshSpec, PolyMesh
from polyplate.utils.config import ConfigDict


def all_convex(mesh: PolyMesh) -> bool:
    return all(
        common_utils.is_convex_ccw(mesh.element_vertices(e)) for e in range(mesh.n_elements)
    )


def test_structured_quad_counts():
    mesh = generate_structured_quad(1.0, 4)
    assert mesh.n_nodes == 25
    assert mesh.n_elements == 16
    assert len(mesh.boundary_edges) == 16
    assert len(mesh.boundary_nodes()) == 16
    assert len(mesh.boundary_nodes(tags=[BOTTOM])) == 5
    assert set(mesh.boundary_edges[:, 2]) == {1, 2, 3, 4}
    assert mesh.area() == pytest.approx(1.0, abs=1e-14)
    assert mesh.stats()["sides"] == {4: 16}


def test_trapezoidal_mesh():
    mesh = generate_trapezoidal(2.0, 4, skew=0.2)
    assert mesh.n_elements == 16
    assert mesh.area() == pytest.approx(4.0, abs=1e-13)
    assert all_convex(mesh)
    # interior column 1 moves up by skew * a / n
    assert mesh.vertices[1 * 5 + 1, 1] == pytest.approx(0.5 + 0.1)
    assert mesh.vertices[1 * 5 + 2, 1] == pytest.approx(0.5 - 0.1)
    # the boundary stays on the square
    left = mesh.vertices[mesh.boundary_nodes(tags=[LEFT])]
    assert np.allclose(left[:, 0], 0.0)

    with pytest.raises(MeshValidationError):
        generate_trapezoidal(1.0, 4, skew=0.6)
    with pytest.raises(MeshValidationError):
        generate_structured_quad(1.0, 0)


def test_cvt_mesh_is_deterministic():
    spec = MeshSpec("unit_square", "cvt_polygonal", 20, 7)
    first = generate_cvt_polygonal(spec, lloyd_iters=10)
    second = generate_cvt_polygonal(spec, lloyd_iters=10)
    other = generate_cvt_polygonal(spec._replace(seed=8), lloyd_iters=10)

    assert first == second
    assert not first == other
    assert first.n_elements == 20
    assert first.area() == pytest.approx(1.0, abs=1e-12)
    assert all_convex(first)
    assert 0 not in set(first.boundary_edges[:, 2])


def test_cvt_rejects_coincident_seeds():
    spec = MeshSpec("unit_square", "cvt_polygonal", 3, 0)
    seeds = np.array([[0.2, 0.2], [0.7, 0.5], [0.2, 0.2]])
    with pytest.raises(MeshGenerationError, match="coincide"):
        generate_cvt_polygonal(spec, lloyd_iters=0, seeds=seeds)


def test_disk_mesh():
    spec = MeshSpec("disk", "cvt_polygonal", 30, 3)
    mesh = generate_cvt_polygonal(spec, lloyd_iters=10)
    corners = len(disk_clip_polygon(1.0, 30))
    radii = np.hypot(*mesh.vertices[mesh.boundary_nodes()].T)

    assert mesh.n_elements == 30
    assert all_convex(mesh)
    assert set(mesh.boundary_edges[:, 2]) == {CIRCLE}
    assert np.all(radii <= 1.0 + 1e-12)
    assert np.all(radii >= np.cos(np.pi / corners) - 1e-12)
    assert abs(mesh.area() - np.pi) < 0.05 * np.pi


def test_disk_clip_corners_lie_on_the_fine_polygon():
    fine = common_utils.regular_polygon(DISK_SEGMENTS)
    for n_cells in (30, 64, 256, 1024, 4096, 10 ** 6):
        clip = disk_clip_polygon(1.0, n_cells)
        assert 8 <= len(clip) <= DISK_SEGMENTS
        assert DISK_SEGMENTS % len(clip) == 0
        # about one corner per boundary cell, never fewer
        assert len(clip) >= min(DISK_SEGMENTS, 2.0 * np.sqrt(np.pi * n_cells))
        stride = DISK_SEGMENTS // len(clip)
        assert np.allclose(clip, fine[::stride], atol=1e-14)

    mesh = generate_cvt_polygonal(MeshSpec("disk", "cvt_polygonal", 64, 5), lloyd_iters=10)
    radii = np.hypot(*mesh.vertices[mesh.boundary_nodes()].T)
    assert np.all(radii <= 1.0 + 1e-12)
    assert np.mean(np.abs(radii - 1.0) < 1e-12) >= 0.9


def test_seeds_start_on_a_jittered_lattice():
    for domain, n in (("unit_square", 402), ("unit_square", 7), ("disk", 120)):
        spec = MeshSpec(domain, "cvt_polygonal", n, 3)
        clip = domain_polygon(spec)
        seeds = sample_seeds(spec, clip)
        assert seeds.shape == (n, 2)
        assert np.all(inside_convex(seeds, clip))
        assert np.array_equal(seeds, sample_seeds(spec, clip))
        assert not np.array_equal(seeds, sample_seeds(spec._replace(seed=4), clip))

    # nearest neighbours sit near the lattice spacing, not at random gaps
    spec = MeshSpec("unit_square", "cvt_polygonal", 402, 42)
    seeds = sample_seeds(spec, domain_polygon(spec))
    spacing = np.sqrt(2.0 / (np.sqrt(3.0) * 402))
    nearest = cKDTree(seeds).query(seeds, k=2)[0][:, 1]
    assert np.median(nearest) > 0.5 * spacing


def test_relaxed_cvt_cells_are_mostly_hexagons():
    mesh = generate_cvt_polygonal(MeshSpec("unit_square", "cvt_polygonal", 200, 42), lloyd_iters=20)
    boundary = set(mesh.boundary_nodes().tolist())
    interior = [loop for loop in mesh.elements if not boundary.intersection(loop.tolist())]
    assert len(interior) > 100
    assert sum(len(loop) == 6 for loop in interior) >= 0.5 * len(interior)
    assert mesh.n_nodes == 2 * mesh.n_elements + 2


def test_mesh_io_round_trip(tmp_path):
    mesh = generate_cvt_polygonal(MeshSpec("unit_square", "cvt_polygonal", 12, 1), lloyd_iters=5)
    path = str(tmp_path / "cvt.mesh")
    write_mesh(mesh, path)
    assert read_mesh(path) == mesh

    with open(path) as f:
        assert f.readline().strip() == "polyplate-mesh v1"


def test_parse_errors_report_the_line():
    good = "polyplate-mesh v1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 1 2\nboundary 3\n0 0 1\n0 1 0\n0 2 4\n"
    mesh = parse_mesh(good)
    assert mesh.n_elements == 1

    cases = [
        ("polyplate-mesh v2\n", 1),
        ("polyplate-mesh v1\nvertices 3\n0 abc\n", 3),
        ("polyplate-mesh v1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 1 7\n", 7),
        ("polyplate-mesh v1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n4 0 1 2\n", 7),
        ("polyplate-mesh v1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 1 2\nboundary 3\n0 0\n", 9),
        (good + "junk\n", 12),
        ("polyplate-mesh v1\nvertices 3\n0 0\n", 4),
    ]
    for text, lineno in cases:
        with pytest.raises(MeshParseError) as err:
            parse_mesh(text)
        assert err.value.lineno == lineno


def test_validation_errors():
    with pytest.raises(MeshValidationError, match="counter-clockwise"):
        PolyMesh([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]], [[0, 1, 2]])
    with pytest.raises(MeshValidationError, match="not convex"):
        PolyMesh([[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]], [[0, 1, 2, 3, 4]])
    with pytest.raises(MeshValidationError, match="belongs to no element"):
        PolyMesh([[0, 0], [1, 0], [0, 1], [5, 5]], [[0, 1, 2]])
    with pytest.raises(MeshValidationError, match="boundary edges"):
        PolyMesh([[0, 0], [1, 0], [0, 1]], [[0, 1, 2]], [[0, 0, 1]])


def test_renumbered_mesh():
    mesh = generate_structured_quad(1.0, 3)
    perm = np.random.default_rng(0).permutation(mesh.n_nodes)
    other = mesh.renumbered(perm)

    assert other.n_nodes == mesh.n_nodes
    assert other.area() == pytest.approx(mesh.area())
    assert np.array_equal(other.vertices[perm], mesh.vertices)
    assert np.array_equal(other.boundary_edges, mesh.boundary_edges)
    with pytest.raises(ValueError):
        mesh.renumbered([0] * mesh.n_nodes)


def test_meshers_from_config():
    cvt = build_mesher(ConfigDict(dict(type="CVTMesher", lloyd_iters=5)))
    assert cvt.generate(12, seed=1).n_elements == 12
    assert cvt.elements_for_nodes(100) == 50

    quads = build_mesher(ConfigDict(dict(type="StructuredQuadMesher")))
    assert quads.generate(16).n_elements == 16
    assert quads.generate_for_nodes(25).n_nodes == 25

    disk_quads = build_mesher(ConfigDict(dict(type="TrapezoidalMesher", domain="disk")))
    with pytest.raises(MeshValidationError):
        disk_quads.generate(16)


if __name__ == "__main__":
    test_structured_quad_counts()
    test_trapezoidal_mesh()
    test_cvt_mesh_is_deterministic()
    test_disk_mesh()
    test_disk_clip_corners_lie_on_the_fine_polygon()
    test_seeds_start_on_a_jittered_lattice()
    test_relaxed_cvt_cells_are_mostly_hexagons()
    test_validation_errors()
