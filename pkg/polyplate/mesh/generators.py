# -*- coding: utf-8 -*-
"""Deterministic mesh generators for the square and disk test geometries.

Polygonal meshes are centroidal Voronoi tessellations. Generators start on a
seeded, jittered hexagonal lattice and are relaxed with Lloyd iterations;
each Voronoi cell is clipped (Sutherland-Hodgman) against the convex domain
polygon.
"""
from typing import List, Tuple

import numpy as np
from scipy.spatial import Voronoi, cKDTree

from polyplate.common.errors import MeshGenerationError, MeshValidationError
import polyplate.common.helper_functions as common_utils
from polyplate.mesh.polymesh import (
    BOTTOM,
    CIRCLE,
    DUPLICATE_TOL,
    LEFT,
    RIGHT,
    TOP,
    MeshSpec,
    PolyMesh,
    edge_owners,
)

DISK_SEGMENTS = 512
SNAP_TOL = 1e-10
# lattice displacement of the initial generators, as a fraction of the spacing
SEED_JITTER = 0.35


def _check_square_args(a: float, n: int):
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise MeshValidationError(f"[ERROR] divisions per side must be an int >= 1, got {n!r}")
    if not a > 0:
        raise MeshValidationError(f"[ERROR] side length must be positive, got {a!r}")


def _square_tags(vertices: np.ndarray, elements: List[np.ndarray], a: float) -> np.ndarray:
    """Tag boundary edges of [0, a]^2 by side."""
    tol = 1e-9 * a
    rows = []
    for edge, owners in edge_owners(elements).items():
        if len(owners) != 1:
            continue
        mid = 0.5 * (vertices[edge[0]] + vertices[edge[1]])
        if abs(mid[1]) < tol:
            tag = BOTTOM
        elif abs(mid[0] - a) < tol:
            tag = RIGHT
        elif abs(mid[1] - a) < tol:
            tag = TOP
        elif abs(mid[0]) < tol:
            tag = LEFT
        else:
            tag = 0
        rows.append((owners[0][0], owners[0][1], tag))
    return np.array(sorted(rows), dtype=np.int64).reshape(-1, 3)


def _disk_tags(elements: List[np.ndarray]) -> np.ndarray:
    rows = [
        (owners[0][0], owners[0][1], CIRCLE)
        for owners in edge_owners(elements).values()
        if len(owners) == 1
    ]
    return np.array(sorted(rows), dtype=np.int64).reshape(-1, 3)


def _grid(a: float, n: int) -> Tuple[np.ndarray, List[np.ndarray]]:
    ticks = np.linspace(0.0, a, n + 1)
    xx, yy = np.meshgrid(ticks, ticks)
    vertices = np.stack([xx.ravel(), yy.ravel()], axis=1)
    elements = []
    for j in range(n):
        for i in range(n):
            v0 = j * (n + 1) + i
            elements.append(np.array([v0, v0 + 1, v0 + n + 2, v0 + n + 1]))
    return vertices, elements


def generate_structured_quad(a: float, n: int) -> PolyMesh:
    """n x n axis-aligned squares tiling [0, a]^2."""
    _check_square_args(a, n)
    vertices, elements = _grid(a, n)
    return PolyMesh(vertices, elements, _square_tags(vertices, elements, a))


def generate_trapezoidal(a: float, n: int, skew: float = 0.2) -> PolyMesh:
    """Structured quads whose interior vertex columns are shifted up and down.

    Column i (0 < i < n) moves its interior vertices by +skew*a/n when i is
    odd and by -skew*a/n when i is even, so every cell is a trapezoid with
    two vertical sides.
    """
    _check_square_args(a, n)
    if not 0.0 <= skew < 0.5:
        raise MeshValidationError(f"[ERROR] skew must lie in [0, 0.5), got {skew!r}")
    vertices, elements = _grid(a, n)
    vertices = vertices.copy()
    step = a / n
    for i in range(1, n):
        sign = 1.0 if i % 2 == 1 else -1.0
        for j in range(1, n):
            vertices[j * (n + 1) + i, 1] += sign * skew * step
    return PolyMesh(vertices, elements, _square_tags(vertices, elements, a))


def disk_clip_polygon(radius: float, n_cells: int) -> np.ndarray:
    """Inscribed polygon used to clip disk cells.

    Its corners are a power-of-two subset of the 512-gon, about one per
    expected boundary cell, so boundary cells do not collect many tiny edges.
    """
    expected = max(8.0, 2.0 * np.sqrt(np.pi * n_cells))
    n_corners = int(min(DISK_SEGMENTS, 2 ** int(np.ceil(np.log2(expected)))))
    return common_utils.regular_polygon(n_corners, radius)


def domain_polygon(spec: MeshSpec) -> np.ndarray:
    if spec.domain == "unit_square":
        a = spec.size
        return np.array([[0.0, 0.0], [a, 0.0], [a, a], [0.0, a]])
    return disk_clip_polygon(spec.size, int(spec.target_elements))


def inside_convex(points: np.ndarray, polygon: np.ndarray, margin: float = 0.0) -> np.ndarray:
    """Mask of points at least `margin` inside a convex CCW polygon."""
    edges = np.roll(polygon, -1, axis=0) - polygon
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    rel = points[:, None, :] - polygon[None, :, :]
    dist = (edges[None, :, 0] * rel[..., 1] - edges[None, :, 1] * rel[..., 0]) / lengths
    return np.all(dist > margin, axis=1)


def uniform_seeds(clip: np.ndarray, n: int, rng: np.random.Generator, margin: float) -> np.ndarray:
    """n uniform points inside the clip polygon by rejection from its bounding box."""
    low, high = clip.min(axis=0), clip.max(axis=0)
    found = np.empty((0, 2))
    while len(found) < n:
        batch = rng.uniform(low, high, size=(2 * (n - len(found)) + 8, 2))
        found = np.vstack([found, batch[inside_convex(batch, clip, margin)]])
    return found[:n]


def sample_seeds(spec: MeshSpec, clip: np.ndarray, jitter: float = SEED_JITTER) -> np.ndarray:
    """Jittered hexagonal lattice of generators inside the clip polygon.

    The lattice spacing gives about one point per target cell and its
    offset is random. Surplus points are dropped at random and missing
    ones are drawn uniformly, so exactly target_elements seeds come back.
    """
    rng = np.random.default_rng(spec.seed)
    n = int(spec.target_elements)
    area = common_utils.polygon_area(clip)
    spacing = np.sqrt(2.0 * area / (np.sqrt(3.0) * n))
    row = 0.5 * np.sqrt(3.0) * spacing
    low, high = clip.min(axis=0) - spacing, clip.max(axis=0) + spacing
    offset = rng.uniform(0.0, 1.0, size=2) * np.array([spacing, row])
    ys = np.arange(low[1] + offset[1], high[1], row)
    rows = []
    for r, y in enumerate(ys):
        xs = np.arange(low[0] + offset[0] + 0.5 * spacing * (r % 2), high[0], spacing)
        rows.append(np.column_stack([xs, np.full_like(xs, y)]))
    lattice = np.vstack(rows)
    moved = lattice + jitter * spacing * rng.uniform(-1.0, 1.0, size=lattice.shape)
    margin = 1e-3 * spacing
    seeds = moved[inside_convex(moved, clip, margin)]
    if len(seeds) > n:
        seeds = seeds[np.sort(rng.choice(len(seeds), size=n, replace=False))]
    elif len(seeds) < n:
        seeds = np.vstack([seeds, uniform_seeds(clip, n - len(seeds), rng, margin)])
    return seeds


def clip_halfplane(polygon: np.ndarray, c0: np.ndarray, c1: np.ndarray, eps: float) -> np.ndarray:
    """Keep the part of a convex polygon left of the directed line c0 -> c1.

    Vertices within `eps` of the line are snapped onto it.
    """
    edge = c1 - c0
    normal = np.array([-edge[1], edge[0]]) / np.hypot(*edge)
    dist = (polygon - c0) @ normal
    out = []
    n = len(polygon)
    for i in range(n):
        p, q = polygon[i], polygon[(i + 1) % n]
        dp, dq = dist[i], dist[(i + 1) % n]
        if dp > eps:
            out.append(p)
        elif dp >= -eps:
            out.append(p - dp * normal)
        if (dp > eps and dq < -eps) or (dp < -eps and dq > eps):
            out.append(p + dp / (dp - dq) * (q - p))
    return np.array(out).reshape(-1, 2)


def clip_convex(polygon: np.ndarray, clip: np.ndarray, eps: float) -> np.ndarray:
    """Sutherland-Hodgman clipping against the half-planes the polygon violates."""
    for k in range(len(clip)):
        c0, c1 = clip[k], clip[(k + 1) % len(clip)]
        edge = c1 - c0
        normal = np.array([-edge[1], edge[0]]) / np.hypot(*edge)
        if np.all((polygon - c0) @ normal > eps):
            continue
        polygon = clip_halfplane(polygon, c0, c1, eps)
        if len(polygon) == 0:
            break
    return polygon


def check_distinct_seeds(seeds: np.ndarray, scale: float):
    pairs = cKDTree(seeds).query_pairs(DUPLICATE_TOL * scale)
    if pairs:
        i, j = sorted(min(pairs))
        raise MeshGenerationError(
            f"[ERROR] seeds {i} and {j} coincide at ({seeds[i, 0]:.17g}, {seeds[i, 1]:.17g})"
        )


def voronoi_cells(seeds: np.ndarray, clip: np.ndarray) -> List[np.ndarray]:
    """Voronoi cells of `seeds` clipped to the convex polygon `clip`, one per seed."""
    scale = float(np.ptp(clip, axis=0).max())
    center = 0.5 * (clip.min(axis=0) + clip.max(axis=0))
    far = 10.0 * scale
    dummies = center + far * np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    diagram = Voronoi(np.vstack([seeds, dummies]))
    cells = []
    for i, seed in enumerate(seeds):
        region = diagram.regions[diagram.point_region[i]]
        if len(region) == 0 or -1 in region:
            raise MeshGenerationError(f"[ERROR] Voronoi cell of seed {i} is unbounded")
        cell = diagram.vertices[region]
        angles = np.arctan2(cell[:, 1] - seed[1], cell[:, 0] - seed[0])
        cell = clip_convex(cell[np.argsort(angles)], clip, SNAP_TOL * scale)
        if len(cell) < 3 or common_utils.polygon_area(cell) <= 0.0:
            raise MeshGenerationError(f"[ERROR] seed {i} has an empty cell inside the domain")
        cells.append(cell)
    return cells


def merge_cells(cells: List[np.ndarray], scale: float) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Weld coincident cell corners into shared vertices."""
    points = np.vstack(cells)
    groups = cKDTree(points).query_ball_point(points, DUPLICATE_TOL * scale)
    representative = np.array([min(group) for group in groups])
    unique, index = np.unique(representative, return_inverse=True)
    vertices = points[unique]

    elements = []
    start = 0
    for c, cell in enumerate(cells):
        loop = index[start : start + len(cell)]
        start += len(cell)
        keep = loop != np.roll(loop, 1)
        loop = loop[keep] if keep.any() else loop[:1]
        if len(loop) < 3:
            raise MeshGenerationError(f"[ERROR] cell {c} collapsed while merging vertices")
        elements.append(loop)
    return vertices, elements


def project_to_circle(
    vertices: np.ndarray, elements: List[np.ndarray], radius: float
) -> np.ndarray:
    """Move boundary vertices onto the circle, keeping every cell convex.

    A projection that would make an adjacent cell non-convex is undone.
    """
    owners = edge_owners(elements)
    boundary = sorted({v for edge, o in owners.items() if len(o) == 1 for v in edge})
    projected = vertices.copy()
    norms = np.hypot(projected[boundary, 0], projected[boundary, 1])
    projected[boundary] *= (radius / norms)[:, None]

    node_cells: dict = dict()
    for e, loop in enumerate(elements):
        for v in loop:
            node_cells.setdefault(int(v), []).append(e)
    suspect = sorted({e for v in boundary for e in node_cells[v]})
    for _ in range(len(suspect) + 1):
        bad = [e for e in suspect if not common_utils.is_convex_ccw(projected[elements[e]])]
        if not bad:
            break
        for e in bad:
            loop = elements[e]
            projected[loop] = vertices[loop]
    return projected


def generate_cvt_polygonal(
    spec: MeshSpec, lloyd_iters: int = 100, seeds: np.ndarray = None
) -> PolyMesh:
    """Lloyd-relaxed Voronoi mesh of the square or the disk.

    Args:
        spec (MeshSpec): domain, target element count and seed
        lloyd_iters (int): number of centroid relaxations
        seeds (np.ndarray): explicit generators; sampled from `spec.seed` if None

    """
    spec.check()
    if lloyd_iters < 0:
        raise MeshValidationError(f"[ERROR] lloyd_iters must be >= 0, got {lloyd_iters}")
    clip = domain_polygon(spec)
    scale = float(np.ptp(clip, axis=0).max())
    if seeds is None:
        seeds = sample_seeds(spec, clip)
    else:
        seeds = np.array(seeds, dtype=float).reshape(-1, 2)
    check_distinct_seeds(seeds, scale)

    for _ in range(lloyd_iters):
        cells = voronoi_cells(seeds, clip)
        seeds = np.array([common_utils.polygon_centroid(cell) for cell in cells])
    cells = voronoi_cells(seeds, clip)

    vertices, elements = merge_cells(cells, scale)
    if spec.domain == "disk":
        vertices = project_to_circle(vertices, elements, spec.size)
        return PolyMesh(vertices, elements, _disk_tags(elements))
    return PolyMesh(vertices, elements, _square_tags(vertices, elements, spec.size))


def generate_mesh(spec: MeshSpec, lloyd_iters: int = 100, skew: float = 0.2) -> PolyMesh:
    """Dispatch on `spec.kind`; quad kinds use round(sqrt(target)) divisions."""
    spec.check()
    if spec.kind == "cvt_polygonal":
        return generate_cvt_polygonal(spec, lloyd_iters)
    if spec.domain != "unit_square":
        raise MeshValidationError(f"[ERROR] {spec.kind} meshes only cover the square")
    n = max(1, int(round(np.sqrt(spec.target_elements))))
    if spec.kind == "structured_quad":
        return generate_structured_quad(spec.size, n)
    return generate_trapezoidal(spec.size, n, skew)
