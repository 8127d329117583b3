# -*- coding: utf-8 -*-
"""Polygonal mesh data model."""
from collections import Counter
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from polyplate.common.errors import MeshValidationError
import polyplate.common.helper_functions as common_utils

CONVEXITY_TOL = 1e-12
DUPLICATE_TOL = 1e-10

DOMAINS = ("unit_square", "disk")
KINDS = ("structured_quad", "trapezoidal", "cvt_polygonal")

# boundary tags of the square domain
BOTTOM, RIGHT, TOP, LEFT = 1, 2, 3, 4
# boundary tag of the disk domain
CIRCLE = 1


class MeshSpec(NamedTuple):
    """What to mesh.

    Attributes:
        domain (str): "unit_square" (side `size`) or "disk" (radius `size`)
        kind (str): "structured_quad", "trapezoidal" or "cvt_polygonal"
        target_elements (int): requested number of elements
        seed (int): seed of the random sampling
        size (float): square side a or disk radius R

    """

    domain: str = "unit_square"
    kind: str = "cvt_polygonal"
    target_elements: int = 16
    seed: int = 42
    size: float = 1.0

    def check(self):
        if self.domain not in DOMAINS:
            raise MeshValidationError(f"[ERROR] unknown domain {self.domain!r}")
        if self.kind not in KINDS:
            raise MeshValidationError(f"[ERROR] unknown mesh kind {self.kind!r}")
        if int(self.target_elements) < 1:
            raise MeshValidationError("[ERROR] target_elements must be >= 1")
        if not self.size > 0:
            raise MeshValidationError("[ERROR] domain size must be positive")


def edge_owners(elements: Sequence[np.ndarray]) -> Dict[Tuple[int, int], List]:
    """Map each undirected edge to the (element, local edge) pairs using it."""
    owners: Dict[Tuple[int, int], List] = dict()
    for e, loop in enumerate(elements):
        n = len(loop)
        for k in range(n):
            i, j = int(loop[k]), int(loop[(k + 1) % n])
            owners.setdefault((min(i, j), max(i, j)), []).append((e, k))
    return owners


class PolyMesh:
    """Mesh of convex counter-clockwise polygons.

    Arrays are read-only after construction, so a mesh can be shared freely.

    Attributes:
        vertices (np.ndarray): (n_nodes, 2) coordinates
        elements (tuple): one int array of vertex indices per element;
            local edge k runs from vertex k to vertex k + 1
        boundary_edges (np.ndarray): (n_boundary, 3) rows of
            (element, local edge, tag)

    """

    def __init__(
        self,
        vertices: np.ndarray,
        elements: Sequence[Sequence[int]],
        boundary_edges: np.ndarray = None,
        validate: bool = True,
    ):
        """Initialize."""
        vertices = np.array(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2:
            raise MeshValidationError("[ERROR] vertices must have shape (n, 2)")
        vertices.setflags(write=False)
        loops = []
        for loop in elements:
            loop = np.array(loop, dtype=np.int64)
            loop.setflags(write=False)
            loops.append(loop)

        self.vertices = vertices
        self.elements = tuple(loops)
        self._owners = edge_owners(self.elements)
        if boundary_edges is None:
            boundary_edges = [
                (e, k, 0) for pairs in self._owners.values() if len(pairs) == 1
                for e, k in pairs
            ]
            boundary_edges = sorted(boundary_edges)
        boundary_edges = np.array(boundary_edges, dtype=np.int64).reshape(-1, 3)
        boundary_edges.setflags(write=False)
        self.boundary_edges = boundary_edges

        if validate:
            self.validate()

    @property
    def n_nodes(self) -> int:
        return len(self.vertices)

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    @property
    def scale(self) -> float:
        """Largest bounding-box extent."""
        if self.n_nodes == 0:
            return 0.0
        return float(np.ptp(self.vertices, axis=0).max())

    def element_vertices(self, e: int) -> np.ndarray:
        return self.vertices[self.elements[e]]

    def element_areas(self) -> np.ndarray:
        return np.array(
            [common_utils.polygon_area(self.element_vertices(e)) for e in range(self.n_elements)]
        )

    def area(self) -> float:
        return float(self.element_areas().sum())

    def mesh_size(self) -> float:
        """Square root of the mean element area."""
        return float(np.sqrt(self.element_areas().mean()))

    def boundary_nodes(self, tags: Sequence[int] = None) -> np.ndarray:
        """Sorted nodes on boundary edges, optionally restricted to some tags."""
        nodes = set()
        for e, k, tag in self.boundary_edges:
            if tags is not None and tag not in tags:
                continue
            loop = self.elements[e]
            nodes.add(int(loop[k]))
            nodes.add(int(loop[(k + 1) % len(loop)]))
        return np.array(sorted(nodes), dtype=np.int64)

    def boundary_segments(self, tags: Sequence[int] = None) -> np.ndarray:
        """(n_boundary, 2) node pairs, oriented with the domain on the left."""
        segments = []
        for e, k, tag in self.boundary_edges:
            if tags is not None and tag not in tags:
                continue
            loop = self.elements[e]
            segments.append((loop[k], loop[(k + 1) % len(loop)]))
        return np.array(segments, dtype=np.int64).reshape(-1, 2)

    def validate(self):
        """Raise MeshValidationError unless every invariant holds."""
        if self.n_elements == 0:
            raise MeshValidationError("[ERROR] mesh has no elements")
        scale = self.scale
        if scale == 0.0:
            raise MeshValidationError("[ERROR] mesh vertices span no area")

        used = np.zeros(self.n_nodes, dtype=bool)
        for e, loop in enumerate(self.elements):
            if len(loop) < 3:
                raise MeshValidationError(
                    f"[ERROR] element {e} has {len(loop)} vertices, at least 3 are needed"
                )
            if loop.min() < 0 or loop.max() >= self.n_nodes:
                raise MeshValidationError(f"[ERROR] element {e} indexes a missing vertex")
            if len(set(loop.tolist())) != len(loop):
                raise MeshValidationError(f"[ERROR] element {e} repeats a vertex")
            coords = self.vertices[loop]
            if common_utils.polygon_signed_area(coords) <= 0.0:
                raise MeshValidationError(f"[ERROR] element {e} is not counter-clockwise")
            cross = common_utils.turn_cross_products(coords)
            if np.any(cross <= CONVEXITY_TOL * scale ** 2):
                raise MeshValidationError(
                    f"[ERROR] element {e} is not convex at local vertex {int(np.argmin(cross))}"
                )
            used[loop] = True
        if not used.all():
            raise MeshValidationError(
                f"[ERROR] vertex {int(np.argmin(used))} belongs to no element"
            )

        pairs = cKDTree(self.vertices).query_pairs(DUPLICATE_TOL * scale)
        if pairs:
            i, j = sorted(min(pairs))
            raise MeshValidationError(f"[ERROR] vertices {i} and {j} coincide")

        single = set()
        for edge, owners in self._owners.items():
            if len(owners) > 2:
                raise MeshValidationError(
                    f"[ERROR] edge {edge} is shared by {len(owners)} elements"
                )
            if len(owners) == 1:
                single.add(owners[0])
        listed = set()
        for e, k, _ in self.boundary_edges:
            if e < 0 or e >= self.n_elements or k < 0 or k >= len(self.elements[e]):
                raise MeshValidationError(f"[ERROR] boundary edge ({e}, {k}) does not exist")
            listed.add((int(e), int(k)))
        if listed != single:
            raise MeshValidationError(
                "[ERROR] boundary edges must be exactly the edges owned by one element"
            )

    def stats(self) -> dict:
        """Counts, side histogram and size measures."""
        areas = self.element_areas()
        sides = Counter(len(loop) for loop in self.elements)
        return dict(
            n_nodes=self.n_nodes,
            n_elements=self.n_elements,
            n_boundary_edges=len(self.boundary_edges),
            sides={int(k): int(v) for k, v in sorted(sides.items())},
            area=float(areas.sum()),
            mesh_size=float(np.sqrt(areas.mean())),
            max_diameter=max(
                common_utils.polygon_diameter(self.element_vertices(e))
                for e in range(self.n_elements)
            ),
        )

    def renumbered(self, permutation: Sequence[int]) -> "PolyMesh":
        """Copy whose old node i becomes node permutation[i]."""
        permutation = np.asarray(permutation, dtype=np.int64)
        if sorted(permutation.tolist()) != list(range(self.n_nodes)):
            raise ValueError("[ERROR] permutation must reorder every node exactly once")
        vertices = np.empty_like(self.vertices)
        vertices[permutation] = self.vertices
        elements = [permutation[loop] for loop in self.elements]
        return PolyMesh(vertices, elements, self.boundary_edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMesh):
            return NotImplemented
        return (
            np.array_equal(self.vertices, other.vertices)
            and len(self.elements) == len(other.elements)
            and all(np.array_equal(a, b) for a, b in zip(self.elements, other.elements))
            and np.array_equal(self.boundary_edges, other.boundary_edges)
        )

    def __repr__(self):
        return "PolyMesh(n_nodes={}, n_elements={}, n_boundary_edges={})".format(
            self.n_nodes, self.n_elements, len(self.boundary_edges)
        )
