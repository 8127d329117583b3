# -*- coding: utf-8 -*-
"""Read and write the `polyplate-mesh v1` text format.

    polyplate-mesh v1
    vertices <n>
    <x> <y>                      (17 significant digits)
    elements <m>
    <k> <i_0> ... <i_{k-1}>      (counter-clockwise loop)
    boundary <b>
    <element> <local edge> <tag>
"""
from typing import List, Tuple

import numpy as np

from polyplate.common.errors import MeshParseError
from polyplate.mesh.polymesh import PolyMesh

HEADER = "polyplate-mesh v1"


def write_mesh(mesh: PolyMesh, path: str):
    lines = [HEADER, f"vertices {mesh.n_nodes}"]
    lines.extend(f"{x:.17g} {y:.17g}" for x, y in mesh.vertices)
    lines.append(f"elements {mesh.n_elements}")
    lines.extend(
        " ".join(str(int(v)) for v in [len(loop), *loop]) for loop in mesh.elements
    )
    lines.append(f"boundary {len(mesh.boundary_edges)}")
    lines.extend(" ".join(str(int(v)) for v in row) for row in mesh.boundary_edges)
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


class _Lines:
    """Cursor over the lines of a file that tracks line numbers."""

    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.lineno = 0

    def next(self, what: str) -> str:
        if self.lineno >= len(self.lines):
            raise MeshParseError(f"unexpected end of file, expected {what}", self.lineno + 1)
        line = self.lines[self.lineno].strip()
        self.lineno += 1
        return line

    def section(self, name: str) -> int:
        tokens = self.next(f"'{name} <count>'").split()
        if len(tokens) != 2 or tokens[0] != name:
            raise MeshParseError(f"expected '{name} <count>'", self.lineno)
        count = self.to_int(tokens[1])
        if count < 0:
            raise MeshParseError(f"negative {name} count", self.lineno)
        return count

    def to_int(self, token: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise MeshParseError(f"expected an integer, got {token!r}", self.lineno)

    def to_float(self, token: str) -> float:
        try:
            return float(token)
        except ValueError:
            raise MeshParseError(f"expected a number, got {token!r}", self.lineno)


def parse_mesh(text: str) -> PolyMesh:
    cursor = _Lines(text)
    if cursor.next("header") != HEADER:
        raise MeshParseError(f"header must be '{HEADER}'", cursor.lineno)

    vertices: List[Tuple[float, float]] = []
    for _ in range(cursor.section("vertices")):
        tokens = cursor.next("a vertex").split()
        if len(tokens) != 2:
            raise MeshParseError("a vertex line holds exactly two coordinates", cursor.lineno)
        vertices.append((cursor.to_float(tokens[0]), cursor.to_float(tokens[1])))

    elements = []
    for _ in range(cursor.section("elements")):
        tokens = [cursor.to_int(t) for t in cursor.next("an element").split()]
        if not tokens or tokens[0] != len(tokens) - 1:
            raise MeshParseError("element vertex count does not match its indices", cursor.lineno)
        if tokens[0] < 3:
            raise MeshParseError(f"element has {tokens[0]} vertices, at least 3 are needed", cursor.lineno)
        if min(tokens[1:]) < 0 or max(tokens[1:]) >= len(vertices):
            raise MeshParseError("element indexes a missing vertex", cursor.lineno)
        elements.append(tokens[1:])

    boundary = []
    for _ in range(cursor.section("boundary")):
        tokens = [cursor.to_int(t) for t in cursor.next("a boundary edge").split()]
        if len(tokens) != 3:
            raise MeshParseError("a boundary line holds element, local edge and tag", cursor.lineno)
        boundary.append(tokens)

    while cursor.lineno < len(cursor.lines):
        if cursor.next("end of file"):
            raise MeshParseError("unexpected content after the boundary block", cursor.lineno)

    return PolyMesh(np.array(vertices, dtype=float).reshape(-1, 2), elements, boundary)


def read_mesh(path: str) -> PolyMesh:
    """Read a mesh file; raises MeshParseError or MeshValidationError."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_mesh(f.read())
