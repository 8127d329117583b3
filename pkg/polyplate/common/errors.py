# -*- coding: utf-8 -*-
"""Exceptions raised across polyplate.

Every exception derives from a builtin type so callers that only know
about ValueError / RuntimeError / LookupError keep working.
"""


class MeshValidationError(ValueError):
    """A mesh breaks one of the PolyMesh invariants."""


class MeshParseError(MeshValidationError):
    """Malformed `polyplate-mesh v1` text.

    Attributes:
        lineno (int): 1-based line number of the offending line

    """

    def __init__(self, message: str, lineno: int):
        super(MeshParseError, self).__init__(f"[ERROR] line {lineno}: {message}")
        self.lineno = lineno


class MeshGenerationError(RuntimeError):
    """A generator could not build a mesh from its seeds."""


class BasisEvaluationError(ValueError):
    """Basis functions requested at a point they are not defined at."""


class SerendipityConstructionError(RuntimeError):
    """Singular collocation system while building the serendipity set."""


class GeometryError(ValueError):
    """Degenerate element geometry."""


class SolverError(RuntimeError):
    """Factorization failed or produced non-positive pivots."""


class PointLocationError(LookupError):
    """Evaluation point not covered by any element."""


class ConfigParseError(ValueError):
    """Malformed configuration text."""
