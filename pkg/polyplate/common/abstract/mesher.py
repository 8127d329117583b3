# -*- coding: utf-8 -*-
"""Abstract Mesher used for all mesh families."""

from abc import ABC, abstractmethod

from polyplate.mesh.polymesh import MeshSpec, PolyMesh


class Mesher(ABC):
    """Abstract Mesher building meshes of one family on one domain.

    Attributes:
        domain (str): "unit_square" or "disk"
        size (float): square side or disk radius
        kind (str): mesh kind written into MeshSpec

    """

    kind = ""

    def __init__(self, domain: str = "unit_square", size: float = 1.0):
        """Initialize."""
        self.domain = domain
        self.size = size

    def spec(self, target_elements: int, seed: int = 42) -> MeshSpec:
        spec = MeshSpec(
            domain=self.domain,
            kind=self.kind,
            target_elements=int(target_elements),
            seed=int(seed),
            size=float(self.size),
        )
        spec.check()
        return spec

    @abstractmethod
    def generate(self, target_elements: int, seed: int = 42) -> PolyMesh:
        pass

    @abstractmethod
    def elements_for_nodes(self, nodes: int) -> int:
        """Element count whose mesh has roughly `nodes` vertices."""
        pass

    def generate_for_nodes(self, nodes: int, seed: int = 42) -> PolyMesh:
        return self.generate(self.elements_for_nodes(nodes), seed)
