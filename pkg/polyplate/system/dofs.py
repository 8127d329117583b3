# -*- coding: utf-8 -*-
"""Global numbering of nodal dofs and the constrained set."""
from typing import Dict, Sequence

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

DOFS_PER_NODE = 3


class DofMap:
    """Triplets (w, beta_x, beta_y) per node and the prescribed dofs.

    Dofs are numbered node by node: node i owns 3i, 3i + 1 and 3i + 2.
    Boundary conditions that constrain rotated rotation components install
    nodal blocks of a transform with u = T u_tilde; constraints then act on
    u_tilde.

    Attributes:
        n_nodes (int): number of mesh nodes
        prescribed (dict): dof -> prescribed value of u_tilde

    """

    def __init__(self, n_nodes: int):
        """Initialize."""
        self.n_nodes = n_nodes
        self.prescribed: Dict[int, float] = dict()
        self._blocks: Dict[int, np.ndarray] = dict()

    @property
    def n_dofs(self) -> int:
        return DOFS_PER_NODE * self.n_nodes

    @staticmethod
    def node_dofs(node: int) -> np.ndarray:
        return DOFS_PER_NODE * int(node) + np.arange(DOFS_PER_NODE)

    @staticmethod
    def element_dofs(loop: Sequence[int]) -> np.ndarray:
        loop = np.asarray(loop, dtype=np.int64)
        return (DOFS_PER_NODE * loop[:, None] + np.arange(DOFS_PER_NODE)).ravel()

    def constrain(self, dof: int, value: float = 0.0):
        if not 0 <= dof < self.n_dofs:
            raise IndexError(f"[ERROR] dof {dof} is out of range")
        self.prescribed[int(dof)] = float(value)

    def set_node_transform(self, node: int, block: np.ndarray):
        """Replace the 3 x 3 block of T belonging to `node`."""
        self._blocks[int(node)] = np.asarray(block, dtype=float)

    @property
    def rotated(self) -> bool:
        return bool(self._blocks)

    @property
    def transform(self) -> csr_matrix:
        """Block-diagonal T; identity blocks at nodes without a rotation."""
        blocks = np.tile(np.eye(DOFS_PER_NODE), (self.n_nodes, 1, 1))
        for node, block in self._blocks.items():
            blocks[node] = block
        base = DOFS_PER_NODE * np.arange(self.n_nodes)[:, None, None]
        local = np.arange(DOFS_PER_NODE)
        rows = np.broadcast_to(base + local[None, :, None], blocks.shape)
        cols = np.broadcast_to(base + local[None, None, :], blocks.shape)
        return coo_matrix(
            (blocks.ravel(), (rows.ravel(), cols.ravel())), shape=(self.n_dofs, self.n_dofs)
        ).tocsr()

    @property
    def constrained(self) -> np.ndarray:
        return np.array(sorted(self.prescribed), dtype=np.int64)

    @property
    def values(self) -> np.ndarray:
        return np.array([self.prescribed[d] for d in sorted(self.prescribed)], dtype=float)

    @property
    def free(self) -> np.ndarray:
        mask = np.ones(self.n_dofs, dtype=bool)
        mask[self.constrained] = False
        return np.flatnonzero(mask)

    def expand(self, u_free: np.ndarray) -> np.ndarray:
        """Full u_tilde from the free solution and the prescribed values."""
        u = np.zeros(self.n_dofs)
        u[self.free] = u_free
        u[self.constrained] = self.values
        return u

    def to_nodal(self, u_tilde: np.ndarray) -> np.ndarray:
        """Undo the nodal rotations: u = T u_tilde."""
        if not self.rotated:
            return np.asarray(u_tilde, dtype=float)
        return self.transform @ u_tilde

    def rotate_matrix(self, matrix: csr_matrix) -> csr_matrix:
        """T^T K T, or K itself when no node is rotated."""
        if not self.rotated:
            return matrix
        t = self.transform
        return (t.T @ matrix @ t).tocsr()

    def rotate_vector(self, vector: np.ndarray) -> np.ndarray:
        if not self.rotated:
            return vector
        return self.transform.T @ vector

    def __repr__(self):
        return "DofMap(n_nodes={}, n_constrained={})".format(
            self.n_nodes, len(self.prescribed)
        )
