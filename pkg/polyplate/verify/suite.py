# -*- coding: utf-8 -*-
"""Element-level acceptance checks and the pass / fail summary table."""
import os
from typing import Dict, List, Sequence

import numpy as np

from polyplate.basis.checks import gradient_check, interior_points
from polyplate.basis.serendipity import serendipity, serendipity_at_nodes
from polyplate.basis.wachspress import wachspress
from polyplate.common.abstract.problem import CheckResult, Problem
import polyplate.common.helper_functions as common_utils
from polyplate.element.dkm_ngon import (
    STIFFNESS_REFINEMENT_TOL,
    edge_alpha,
    element_stiffness,
    quadrature_refinement_gap,
    shear_B_dbeta,
)
from polyplate.element.geometry import edge_geometry
from polyplate.registry import PROBLEMS
from polyplate.utils.config import Config, ConfigDict
from polyplate.verify.closed_form import closed_form_shear

# acceptance tolerances live in one file shared with every config
BASE_TOLERANCES_PATH = os.path.normpath(
    os.path.join(
        os.path.dirname(os.path.abspath(__file__)),
        os.pardir,
        os.pardir,
        "configs",
        "_base_",
        "tolerances.py",
    )
)
DEFAULT_TOLERANCES = ConfigDict(Config.fromfile(BASE_TOLERANCES_PATH).to_dict()["tolerances"])


def zero_eigenvalues(k_e: np.ndarray, tol: float) -> int:
    """Number of eigenvalues below tol times the largest one."""
    eig = np.linalg.eigvalsh(0.5 * (k_e + k_e.T))
    return int(np.sum(eig < tol * eig.max()))


def closed_form_deviation(polygon: np.ndarray, material, points: np.ndarray) -> float:
    """Gap between the general shear matrix and alpha_k times the explicit one.

    Each column is compared relative to its own largest entry; a sign
    mismatch on a non-negligible entry counts as a full deviation.
    """
    geom = edge_geometry(polygon)
    basis = wachspress(polygon, points)
    general = shear_B_dbeta(polygon, geom, material, basis)
    scaled = closed_form_shear(geom, basis) * edge_alpha(geom, material)
    scale = np.abs(scaled).max(axis=tuple(range(scaled.ndim - 1)))
    deviation = float((np.abs(general - scaled).max(axis=tuple(range(scaled.ndim - 1))) / scale).max())
    significant = np.abs(scaled) > 1e-8 * scale
    if np.any(np.sign(general[significant]) != np.sign(scaled[significant])):
        return max(deviation, 1.0)
    return deviation


def basis_identity_gap(polygon: np.ndarray, points: np.ndarray) -> float:
    """Worst failure of partition of unity, linear and quadratic precision and the Lagrange property."""
    n = len(polygon)
    basis = serendipity(polygon, points)
    midpoints = 0.5 * (polygon + np.roll(polygon, -1, axis=0))
    nodes = np.vstack([polygon, midpoints])
    values = np.concatenate([basis.phi, basis.psi], axis=-1)

    gaps = [
        np.abs(basis.lam.sum(axis=-1) - 1.0).max(),
        np.abs(values.sum(axis=-1) - 1.0).max(),
        np.abs(basis.lam @ polygon - points).max(),
        np.abs(values @ nodes - points).max(),
        np.abs(values @ nodes ** 2 - points ** 2).max(),
        np.abs(values @ (nodes[:, 0] * nodes[:, 1]) - points[:, 0] * points[:, 1]).max(),
        np.abs(serendipity_at_nodes(polygon) - np.eye(2 * n)).max(),
    ]
    return float(max(gaps))


@PROBLEMS.register_module
class ElementChecksProblem(Problem):
    """Rank, explicit shear matrices, basis identities and quadrature refinement on random polygons."""

    name = "element_checks"

    def polygons(self, count: int, sides: Sequence[int], rng: np.random.Generator) -> List[np.ndarray]:
        lo, hi = sides
        return [
            common_utils.random_convex_polygon(int(rng.integers(lo, hi + 1)), rng)
            for _ in range(count)
        ]

    def rank_check(self, rng: np.random.Generator):
        hp = self.hyper_params
        failures = 0
        for polygon in self.polygons(hp.rank_polygons, hp.rank_sides, rng):
            diam = common_utils.polygon_diameter(polygon)
            for ratio in hp.rank_ratios:
                k_e = element_stiffness(
                    polygon, None, self.material(ratio * diam), degree=hp.stiffness_degree
                )
                zeros = zero_eigenvalues(k_e, self.tolerances.rank_eig)
                if zeros != 3:
                    failures += 1
                    print(
                        f"[WARNING] {len(polygon)}-gon at h/diam={ratio:g} has {zeros} zero eigenvalues"
                    )
        self.check("element rank 3n-3 (failed cases)", failures, failures == 0, "== 0")

    def closed_form_check(self, rng: np.random.Generator):
        hp = self.hyper_params
        worst = 0.0
        for n in (4, 5):
            for polygon in self.polygons(hp.closed_form_polygons, (n, n), rng):
                points = interior_points(polygon, hp.closed_form_points, rng)
                diam = common_utils.polygon_diameter(polygon)
                material = self.material(hp.closed_form_ratio * diam)
                worst = max(worst, closed_form_deviation(polygon, material, points))
        self.check_at_most("explicit quad / pentagon shear matrices", worst, self.tolerances.explicit_shear)

    def basis_check(self, rng: np.random.Generator):
        hp = self.hyper_params
        identity = gradient = 0.0
        for index, polygon in enumerate(self.polygons(hp.basis_polygons, hp.basis_sides, rng)):
            points = interior_points(polygon, hp.basis_points, rng)
            identity = max(identity, basis_identity_gap(polygon, points))
            gradient = max(
                gradient,
                gradient_check(wachspress, polygon, hp.basis_points, seed=self.seed + index),
                gradient_check(
                    lambda p, x: serendipity(p, x, check=False),
                    polygon,
                    hp.basis_points,
                    seed=self.seed + index,
                ),
            )
        self.check_at_most("basis identities", identity, self.tolerances.basis_identity)
        self.check_at_most("basis gradients vs finite differences", gradient, self.tolerances.basis_fd)

    def quadrature_check(self, rng: np.random.Generator):
        hp = self.hyper_params
        # None compares the fixed rule of stiffness_degree with twice that degree
        tol = hp.get("stiffness_refinement_tol", STIFFNESS_REFINEMENT_TOL)
        worst = 0.0
        for polygon in self.polygons(hp.quadrature_polygons, hp.basis_sides, rng):
            diam = common_utils.polygon_diameter(polygon)
            material = self.material(hp.closed_form_ratio * diam)
            worst = max(worst, quadrature_refinement_gap(polygon, material, hp.stiffness_degree, tol))
        label = "fixed degree" if tol is None else "refined from degree"
        self.check_at_most(
            f"stiffness quadrature {label} {hp.stiffness_degree} vs twice the final degree",
            worst,
            self.tolerances.quadrature_refinement,
        )

    def run(self) -> List[CheckResult]:
        rng = np.random.default_rng(self.seed)
        self.rank_check(rng)
        self.closed_form_check(rng)
        self.basis_check(rng)
        self.quadrature_check(rng)
        return self.checks


def print_summary(results: Dict[str, Sequence[CheckResult]]) -> bool:
    """Print one row per check and return whether every check passed."""
    width = max([len(c.name) for checks in results.values() for c in checks] + [5])
    print("=" * (width + 48))
    print(f"{'result':6}  {'problem':18}  {'check':{width}}  {'value':>10}  bound")
    print("-" * (width + 48))
    passed = True
    for problem, checks in results.items():
        for c in checks:
            verdict = "PASS" if c.passed else "FAIL"
            print(f"{verdict:6}  {problem:18}  {c.name:{width}}  {c.value:10.3e}  {c.bound}")
            passed = passed and c.passed
    print("=" * (width + 48))
    total = sum(len(checks) for checks in results.values())
    failed = sum(not c.passed for checks in results.values() for c in checks)
    print(f"[INFO] {total - failed}/{total} checks passed")
    return passed
