# -*- coding: utf-8 -*-
"""Benchmark problems: patch test, square plate tables, convergence studies."""
import csv
from itertools import combinations
import os
import time
from typing import List, Sequence, Tuple

import numpy as np

from polyplate.common.abstract.problem import CheckResult, Problem
from polyplate.element.dkm_ngon import DEFAULT_STIFFNESS_DEGREE
from polyplate.element.material import PlateMaterial
from polyplate.mesh.polymesh import PolyMesh
from polyplate.registry import PROBLEMS, build_mesher
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.solution import solve_plate
from polyplate.verify import oracles, reference
from polyplate.verify.analytical import (
    AnalyticalSolution,
    circular_plate_solution,
    nonuniform_square_solution,
)
from polyplate.verify.convergence import ConvergencePoint, ConvergenceRecord, convergence_report
from polyplate.verify.norms import NORM_DEGREE, error_norms
from polyplate.verify.patch import DEFAULT_E, DEFAULT_NU, patch_test

EXACT_SOLUTIONS = dict(square_nonuniform=nonuniform_square_solution, circular=circular_plate_solution)
ORACLE_POINTS = 100


def solve_patch_member(
    mesh: PolyMesh, h_over_a: float, material_kwargs: dict, degree: int, norm_degree: int
) -> Tuple[float, float]:
    material = PlateMaterial(h=h_over_a, **material_kwargs)
    return patch_test(mesh, h_over_a, material, degree, norm_degree)


def solve_udl_member(
    mesh: PolyMesh,
    h: float,
    material_kwargs: dict,
    bc_kind: str,
    center: Sequence[float],
    degree: int,
    dump_path: str = None,
) -> dict:
    material = PlateMaterial(h=h, **material_kwargs)
    solution = solve_plate(mesh, material, 1.0, BoundaryCondition(bc_kind), degree)
    w_center = solution.deflection(np.asarray(center, dtype=float))
    if dump_path:
        solution.write(os.path.dirname(dump_path), os.path.basename(dump_path))
    return dict(
        w_center=w_center,
        w_bar=oracles.normalized_deflection(w_center, material, a=mesh.scale),
        residual=solution.residual,
        reaction_imbalance=solution.reaction_imbalance,
    )


def solve_convergence_member(
    mesh: PolyMesh,
    h: float,
    material_kwargs: dict,
    exact_name: str,
    degree: int,
    norm_degree: int,
    dump_path: str = None,
) -> Tuple[ConvergencePoint, float]:
    material = PlateMaterial(h=h, **material_kwargs)
    exact = EXACT_SOLUTIONS[exact_name](material)
    start = time.perf_counter()
    solution = solve_plate(
        mesh, material, exact.load_function, BoundaryCondition(exact.bc), degree
    )
    l2, h1 = error_norms(solution, exact, norm_degree)
    seconds = time.perf_counter() - start
    if dump_path:
        solution.write(os.path.dirname(dump_path), os.path.basename(dump_path))
    point = ConvergencePoint(mesh.mesh_size(), solution.dofmap.n_dofs, l2, h1, seconds)
    return point, solution.reaction_imbalance


def _material_kwargs(material_kwargs: dict = None) -> dict:
    if material_kwargs is None:
        return dict(E=DEFAULT_E, nu=DEFAULT_NU, kappa=5.0 / 6.0)
    return dict(material_kwargs)


def square_udl_benchmark(
    bc: str,
    h_over_a: float,
    mesh: PolyMesh,
    material_kwargs: dict = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
) -> float:
    """Normalized center deflection 100 w_c D_b / (q a^4) of a square under unit load."""
    a = mesh.scale
    result = solve_udl_member(
        mesh, h_over_a * a, _material_kwargs(material_kwargs), bc, (0.5 * a, 0.5 * a), degree
    )
    return result["w_bar"]


def convergence_series(
    exact_name: str,
    h_over_a: float,
    meshes: Sequence[PolyMesh],
    material_kwargs: dict = None,
    degree: int = DEFAULT_STIFFNESS_DEGREE,
    norm_degree: int = NORM_DEGREE,
) -> ConvergenceRecord:
    """Error norms against a closed-form solution over meshes ordered coarse to fine."""
    record = ConvergenceRecord(exact_name, float(h_over_a))
    for mesh in meshes:
        point, _ = solve_convergence_member(
            mesh, h_over_a, _material_kwargs(material_kwargs), exact_name, degree, norm_degree
        )
        record.add(point)
    return record


def square_nonuniform_benchmark(
    h_over_a: float, meshes: Sequence[PolyMesh], **kwargs
) -> ConvergenceRecord:
    return convergence_series("square_nonuniform", h_over_a, meshes, **kwargs)


def circular_benchmark(h_over_r: float, meshes: Sequence[PolyMesh], **kwargs) -> ConvergenceRecord:
    return convergence_series("circular", h_over_r, meshes, **kwargs)


def _write_rows(path: str, fields: Sequence[str], rows: List[dict]):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(fields))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})


@PROBLEMS.register_module
class PatchTestProblem(Problem):
    """Zero shear deformation patch test on every configured mesh family."""

    name = "patch"

    def run(self) -> List[CheckResult]:
        hp = self.hyper_params
        tol = self.tolerances
        meshes = []
        for mesher_cfg in hp.meshers:
            mesher = build_mesher(mesher_cfg)
            for n_elements in hp.element_series:
                mesh = mesher.generate(n_elements, self.seed)
                label = f"{mesher.kind}_{n_elements}"
                self.save_mesh(mesh, label)
                meshes.append((label, mesh))
                print(f"[INFO] mesh {label}: {mesh}")

        items = [
            (mesh, ratio, self.material_kwargs, hp.stiffness_degree, hp.norm_degree)
            for _, mesh in meshes
            for ratio in hp.thickness_ratios
        ]
        results = iter(self.map_series(solve_patch_member, items))

        rows = []
        for label, mesh in meshes:
            for ratio in hp.thickness_ratios:
                l2, h1 = next(results)
                rows.append(
                    dict(mesh=label, nodes=mesh.n_nodes, h_over_a=float(ratio), l2_rel=l2, h1_rel=h1)
                )
                self.write_log(dict(mesh=label, h_over_a=ratio, l2_rel=l2, h1_rel=h1))
                self.check_at_most(f"patch {label} h/a={ratio:g} L2", l2, tol.patch_l2)
                self.check_at_most(f"patch {label} h/a={ratio:g} H1", h1, tol.patch_h1)

        _write_rows(
            os.path.join(self.output_dir, "patch_errors.csv"),
            ("mesh", "nodes", "h_over_a", "l2_rel", "h1_rel"),
            rows,
        )
        return self.checks


@PROBLEMS.register_module
class SquareUDLProblem(Problem):
    """Center deflection of the unit square under uniform load.

    Rows of (nodes, h_over_a, w_bar) are written for every node target and
    thickness; the finest mesh is compared with the exact table.
    """

    name = "square_udl"

    def normalization_check(self):
        hp = self.hyper_params
        tol = self.tolerances
        thin = hp.thin_ratio
        if hp.bc == "clamped":
            value = 100.0 * oracles.kirchhoff_clamped_center_coefficient()
        else:
            material = self.material(thin)
            value = oracles.normalized_deflection(
                oracles.navier_ss_center_deflection(material), material
            )
        exact = reference.exact_w_bar(hp.bc, thin)
        self.check_at_most(
            f"{hp.bc} normalization oracle h/a={thin:g}", abs(value - exact) / exact, tol.oracle_rel
        )

    def run(self) -> List[CheckResult]:
        hp = self.hyper_params
        tol = self.tolerances
        self.normalization_check()

        meshes = []
        for nodes in hp.node_targets:
            mesh = self.mesher.generate_for_nodes(nodes, self.seed)
            self.save_mesh(mesh, f"{self.mesher.kind}_{nodes}nodes")
            meshes.append(mesh)
            print(f"[INFO] mesh for {nodes} target nodes: {mesh}")

        items = []
        for index, mesh in enumerate(meshes):
            for ratio in hp.thickness_ratios:
                dump = None
                if index == len(meshes) - 1:
                    dump = os.path.join(self.output_dir, f"solution_{hp.bc}_h{ratio:g}")
                items.append(
                    (mesh, ratio * mesh.scale, self.material_kwargs, hp.bc, hp.center,
                     hp.stiffness_degree, dump)
                )
        results = iter(self.map_series(solve_udl_member, items))

        rows = []
        finest = dict()
        for mesh in meshes:
            for ratio in hp.thickness_ratios:
                result = next(results)
                rows.append(dict(nodes=mesh.n_nodes, h_over_a=float(ratio), w_bar=result["w_bar"]))
                finest[ratio] = result
                print(
                    "[INFO] %s nodes=%d h/a=%g w_bar=%.6f residual=%.2e"
                    % (hp.bc, mesh.n_nodes, ratio, result["w_bar"], result["residual"])
                )
                self.write_log(dict(nodes=mesh.n_nodes, h_over_a=ratio, w_bar=result["w_bar"]))
                if hp.bc == "clamped":
                    self.check_at_most(
                        f"equilibrium nodes={mesh.n_nodes} h/a={ratio:g}",
                        result["reaction_imbalance"],
                        tol.equilibrium,
                    )

        for ratio in hp.checked_ratios:
            if ratio not in finest:
                continue
            exact = reference.exact_w_bar(hp.bc, ratio)
            w_bar = finest[ratio]["w_bar"]
            self.check_at_most(
                f"{hp.bc} w_bar h/a={ratio:g} vs {exact}", abs(w_bar - exact) / exact, tol.deflection_rel
            )

        _write_rows(
            os.path.join(self.output_dir, f"deflection_{hp.bc}.csv"),
            ("nodes", "h_over_a", "w_bar"),
            rows,
        )
        reference.write_reference_csv(hp.bc, os.path.join(self.output_dir, f"reference_{hp.bc}.csv"))
        return self.checks


class ConvergenceProblem(Problem):
    """Error norms of a clamped problem with a closed-form solution over a series."""

    def exact(self, material: PlateMaterial) -> AnalyticalSolution:
        return EXACT_SOLUTIONS[self.name](material)

    def oracle_points(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def boundary_points(self) -> np.ndarray:
        raise NotImplementedError

    def oracle_checks(self, ratio: float):
        """Self-consistency of the closed form before it is trusted."""
        tol = self.tolerances
        exact = self.exact(self.material(ratio))
        points = self.oracle_points(np.random.default_rng(self.seed))
        self.check_at_most(
            f"{self.name} exact gradients vs finite differences h/a={ratio:g}",
            exact.gradient_self_check(points),
            tol.gradient_fd,
        )
        self.check_at_most(
            f"{self.name} exact strong-form residual h/a={ratio:g}",
            exact.relative_strong_residual(points, self.material(ratio)),
            tol.strong_residual,
        )
        x, y = self.boundary_points().T
        interior = np.abs(np.concatenate(exact.boundary_field(*points.T))).max()
        on_boundary = np.abs(np.concatenate(exact.boundary_field(x, y))).max()
        self.check_at_most(
            f"{self.name} exact boundary values h/a={ratio:g}", on_boundary / interior, tol.boundary
        )

    def run(self) -> List[CheckResult]:
        hp = self.hyper_params
        tol = self.tolerances
        for ratio in hp.thickness_ratios:
            self.oracle_checks(ratio)

        meshes = []
        for n_elements in hp.element_series:
            mesh = self.mesher.generate(n_elements, self.seed)
            self.save_mesh(mesh, f"{self.mesher.kind}_{n_elements}")
            meshes.append(mesh)
            print(f"[INFO] mesh for {n_elements} target elements: {mesh}")

        items = [
            (mesh, ratio * self.mesher.size, self.material_kwargs, self.name,
             hp.stiffness_degree, hp.norm_degree, None)
            for ratio in hp.thickness_ratios
            for mesh in meshes
        ]
        results = iter(self.map_series(solve_convergence_member, items))

        records = []
        for ratio in hp.thickness_ratios:
            record = ConvergenceRecord(self.name, float(ratio))
            for mesh in meshes:
                point, imbalance = next(results)
                record.add(point)
                print(
                    "[INFO] %s h/a=%g size=%.4f dofs=%d L2=%.3e H1=%.3e (%.1fs)"
                    % (self.name, ratio, point.mesh_size, point.dofs, point.l2_rel,
                       point.h1_rel, point.seconds)
                )
                self.write_log(dict(h_over_a=ratio, **point._asdict()))
                self.check_at_most(
                    f"{self.name} equilibrium size={point.mesh_size:.4f} h/a={ratio:g}",
                    imbalance,
                    tol.equilibrium,
                )
            records.append(record)

        slopes = dict()
        for record in records:
            l2_slope, h1_slope = record.slopes()
            slopes[record.h_over_a] = (l2_slope, h1_slope)
            self.write_log(dict(h_over_a=record.h_over_a, l2_slope=l2_slope, h1_slope=h1_slope))
            self.check_within(f"{self.name} L2 rate h/a={record.h_over_a:g}", l2_slope, tol.l2_slope)
            self.check_within(f"{self.name} H1 rate h/a={record.h_over_a:g}", h1_slope, tol.h1_slope)
            if len(record) > 2:
                trimmed = record.slopes_without_coarsest()
                shift = max(abs(trimmed[0] - l2_slope), abs(trimmed[1] - h1_slope))
                self.check_at_most(
                    f"{self.name} rate shift without coarsest mesh h/a={record.h_over_a:g}",
                    shift,
                    tol.slope_robustness,
                )
        for (r1, s1), (r2, s2) in combinations(slopes.items(), 2):
            spread = max(abs(s1[0] - s2[0]), abs(s1[1] - s2[1]))
            self.check_at_most(
                f"{self.name} rate spread h/a={r1:g} vs {r2:g}", spread, tol.slope_spread
            )

        convergence_report(records, self.output_dir, timing=hp.get("record_timing", False))
        return self.checks


@PROBLEMS.register_module
class SquareNonuniformProblem(ConvergenceProblem):
    """Clamped unit square under the polynomial load with a closed-form solution."""

    name = "square_nonuniform"

    def oracle_points(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(0.0, 1.0, size=(ORACLE_POINTS, 2))

    def boundary_points(self) -> np.ndarray:
        t = np.linspace(0.0, 1.0, 25)
        zeros, ones = np.zeros_like(t), np.ones_like(t)
        return np.concatenate(
            [np.stack(p, axis=1) for p in ((t, zeros), (ones, t), (t, ones), (zeros, t))]
        )


@PROBLEMS.register_module
class CircularPlateProblem(ConvergenceProblem):
    """Clamped unit disk under uniform load."""

    name = "circular"

    def oracle_points(self, rng: np.random.Generator) -> np.ndarray:
        radius = np.sqrt(rng.uniform(0.0, 1.0, ORACLE_POINTS))
        theta = rng.uniform(0.0, 2.0 * np.pi, ORACLE_POINTS)
        return np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=1)

    def boundary_points(self) -> np.ndarray:
        theta = np.linspace(0.0, 2.0 * np.pi, 100, endpoint=False)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
