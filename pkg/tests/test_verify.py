import argparse
import csv
import filecmp
import os

import numpy as np
import pytest

from polyplate import build_problem
from polyplate.common.abstract.problem import CheckResult
import polyplate.element.dkm_ngon as dkm_ngon
from polyplate.element.material import PlateMaterial
from polyplate.mesh.generators import (
    generate_cvt_polygonal,
    generate_structured_quad,
    generate_trapezoidal,
)
from polyplate.mesh.polymesh import MeshSpec
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.solution import solve_plate
from polyplate.utils.config import ConfigDict
from polyplate.verify import oracles, reference
from polyplate.verify.analytical import (
    AnalyticalSolution,
    circular_plate_solution,
    nonuniform_square_solution,
    patch_field,
)
from polyplate.verify.benchmarks import square_nonuniform_benchmark, square_udl_benchmark
from polyplate.verify.convergence import ConvergencePoint, ConvergenceRecord, convergence_report
from polyplate.verify.norms import error_norms
from polyplate.verify.patch import patch_test
from polyplate.verify.suite import DEFAULT_TOLERANCES, print_summary


def material(h: float) -> PlateMaterial:
    return PlateMaterial(E=10.92e6, nu=0.3, h=h)


def disk_points(npoints: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    radius = np.sqrt(rng.uniform(0.0, 0.99, npoints))
    theta = rng.uniform(0.0, 2.0 * np.pi, npoints)
    return np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=1)


def test_nonuniform_square_solution():
    points = np.random.default_rng(0).uniform(0.0, 1.0, size=(50, 2))
    x, y = points.T
    for h in (0.1, 0.01, 1e-5):
        mat = material(h)
        exact = nonuniform_square_solution(mat)
        assert exact.relative_strong_residual(points, mat) < 1e-8
        assert exact.gradient_self_check(points) < 1e-6

        beta_x = -(y ** 3) * (y - 1) ** 3 * x ** 2 * (x - 1) ** 2 * (2 * x - 1)
        beta_y = -(x ** 3) * (x - 1) ** 3 * y ** 2 * (y - 1) ** 2 * (2 * y - 1)
        assert np.allclose(exact.rotations(x, y), np.stack([beta_x, beta_y], axis=1), atol=1e-15)

        t = np.linspace(0.0, 1.0, 11)
        for bx, by in ((t, 0 * t), (0 * t + 1, t), (t, 0 * t + 1), (0 * t, t)):
            assert np.abs(np.concatenate(exact.boundary_field(bx, by))).max() < 1e-15

    thin = nonuniform_square_solution(material(1e-5))
    assert thin.deflection(0.5, 0.5) == pytest.approx(0.25 ** 6 / 3.0, rel=1e-6)


def test_circular_plate_solution():
    points = disk_points(50, 1)
    for h in (0.2, 0.1, 1e-5):
        mat = material(h)
        exact = circular_plate_solution(mat)
        assert exact.relative_strong_residual(points, mat) < 1e-8
        assert exact.gradient_self_check(points) < 1e-6
        expected = 1.0 / (64.0 * mat.D_b) + 1.0 / (4.0 * mat.D_s)
        assert exact.deflection(0.0, 0.0) == pytest.approx(expected, rel=1e-13)

        theta = np.linspace(0.0, 2.0 * np.pi, 17)
        w, bx, by = exact.boundary_field(np.cos(theta), np.sin(theta))
        scale = np.abs(exact.deflection(0.0, 0.0))
        assert np.abs(np.concatenate([w, bx, by])).max() < 1e-12 * scale

    x, y = points.T
    mat = material(0.1)
    r2 = x ** 2 + y ** 2
    beta = circular_plate_solution(mat).rotations(x, y)
    assert np.allclose(beta[:, 0], x * (1.0 - r2) / (16.0 * mat.D_b), rtol=1e-12, atol=0.0)


def test_patch_field_is_in_equilibrium():
    exact = patch_field()
    points = np.random.default_rng(2).uniform(size=(10, 2))
    assert np.abs(exact.strong_residual(points, material(0.1))).max() == 0.0
    assert exact.load_function == 0.0


def test_deflection_oracles():
    thin = material(1e-5)
    w_bar = oracles.normalized_deflection(oracles.navier_ss_center_deflection(thin), thin)
    assert w_bar == pytest.approx(0.4062, abs=1e-4)

    thick = material(0.1)
    w_bar = oracles.normalized_deflection(oracles.navier_ss_center_deflection(thick), thick)
    assert w_bar == pytest.approx(0.4273, rel=1e-3)

    assert 100.0 * oracles.kirchhoff_clamped_center_coefficient() == pytest.approx(0.1265, rel=1e-3)


def test_reference_tables(tmp_path):
    assert reference.exact_w_bar("clamped", 0.1) == 0.1499
    assert reference.exact_w_bar("hard_simply_supported", 1e-5) == 0.4062
    with pytest.raises(KeyError):
        reference.exact_w_bar("free", 0.1)
    with pytest.raises(KeyError):
        reference.exact_w_bar("clamped", 0.3)

    path = str(tmp_path / "reference.csv")
    reference.write_reference_csv("hard_simply_supported", path)
    with open(path) as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 6
    assert {"h_over_a", "exact", "published_803", "TTK9s6", "DST-BL", "PRMn-W"} <= set(rows[0])
    assert rows[0]["PRMn-W"] == ""


def synthetic_record(problem: str, h_over_a: float) -> ConvergenceRecord:
    sizes = [0.5, 0.25, 0.125, 0.0625]
    return ConvergenceRecord(
        problem,
        h_over_a,
        [ConvergencePoint(s, 100 * i, 3.0 * s ** 2, 0.5 * s, 0.1) for i, s in enumerate(sizes)],
    )


def test_convergence_record():
    record = synthetic_record("square_nonuniform", 0.1)
    l2_slope, h1_slope = record.slopes()
    assert l2_slope == pytest.approx(2.0, abs=1e-10)
    assert h1_slope == pytest.approx(1.0, abs=1e-10)
    assert record.slopes_without_coarsest()[0] == pytest.approx(2.0, abs=1e-10)
    assert record.label == "square_nonuniform_h0.1"

    with pytest.raises(ValueError):
        record.add(ConvergencePoint(0.0625, 10, 1e-3, 1e-2, 0.0))


def test_convergence_report(tmp_path):
    records = [synthetic_record("circular", 0.1), synthetic_record("circular", 1e-5)]
    written = convergence_report(records, str(tmp_path / "a"))
    convergence_report(records, str(tmp_path / "b"))
    names = sorted(os.path.basename(p) for p in written)
    assert names == [
        "convergence_circular_h0.1.csv",
        "convergence_circular_h1.svg",
        "convergence_circular_h1e-05.csv",
        "convergence_circular_l2.svg",
        "convergence_slopes.csv",
    ]
    for name in ("convergence_circular_h0.1.csv", "convergence_slopes.csv"):
        assert filecmp.cmp(str(tmp_path / "a" / name), str(tmp_path / "b" / name), shallow=False)
    with open(str(tmp_path / "a" / "convergence_circular_h0.1.csv")) as f:
        assert f.readline().strip() == "mesh_size,dofs,l2_rel,h1_rel"

    convergence_report(records[:1], str(tmp_path / "timed"), timing=True)
    with open(str(tmp_path / "timed" / "convergence_circular_h0.1.csv")) as f:
        assert f.readline().strip().endswith(",seconds")

    with pytest.raises(ValueError):
        convergence_report([], str(tmp_path / "c"))
    with pytest.raises(ValueError):
        convergence_report([ConvergenceRecord("circular", 0.1, records[0].points[:1])], str(tmp_path / "c"))


def test_patch_test_passes_on_every_mesh_family():
    meshes = [
        generate_structured_quad(1.0, 4),
        generate_trapezoidal(1.0, 4, 0.2),
        generate_cvt_polygonal(MeshSpec("unit_square", "cvt_polygonal", 16, 42), lloyd_iters=10),
    ]
    for mesh in meshes:
        for ratio in (0.1, 1e-5):
            l2, h1 = patch_test(mesh, ratio)
            assert l2 < 1e-9
            assert h1 < 1e-9


def test_patch_test_detects_a_broken_constraint(monkeypatch):
    original = dkm_ngon.constraint_operator

    def flipped_rotations(polygon, geom, mat):
        operator = original(polygon, geom, mat)
        an = operator.An.copy()
        an[:, 1::3] *= -1.0
        an[:, 2::3] *= -1.0
        return operator._replace(An=an)

    monkeypatch.setattr(dkm_ngon, "constraint_operator", flipped_rotations)
    l2, h1 = patch_test(generate_structured_quad(1.0, 4), 0.1)
    assert l2 > 1e-6 or h1 > 1e-6


def test_error_norms_of_exact_and_zero_fields():
    mesh = generate_structured_quad(1.0, 2)
    exact = patch_field()
    bc = BoundaryCondition("prescribed_field", field=exact.boundary_field)
    solution = solve_plate(mesh, material(0.1), q=0.0, bc=bc)
    l2, h1 = error_norms(solution, exact)
    assert l2 < 1e-9 and h1 < 1e-9

    zero = AnalyticalSolution("zero", [[0.0]], [[0.0]], [[0.0]], [[0.0]], "clamped")
    with pytest.raises(ValueError):
        error_norms(solution, zero)


def test_square_udl_benchmark():
    mesh = generate_structured_quad(1.0, 8)
    clamped = square_udl_benchmark("clamped", 0.1, mesh)
    assert clamped == pytest.approx(reference.exact_w_bar("clamped", 0.1), rel=0.05)
    simply_supported = square_udl_benchmark("hard_simply_supported", 1e-5, mesh)
    assert simply_supported == pytest.approx(reference.exact_w_bar("hard_simply_supported", 1e-5), rel=0.05)


def test_nonuniform_benchmark_converges():
    meshes = [generate_structured_quad(1.0, 4), generate_structured_quad(1.0, 8)]
    record = square_nonuniform_benchmark(0.1, meshes)
    assert len(record) == 2
    assert record.points[1].dofs == 3 * 81
    assert record.l2[1] < record.l2[0]
    assert record.h1[1] < record.h1[0]


def element_checks_problem(tmp_path, **overrides):
    hyper_params = dict(
        rank_polygons=3,
        rank_sides=(3, 8),
        rank_ratios=[0.2, 1e-5],
        closed_form_polygons=2,
        closed_form_points=5,
        closed_form_ratio=0.1,
        basis_polygons=3,
        basis_sides=(3, 10),
        basis_points=5,
        quadrature_polygons=2,
        stiffness_degree=16,
    )
    hyper_params.update(overrides)
    cfg = ConfigDict(
        dict(
            type="ElementChecksProblem",
            hyper_params=hyper_params,
            material_cfg=dict(E=10.92e6, nu=0.3, kappa=5.0 / 6.0),
            tolerances=DEFAULT_TOLERANCES.to_dict(),
            log_cfg=dict(problem="ElementChecksProblem", curr_time="000000_000000"),
            output_dir=str(tmp_path),
        )
    )
    return build_problem(cfg, dict(args=argparse.Namespace(seed=1, log=False)))


def test_element_checks_problem(tmp_path):
    problem = element_checks_problem(tmp_path)
    checks = problem.run()
    assert len(checks) == 5
    assert all(c.passed for c in checks)
    assert problem.passed
    assert print_summary({"element_checks": checks})


def test_element_checks_fail_on_a_fixed_low_degree_rule(tmp_path):
    problem = element_checks_problem(tmp_path, stiffness_degree=1, stiffness_refinement_tol=None)
    checks = {c.name: c for c in problem.run()}
    quadrature = checks["stiffness quadrature fixed degree 1 vs twice the final degree"]
    assert not quadrature.passed
    assert quadrature.value > DEFAULT_TOLERANCES.quadrature_refinement
    assert not problem.passed
    # the assembled matrices still refine, so the other checks hold
    assert all(c.passed for c in checks.values() if c is not quadrature)


def test_print_summary_reports_failures(capsys):
    results = {
        "patch": [CheckResult("a", 1e-12, "<= 1e-09", True)],
        "circular": [CheckResult("b", 2.5, "in [1.8, 2.3]", False)],
    }
    assert not print_summary(results)
    out = capsys.readouterr().out
    assert "FAIL" in out and "1/2 checks passed" in out


if __name__ == "__main__":
    test_nonuniform_square_solution()
    test_deflection_oracles()
    test_convergence_record()
    test_patch_test_passes_on_every_mesh_family()
