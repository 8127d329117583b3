import filecmp

import numpy as np
import pytest
from scipy.sparse import csr_matrix, diags

from polyplate.common.errors import PointLocationError, SolverError
from polyplate.element.material import PlateMaterial
from polyplate.mesh.generators import generate_cvt_polygonal, generate_structured_quad
from polyplate.mesh.polymesh import BOTTOM, MeshSpec
from polyplate.system.assembly import assemble, reaction_imbalance, reduce_system
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.dofs import DofMap
from polyplate.system.solution import solve_plate
from polyplate.system.solver import relative_residual, solve

MATERIAL = PlateMaterial(E=10.92e6, nu=0.3, h=0.1)


def test_dofmap():
    dofmap = DofMap(4)
    assert dofmap.n_dofs == 12
    assert dofmap.node_dofs(2).tolist() == [6, 7, 8]
    assert DofMap.element_dofs([0, 2]).tolist() == [0, 1, 2, 6, 7, 8]

    dofmap.constrain(4, 0.5)
    dofmap.constrain(0)
    assert dofmap.constrained.tolist() == [0, 4]
    assert dofmap.values.tolist() == [0.0, 0.5]
    assert len(dofmap.free) == 10
    u = dofmap.expand(np.arange(10, dtype=float))
    assert u[4] == 0.5 and u[1] == 0.0 and u[11] == 9.0
    with pytest.raises(IndexError):
        dofmap.constrain(12)

    assert not dofmap.rotated
    c, s = np.cos(0.3), np.sin(0.3)
    dofmap.set_node_transform(1, [[1, 0, 0], [0, c, -s], [0, s, c]])
    t = dofmap.transform.toarray()
    assert np.allclose(t @ t.T, np.eye(12))
    assert np.allclose(dofmap.to_nodal(np.ones(12))[3:6], [1.0, c - s, s + c])


def test_solver():
    k = csr_matrix(diags([-1.0, 4.0, -1.0], [-1, 0, 1], shape=(6, 6)))
    f = np.arange(1.0, 7.0)
    u = solve(k, f)
    assert np.allclose(u, np.linalg.solve(k.toarray(), f), rtol=1e-13)
    assert relative_residual(k, u, f) < 1e-14
    assert solve(csr_matrix((0, 0)), np.zeros(0)).shape == (0,)

    for bad in ([[1.0, 1.0], [1.0, 1.0]], [[1.0, 2.0], [2.0, 1.0]], [[-1.0, 0.0], [0.0, 1.0]]):
        with pytest.raises(SolverError):
            solve(csr_matrix(np.array(bad)), np.ones(2))


def test_assembly(capsys):
    mesh = generate_structured_quad(1.0, 2)
    k, f, dofmap = assemble(mesh, MATERIAL)
    assert k.shape == (27, 27)
    assert abs(k - k.T).max() == 0.0
    assert f[0::3].sum() == pytest.approx(1.0, rel=1e-13)
    assert "[WARNING]" in capsys.readouterr().out

    k, f, dofmap = assemble(mesh, MATERIAL, 1.0, BoundaryCondition("clamped"))
    assert len(dofmap.constrained) == 24
    k_ff, f_f = reduce_system(k, f, dofmap)
    assert k_ff.shape == (3, 3)
    assert f_f.shape == (3,)


def test_boundary_condition_arguments():
    with pytest.raises(ValueError):
        BoundaryCondition("free")
    with pytest.raises(ValueError):
        BoundaryCondition("prescribed_field")
    assert BoundaryCondition("clamped", tags=[BOTTOM]).describe()["tags"] == [BOTTOM]


def test_clamped_square_is_balanced_and_symmetric():
    n = 4
    mesh = generate_structured_quad(1.0, n)
    solution = solve_plate(mesh, MATERIAL, q=1.0, bc=BoundaryCondition("clamped"))
    assert solution.residual < 1e-10
    assert solution.reaction_imbalance < 1e-8

    w = solution.u[0::3].reshape(n + 1, n + 1)
    assert w[n // 2, n // 2] > 0.0
    assert np.allclose(w, w[:, ::-1], rtol=0.0, atol=1e-10 * w.max())
    assert np.allclose(w, w.T, rtol=0.0, atol=1e-10 * w.max())
    assert np.all(w[0, :] == 0.0) and np.all(w[:, 0] == 0.0)

    center = solution.deflection(np.array([0.5, 0.5]))
    assert center == pytest.approx(w[n // 2, n // 2], rel=1e-6)
    assert solution.deflection(np.array([0.4, 0.55])) > 0.0
    with pytest.raises(PointLocationError):
        solution.evaluate(np.array([1.5, 0.5]))


def test_hard_simply_supported_corners():
    n = 4
    mesh = generate_structured_quad(1.0, n)
    bc = BoundaryCondition("hard_simply_supported")
    k, f, dofmap = assemble(mesh, MATERIAL, 1.0, bc)
    assert dofmap.rotated
    assert len(dofmap.constrained) == 4 * 3 + 12 * 2

    solution = solve_plate(mesh, MATERIAL, q=1.0, bc=bc)
    table = solution.nodal_table()
    bottom = [i for i in range(1, n)]
    left = [j * (n + 1) for j in range(1, n)]
    # the rotation about the normal vanishes along each edge
    assert np.abs(table[bottom, 4]).max() < 1e-12 * np.abs(table[:, 4]).max()
    assert np.abs(table[left, 5]).max() < 1e-12 * np.abs(table[:, 5]).max()
    assert np.all(table[bottom, 3] == 0.0)
    assert np.all(table[0, 3:] == 0.0)
    assert solution.reaction_imbalance < 1e-8

    clamped = solve_plate(mesh, MATERIAL, q=1.0, bc=BoundaryCondition("clamped"))
    assert table[12, 3] > clamped.u[3 * 12]


def test_prescribed_linear_field_is_reproduced():
    mesh = generate_cvt_polygonal(MeshSpec("unit_square", "cvt_polygonal", 16, 3), lloyd_iters=10)

    def field(x, y):
        return 1.0 + x + y, -np.ones_like(x), -np.ones_like(x)

    solution = solve_plate(
        mesh, MATERIAL.with_thickness(0.01), q=0.0, bc=BoundaryCondition("prescribed_field", field=field)
    )
    x, y = mesh.vertices[:, 0], mesh.vertices[:, 1]
    assert np.abs(solution.u[0::3] - (1.0 + x + y)).max() < 1e-9
    assert np.abs(solution.u[1::3] + 1.0).max() < 1e-9
    assert np.abs(solution.u[2::3] + 1.0).max() < 1e-9


def test_solution_files_are_deterministic(tmp_path):
    mesh = generate_cvt_polygonal(MeshSpec("unit_square", "cvt_polygonal", 20, 5), lloyd_iters=5)
    for name in ("first", "second"):
        solution = solve_plate(mesh, MATERIAL, q=1.0, bc=BoundaryCondition("clamped"))
        solution.write(str(tmp_path), name)
    assert filecmp.cmp(str(tmp_path / "first.csv"), str(tmp_path / "second.csv"), shallow=False)
    with open(str(tmp_path / "first.csv")) as f:
        assert f.readline().strip() == "node,x,y,w,beta_x,beta_y"
    assert solution.metadata()["shear_strain_convention"] == "gamma = beta + grad(w)"


def test_node_renumbering_does_not_change_the_solution():
    mesh = generate_cvt_polygonal(MeshSpec("unit_square", "cvt_polygonal", 20, 6), lloyd_iters=5)
    perm = np.random.default_rng(0).permutation(mesh.n_nodes)
    bc = BoundaryCondition("clamped")
    base = solve_plate(mesh, MATERIAL, q=1.0, bc=bc)
    other = solve_plate(mesh.renumbered(perm), MATERIAL, q=1.0, bc=bc)

    u_base = base.u.reshape(-1, 3)
    u_other = other.u.reshape(-1, 3)[perm]
    assert np.abs(u_other - u_base).max() < 1e-8 * np.abs(u_base).max()


def test_reaction_imbalance_without_load():
    mesh = generate_structured_quad(1.0, 2)
    k, f, dofmap = assemble(mesh, MATERIAL, 0.0, BoundaryCondition("clamped"))
    assert reaction_imbalance(k, f, np.zeros(dofmap.n_dofs), dofmap) == 0.0


if __name__ == "__main__":
    test_dofmap()
    test_solver()
    test_clamped_square_is_balanced_and_symmetric()
    test_hard_simply_supported_corners()
