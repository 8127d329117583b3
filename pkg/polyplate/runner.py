# -*- coding: utf-8 -*-
"""Command implementations behind run_polyplate.py.

Every command returns a process exit code: 0 when it succeeded and every
enforced check passed, 1 on a failed check or a library error, 2 on a
usage or config error.
"""
import argparse
import ast
import csv
import json
import os
from datetime import datetime
from typing import Dict, List, Sequence, Tuple

import numpy as np
import wandb

import polyplate
from polyplate.basis.checks import gradient_check, interior_points
from polyplate.basis.serendipity import serendipity
from polyplate.common.abstract.problem import CheckResult, Problem
from polyplate.common.errors import ConfigParseError
import polyplate.common.helper_functions as common_utils
from polyplate.element.dkm_ngon import element_stiffness
from polyplate.element.material import PlateMaterial
from polyplate.mesh.io import read_mesh, write_mesh
from polyplate.mesh.polymesh import PolyMesh
from polyplate.registry import build_mesher, build_problem
from polyplate.system.boundary import BoundaryCondition
from polyplate.system.solution import solve_plate
from polyplate.utils.config import Config, ConfigDict
from polyplate.verify.suite import DEFAULT_TOLERANCES, print_summary, zero_eigenvalues

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

CONFIG_ROOT = "./configs"
PROBLEM_CONFIGS = dict(
    patch="patch_test/patch.py",
    square_udl="square_plate/udl_clamped.py",
    square_nonuniform="square_plate/nonuniform.py",
    circular="circular_plate/udl_clamped.py",
    element_checks="element/checks.py",
)
MESH_KINDS = dict(
    structured="StructuredQuadMesher", trapezoidal="TrapezoidalMesher", cvt="CVTMesher"
)
SHEAR_CONVENTION = "gamma = beta + grad(w)"


def timestamp() -> str:
    return datetime.now().strftime("%y%m%d_%H%M%S")


def parse_mesh_option(text: str) -> Tuple[dict, int]:
    """`kind:n` -> (mesher config, target elements).

    n counts divisions per side for structured and trapezoidal meshes and
    elements for cvt meshes.
    """
    kind, _, count = text.partition(":")
    if kind not in MESH_KINDS or not count.isdigit() or int(count) < 1:
        raise ValueError(
            f"[ERROR] --mesh expects kind:n with kind in {sorted(MESH_KINDS)}, got {text!r}"
        )
    n = int(count)
    elements = n if kind == "cvt" else n * n
    return dict(type=MESH_KINDS[kind]), elements


def parse_cfg_options(options: Sequence[str]) -> Dict[str, object]:
    """`key=value` pairs; values are python literals, anything else stays a string."""
    parsed = dict()
    for option in options or []:
        key, sep, text = option.partition("=")
        if not sep or not key:
            raise ConfigParseError(f"[ERROR] --cfg-options expects key=value, got {option!r}")
        try:
            parsed[key] = ast.literal_eval(text)
        except (ValueError, SyntaxError):
            parsed[key] = text
    return parsed


def problem_config_path(args: argparse.Namespace) -> str:
    if getattr(args, "cfg_path", None):
        return args.cfg_path
    problem = getattr(args, "problem", None)
    if problem not in PROBLEM_CONFIGS:
        raise ValueError(
            f"[ERROR] give --cfg-path or --problem with one of {sorted(PROBLEM_CONFIGS)}"
        )
    name = PROBLEM_CONFIGS[problem]
    if problem == "square_udl" and getattr(args, "bc", None) == "hard_simply_supported":
        name = "square_plate/udl_simply_supported.py"
    return os.path.join(CONFIG_ROOT, name)


def apply_problem_flags(cfg: Config, args: argparse.Namespace):
    """Narrow a problem config to the --h / --bc / --mesh / --nodes flags."""
    hp = cfg.problem.hyper_params
    h = getattr(args, "h", None)
    if h is not None:
        hp.thickness_ratios = [h]
        if "checked_ratios" in hp:
            hp.checked_ratios = [h]
    if getattr(args, "bc", None) and "bc" in hp:
        hp.bc = args.bc
    if getattr(args, "nodes", None) and "node_targets" in hp:
        hp.node_targets = [args.nodes]
    mesh = getattr(args, "mesh", None)
    if mesh:
        mesher_cfg, elements = parse_mesh_option(mesh)
        if "meshers" in hp:
            hp.meshers = [mesher_cfg]
        elif "mesher_cfg" in cfg.problem:
            cfg.problem.mesher_cfg.type = mesher_cfg["type"]
        hp.element_series = [elements]


def load_config(args: argparse.Namespace) -> Config:
    """Config file plus command line narrowing; raises ConfigParseError on bad input."""
    path = problem_config_path(args)
    try:
        cfg = Config.fromfile(path)
    except OSError as e:
        raise ConfigParseError(f"[ERROR] cannot read config {path}: {e}")
    except SyntaxError as e:
        raise ConfigParseError(f"[ERROR] config {path} is not valid python: {e}")
    args.cfg_path = path
    if "problem" not in cfg or "type" not in cfg.problem:
        raise ConfigParseError(f"[ERROR] config {path} has no problem.type")
    apply_problem_flags(cfg, args)
    cfg.merge_from_dict(parse_cfg_options(getattr(args, "cfg_options", None)))
    if getattr(args, "integration_test", False):
        cfg = common_utils.set_cfg_for_integration_test(cfg)
    return cfg


def tolerances_of(cfg: Config) -> ConfigDict:
    tolerances = ConfigDict(DEFAULT_TOLERANCES.to_dict())
    tolerances.update(cfg.get("tolerances", dict()))
    return tolerances


def build(cfg: Config, args: argparse.Namespace, output_dir: str) -> Problem:
    problem_cfg = ConfigDict(cfg.to_dict()["problem"])
    problem_cfg.material_cfg = cfg.get("material", dict(E=10.92e6, nu=0.3, kappa=5.0 / 6.0))
    problem_cfg.tolerances = tolerances_of(cfg)
    problem_cfg.log_cfg = dict(problem=problem_cfg.type, curr_time=timestamp())
    problem_cfg.output_dir = output_dir
    return build_problem(problem_cfg, dict(args=args))


def manifest(cfg: Config, problem: Problem) -> dict:
    """Everything needed to audit a run: config hash, version, tolerances and toggles."""
    hp = problem.hyper_params
    material = problem.material_kwargs
    return dict(
        problem=problem.name,
        config_hash=common_utils.config_hash(cfg.to_dict()),
        version=polyplate.__version__,
        seed=problem.seed,
        tolerances=problem.tolerances.to_dict(),
        design=dict(
            bc=hp.get("bc", "clamped" if problem.name != "patch" else "prescribed_field"),
            simply_supported="hard",
            kappa=material["kappa"],
            stiffness_degree=hp.get("stiffness_degree"),
            norm_degree=hp.get("norm_degree"),
            shear_strain_convention=SHEAR_CONVENTION,
        ),
        passed=problem.passed,
        checks=[c._asdict() for c in problem.checks],
        meshes=problem.mesh_stats,
    )


def write_checks(path: str, checks: Sequence[CheckResult]):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CheckResult._fields)
        for c in checks:
            writer.writerow([c.name, repr(c.value), c.bound, c.passed])


def run_problem(cfg: Config, args: argparse.Namespace, output_dir: str) -> Problem:
    """Build, run and document one problem; library errors propagate."""
    problem = build(cfg, args, output_dir)
    print(f"[INFO] running {cfg.problem.type}, artifacts in {output_dir}")
    cfg.dump(os.path.join(output_dir, "config.cfg"))
    if getattr(args, "log", False):
        problem.set_wandb()
    try:
        problem.run()
    finally:
        if getattr(args, "log", False):
            wandb.finish()
    with open(os.path.join(output_dir, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest(cfg, problem), f, indent=2, sort_keys=True, default=repr)
    write_checks(os.path.join(output_dir, "checks.csv"), problem.checks)
    return problem


def default_output_dir(args: argparse.Namespace, name: str) -> str:
    if getattr(args, "output_dir", None):
        return args.output_dir
    return os.path.join(common_utils.get_output_root(), name, timestamp())


def run(cfg: Config, args: argparse.Namespace) -> int:
    output_dir = default_output_dir(args, cfg.problem.type)
    try:
        problem = run_problem(cfg, args, output_dir)
    except (ValueError, RuntimeError, LookupError) as e:
        print(f"[ERROR] {cfg.problem.type} stopped: {e}")
        return EXIT_FAILED
    if not problem.passed:
        failed = [c.name for c in problem.checks if not c.passed]
        print(f"[ERROR] {len(failed)} check(s) failed: " + "; ".join(failed))
        return EXIT_FAILED
    print(f"[INFO] {problem.name}: all checks passed")
    return EXIT_OK


def verify_all(args: argparse.Namespace, config_root: str = CONFIG_ROOT) -> int:
    """Run every problem listed in verify_all.py and print the pass / fail table."""
    suite = Config.fromfile(os.path.join(config_root, "verify_all.py"))
    root = default_output_dir(args, "verify_all")
    results: Dict[str, List[CheckResult]] = dict()
    for relative in suite.problems:
        args.cfg_path = os.path.join(config_root, relative)
        cfg = load_config(args)
        label = os.path.splitext(relative)[0].replace(os.sep, "_").replace("/", "_")
        try:
            problem = run_problem(cfg, args, os.path.join(root, label))
            results[label] = problem.checks
            if not problem.enforce_checks:
                results[label] = [c._replace(passed=True) for c in problem.checks]
        except (ValueError, RuntimeError, LookupError) as e:
            print(f"[ERROR] {label} stopped: {e}")
            results[label] = [CheckResult(f"{label} completed", 0.0, "no error", False)]
    passed = print_summary(results)
    write_checks(
        os.path.join(root, "summary.csv"),
        [c._replace(name=f"{label}: {c.name}") for label, checks in results.items() for c in checks],
    )
    return EXIT_OK if passed else EXIT_FAILED


def mesh_gen(args: argparse.Namespace) -> int:
    mesher_cfg, elements = parse_mesh_option(args.mesh)
    mesher = build_mesher(ConfigDict(dict(mesher_cfg, domain=args.domain, size=args.size)))
    mesh = mesher.generate(elements, args.seed)
    path = args.out or os.path.join(
        default_output_dir(args, "meshes"), f"{mesher.kind}_{elements}.mesh"
    )
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    write_mesh(mesh, path)
    print(f"[INFO] wrote {path}: {json.dumps(mesh.stats(), sort_keys=True)}")
    return EXIT_OK


def sample_polygon(args: argparse.Namespace, rng: np.random.Generator) -> np.ndarray:
    if args.random:
        return common_utils.random_convex_polygon(args.sides, rng)
    return common_utils.regular_polygon(args.sides)


def basis_sample(args: argparse.Namespace) -> int:
    """Basis values at random interior points of one polygon, as CSV."""
    rng = np.random.default_rng(args.seed)
    polygon = sample_polygon(args, rng)
    points = interior_points(polygon, args.points, rng)
    basis = serendipity(polygon, points)
    n = len(polygon)
    header = ["x", "y"] + [f"{name}_{i}" for name in ("lam", "phi", "psi") for i in range(n)]
    path = args.out or os.path.join(default_output_dir(args, "basis"), f"basis_{n}gon.csv")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in np.hstack([points, basis.lam, basis.phi, basis.psi]):
            writer.writerow([repr(float(v)) for v in row])
    deviation = gradient_check(lambda p, x: serendipity(p, x, check=False), polygon, args.points)
    print(f"[INFO] wrote {path}; gradient check deviation {deviation:.3e}")
    return EXIT_OK


def element_dump(args: argparse.Namespace) -> int:
    """K_e of one polygon and its eigenvalue spectrum, as CSV."""
    rng = np.random.default_rng(args.seed)
    polygon = sample_polygon(args, rng)
    cfg = Config.fromfile(os.path.join(CONFIG_ROOT, "_base_", "material.py"))
    h = args.h * common_utils.polygon_diameter(polygon)
    material = PlateMaterial(h=h, **cfg.material)
    k_e = element_stiffness(polygon, None, material)
    eig = np.linalg.eigvalsh(k_e)

    directory = args.out or default_output_dir(args, "element")
    os.makedirs(directory, exist_ok=True)
    n = len(polygon)
    np.savetxt(os.path.join(directory, f"stiffness_{n}gon.csv"), k_e, delimiter=",", fmt="%.17g")
    np.savetxt(os.path.join(directory, f"eigenvalues_{n}gon.csv"), eig, delimiter=",", fmt="%.17g")
    zeros = zero_eigenvalues(k_e, DEFAULT_TOLERANCES.rank_eig)
    print(f"[INFO] {n}-gon, h/diam={args.h:g}: {zeros} zero eigenvalues, rank {3 * n - zeros}")
    return EXIT_OK if zeros == 3 else EXIT_FAILED


def load_mesh(args: argparse.Namespace) -> PolyMesh:
    if args.mesh_file:
        return read_mesh(args.mesh_file)
    mesher_cfg, elements = parse_mesh_option(args.mesh)
    mesher = build_mesher(ConfigDict(dict(mesher_cfg, domain=args.domain, size=args.size)))
    return mesher.generate(elements, args.seed)


def solve(args: argparse.Namespace) -> int:
    """Solve one plate under uniform load and dump the nodal solution."""
    mesh = load_mesh(args)
    cfg = Config.fromfile(os.path.join(CONFIG_ROOT, "_base_", "material.py"))
    material = PlateMaterial(h=args.h * mesh.scale, **cfg.material)
    print(f"[INFO] {mesh}, {material}")
    solution = solve_plate(mesh, material, args.q, BoundaryCondition(args.bc), verbose=True)
    directory = default_output_dir(args, "solve")
    solution.write(directory, "solution")
    write_mesh(mesh, os.path.join(directory, "solution.mesh"))
    w_max = float(np.abs(solution.nodal_table()[:, 3]).max())
    print(f"[INFO] max |w| = {w_max:.6e}, written to {directory}")
    return EXIT_OK
