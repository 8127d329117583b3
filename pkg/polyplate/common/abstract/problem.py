# -*- coding: utf-8 -*-
"""Abstract Problem used for all benchmark problems."""

from abc import ABC, abstractmethod
import argparse
import os
import shutil
from typing import Any, Callable, Dict, List, NamedTuple, Sequence, Tuple

import wandb

from polyplate.element.material import PlateMaterial
from polyplate.mesh.io import write_mesh
from polyplate.mesh.polymesh import PolyMesh
from polyplate.registry import build_mesher
from polyplate.utils.config import ConfigDict


class CheckResult(NamedTuple):
    """Outcome of one acceptance check.

    Attributes:
        name (str): what was checked
        value (float): measured value
        bound (str): human readable acceptance band
        passed (bool): whether the value lies in the band

    """

    name: str
    value: float
    bound: str
    passed: bool


class Problem(ABC):
    """Abstract Problem running one benchmark family.

    Attributes:
        args (argparse.Namespace): command line arguments
        hyper_params (ConfigDict): problem parameters (thicknesses, series, ...)
        material_cfg (ConfigDict): E, nu and kappa
        tolerances (ConfigDict): acceptance bands
        log_cfg (ConfigDict): problem type and start time for logging
        output_dir (str): directory receiving every artifact
        mesher_cfg (ConfigDict): config of the mesher building the series
        checks (list): CheckResult rows collected by `run`

    """

    name = ""

    def __init__(
        self,
        args: argparse.Namespace,
        hyper_params: ConfigDict,
        material_cfg: ConfigDict,
        tolerances: ConfigDict,
        log_cfg: ConfigDict,
        output_dir: str,
        mesher_cfg: ConfigDict = None,
    ):
        """Initialize."""
        self.args = args
        self.hyper_params = hyper_params
        self.material_cfg = material_cfg
        self.mesher_cfg = mesher_cfg
        self.tolerances = tolerances
        self.log_cfg = log_cfg
        self.output_dir = output_dir
        self.checks: List[CheckResult] = []
        self.mesh_stats: Dict[str, dict] = dict()
        self.mesher = build_mesher(mesher_cfg) if mesher_cfg else None
        self.seed = getattr(args, "seed", 42)
        os.makedirs(output_dir, exist_ok=True)

    @abstractmethod
    def run(self) -> List[CheckResult]:
        pass

    @property
    def material_kwargs(self) -> dict:
        """E, nu and kappa; thickness is set per run."""
        cfg = self.material_cfg
        return dict(E=cfg.E, nu=cfg.nu, kappa=cfg.get("kappa", 5.0 / 6.0))

    def material(self, h: float) -> PlateMaterial:
        return PlateMaterial(h=h, **self.material_kwargs)

    @property
    def enforce_checks(self) -> bool:
        return bool(self.hyper_params.get("enforce_checks", True))

    @property
    def passed(self) -> bool:
        """All checks pass, or checks are only reported."""
        return not self.enforce_checks or all(c.passed for c in self.checks)

    def check(self, name: str, value: float, passed: bool, bound: str) -> CheckResult:
        result = CheckResult(name, float(value), bound, bool(passed))
        self.checks.append(result)
        verdict = "PASS" if passed else "FAIL"
        tag = "[INFO]" if passed or not self.enforce_checks else "[ERROR]"
        print(f"{tag} {verdict} {name}: {value:.6g} ({bound})")
        return result

    def check_at_most(self, name: str, value: float, bound: float) -> CheckResult:
        return self.check(name, value, value <= bound, f"<= {bound:g}")

    def check_within(self, name: str, value: float, band: Sequence[float]) -> CheckResult:
        lo, hi = band
        return self.check(name, value, lo <= value <= hi, f"in [{lo:g}, {hi:g}]")

    def set_wandb(self):
        """Set configuration for wandb logging."""
        wandb.init(
            project="polyplate",
            name=f"{self.log_cfg.problem}/{self.log_cfg.curr_time}",
        )
        wandb.config.update(vars(self.args))
        wandb.config.update(dict(self.hyper_params))
        shutil.copy(self.args.cfg_path, os.path.join(wandb.run.dir, "config.py"))

    def write_log(self, row: dict):
        if getattr(self.args, "log", False):
            wandb.log(row)

    def save_mesh(self, mesh: PolyMesh, label: str) -> str:
        directory = os.path.join(self.output_dir, "meshes")
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, f"{label}.mesh")
        write_mesh(mesh, path)
        self.mesh_stats[label] = mesh.stats()
        return path

    def map_series(self, task: Callable, items: Sequence[Tuple]) -> List[Any]:
        """Apply `task(*item)` to every item, as ray tasks when num_workers > 1."""
        num_workers = int(self.hyper_params.get("num_workers", 1))
        if num_workers <= 1 or len(items) <= 1:
            return [task(*item) for item in items]

        import ray

        ray.init(num_cpus=num_workers, ignore_reinit_error=True)
        remote_task = ray.remote(num_cpus=1)(task)
        results = ray.get([remote_task.remote(*item) for item in items])
        ray.shutdown()
        return results

    def summary(self) -> dict:
        return dict(
            problem=self.name,
            passed=self.passed,
            checks=[c._asdict() for c in self.checks],
            meshes=self.mesh_stats,
        )
