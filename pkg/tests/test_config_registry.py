import argparse
import datetime
import os

import pytest

from polyplate import build_problem
from polyplate.common.abstract.problem import Problem
from polyplate.common.errors import ConfigParseError
import polyplate.common.helper_functions as common_utils
from polyplate.mesh.meshers import CVTMesher
from polyplate.registry import MESHERS, PROBLEMS
from polyplate.utils import Config, Registry, build_from_cfg
from polyplate.verify.benchmarks import PatchTestProblem
from polyplate.verify.suite import DEFAULT_TOLERANCES

CONFIGS = [
    "./configs/patch_test/patch.py",
    "./configs/square_plate/udl_clamped.py",
    "./configs/square_plate/udl_simply_supported.py",
    "./configs/square_plate/nonuniform.py",
    "./configs/circular_plate/udl_clamped.py",
    "./configs/element/checks.py",
    "./configs/square_plate/udl_clamped_thin.cfg",
]


@pytest.fixture(autouse=True)
def pkg_root():
    cwd = os.getcwd()
    os.chdir(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    yield
    os.chdir(cwd)


def parse_args(args: list):
    parser = argparse.ArgumentParser(description="polyplate")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument(
        "--cfg-path",
        type=str,
        default="./configs/square_plate/udl_clamped.py",
        help="config path",
    )
    return parser.parse_args(args)


def build(cfg_path: str, output_dir: str) -> Problem:
    args = parse_args(["--cfg-path", cfg_path])
    curr_time = datetime.datetime.now().strftime("%y%m%d_%H%M%S")
    cfg = Config.fromfile(args.cfg_path)
    cfg.problem.material_cfg = cfg.material
    cfg.problem.tolerances = cfg.tolerances
    cfg.problem.log_cfg = dict(problem=cfg.problem.type, curr_time=curr_time)
    cfg.problem.output_dir = output_dir
    return build_problem(cfg.problem, dict(args=args))


def test_config_registry(tmp_path):
    for cfg_path in CONFIGS:
        problem = build(cfg_path, str(tmp_path))
        assert isinstance(problem, Problem)
        assert problem.seed == 42


def test_base_configs_are_merged():
    cfg = Config.fromfile("./configs/square_plate/udl_simply_supported.py")
    assert cfg.problem.hyper_params.bc == "hard_simply_supported"
    assert cfg.problem.hyper_params.node_targets == [104, 204, 404, 602, 803]
    assert cfg.material.E == 10.92e6
    assert cfg.tolerances.deflection_rel == 0.01
    assert tuple(cfg.tolerances.l2_slope) == (1.8, 2.3)


def test_default_tolerances_come_from_the_base_config():
    base = Config.fromfile("./configs/_base_/tolerances.py")
    assert DEFAULT_TOLERANCES.to_dict() == base.tolerances.to_dict()
    assert DEFAULT_TOLERANCES.quadrature_refinement == 1e-8
    for cfg_path in CONFIGS:
        assert Config.fromfile(cfg_path).tolerances.to_dict() == DEFAULT_TOLERANCES.to_dict()


def test_cfg_file_matches_py_file():
    flat = Config.fromfile("./configs/square_plate/udl_clamped_thin.cfg")
    full = Config.fromfile("./configs/square_plate/udl_clamped.py")
    assert flat.problem.type == full.problem.type
    assert flat.problem.mesher_cfg.to_dict() == full.problem.mesher_cfg.to_dict()
    assert flat.tolerances.to_dict() == full.tolerances.to_dict()


def test_dump_round_trip(tmp_path):
    cfg = Config.fromfile("./configs/circular_plate/udl_clamped.py")
    path = str(tmp_path / "dumped.cfg")
    cfg.dump(path)
    assert Config.fromfile(path).to_dict() == cfg.to_dict()


def test_malformed_cfg_names_the_line(tmp_path):
    path = tmp_path / "broken.cfg"
    path.write_text("# comment\nproblem.type = 'PatchTestProblem'\nthis line is wrong\n")
    with pytest.raises(ConfigParseError, match="broken.cfg:3"):
        Config.fromfile(str(path))

    path.write_text("problem.hyper_params.h = [0.1,\n")
    with pytest.raises(ConfigParseError):
        Config.fromfile(str(path))


def test_merge_from_dict_and_missing_keys():
    cfg = Config.fromfile("./configs/patch_test/patch.py")
    cfg.merge_from_dict({"problem.hyper_params.element_series": [4]})
    assert cfg.problem.hyper_params.element_series == [4]
    with pytest.raises(AttributeError):
        cfg.problem.hyper_params.not_a_key
    with pytest.raises(KeyError):
        cfg.problem.hyper_params["not_a_key"]


def test_set_cfg_for_integration_test():
    cfg = Config.fromfile("./configs/patch_test/patch.py")
    # keys no problem reads pass through untouched
    cfg.problem.hyper_params.mesh_divisions = [4, 8]
    cfg = common_utils.set_cfg_for_integration_test(cfg)
    hp = cfg.problem.hyper_params
    assert hp.mesh_divisions == [4, 8]
    assert hp.element_series == [16, 36]
    assert hp.thickness_ratios == [0.1, 0.01]
    assert hp.enforce_checks is False
    assert hp.meshers[2].lloyd_iters == 5


def test_mesher_built_from_config(tmp_path):
    problem = build("./configs/circular_plate/udl_clamped.py", str(tmp_path))
    assert isinstance(problem.mesher, CVTMesher)
    assert problem.mesher.domain == "disk"
    assert problem.mesher.lloyd_iters == 100


def test_registry_short_names_and_unknown_types():
    assert PROBLEMS.get("patch") is PatchTestProblem
    assert PROBLEMS.get("PatchTestProblem") is PatchTestProblem
    assert "ConvergenceProblem" not in PROBLEMS and "" not in PROBLEMS
    assert "CVTMesher" in MESHERS
    with pytest.raises(KeyError, match="known: "):
        PROBLEMS.get("plate")

    registry = Registry("things")
    with pytest.raises(TypeError):
        registry.register_module(len)

    @registry.register_module
    class Thing:
        name = "thing"

        def __init__(self, a, b=0):
            self.a, self.b = a, b

    thing = build_from_cfg(dict(type="thing", a=1), registry, dict(a=5, b=2))
    assert (thing.a, thing.b) == (1, 2)
    with pytest.raises(KeyError):
        build_from_cfg(dict(a=1), registry)


if __name__ == "__main__":
    test_base_configs_are_merged()
    test_default_tolerances_come_from_the_base_config()
    test_cfg_file_matches_py_file()
    test_merge_from_dict_and_missing_keys()
    test_registry_short_names_and_unknown_types()
