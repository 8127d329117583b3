from polyplate.utils import Registry, build_from_cfg
from polyplate.utils.config import ConfigDict

PROBLEMS = Registry("problems")
MESHERS = Registry("meshers")


def build_problem(cfg: ConfigDict, build_args: dict = None):
    """Build problem using config and additional arguments."""
    return build_from_cfg(cfg, PROBLEMS, build_args)


def build_mesher(cfg: ConfigDict, build_args: dict = None):
    """Build mesher using config and additional arguments."""
    return build_from_cfg(cfg, MESHERS, build_args)
