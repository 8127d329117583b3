"""Name -> class tables that configs refer to through their "type" key."""
import inspect
from typing import Dict, List

from polyplate.utils.config import ConfigDict


class Registry:
    """Classes reachable from a config.

    A class is registered under its class name and, when it sets its own
    non-empty ``name`` attribute, under that short name as well, so
    ``type="PatchTestProblem"`` and ``type="patch"`` build the same thing.

    Attributes:
        name (str): what the table holds, used in error messages
        module_dict (dict): every registered key with its class

    """

    def __init__(self, name: str):
        """Initialize."""
        self.name = name
        self.module_dict: Dict[str, type] = dict()

    def __repr__(self):
        return f"{self.__class__.__name__}(name={self.name}, items={self.keys()})"

    def __contains__(self, key: str) -> bool:
        return key in self.module_dict

    def keys(self) -> List[str]:
        return sorted(self.module_dict)

    def get(self, key: str) -> type:
        """Class registered under key; KeyError names the known keys."""
        if key not in self.module_dict:
            raise KeyError(
                f"[ERROR] {key} is not in the {self.name} registry "
                f"(known: {', '.join(self.keys())})"
            )
        return self.module_dict[key]

    def _add(self, key: str, module_class: type):
        if key in self.module_dict and self.module_dict[key] is not module_class:
            raise KeyError(f"[ERROR] {key} is already registered in {self.name}")
        self.module_dict[key] = module_class

    def register_module(self, module_class: type) -> type:
        if not inspect.isclass(module_class):
            raise TypeError(f"module must be a class, but got {type(module_class)}")
        self._add(module_class.__name__, module_class)
        alias = vars(module_class).get("name")
        if isinstance(alias, str) and alias:
            self._add(alias, module_class)
        return module_class


def build_from_cfg(cfg: ConfigDict, registry: Registry, default_args: dict = None):
    """Build an object from a config holding at least the key "type".

    Keys of default_args fill in only what cfg leaves unset.
    """
    if not isinstance(cfg, dict) or "type" not in cfg:
        raise KeyError(f"[ERROR] a {registry.name} config needs a 'type' key")
    args = dict(default_args or dict())
    args.update((key, value) for key, value in cfg.items() if key != "type")
    obj_type = cfg["type"]
    if isinstance(obj_type, str):
        obj_cls = registry.get(obj_type)
    elif inspect.isclass(obj_type):
        obj_cls = obj_type
    else:
        raise TypeError(f"type must be a str or a class, but got {type(obj_type)}")
    return obj_cls(**args)
