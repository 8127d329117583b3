from argparse import ArgumentParser
import ast
import collections.abc as collections_abc
import copy
from importlib.util import module_from_spec, spec_from_file_location
import os.path as osp
from types import ModuleType
from typing import Any, Dict, List, Tuple

from addict import Dict as AddictDict

from polyplate.common.errors import ConfigParseError

BASE_KEY = "_base_"


class ConfigDict(AddictDict):
    def __missing__(self, name):
        raise KeyError(name)

    def __getattr__(self, name):
        try:
            value = super(ConfigDict, self).__getattr__(name)
        except KeyError:
            ex = AttributeError(
                "'{}' object has no attribute '{}'".format(
                    self.__class__.__name__, name
                )
            )
        except Exception as e:
            ex = e
        else:
            return value
        raise ex

    def __setitem__(self, name, value):
        if isinstance(value, dict):
            value = ConfigDict(value)

        super(ConfigDict, self).__setitem__(name, value)


def add_args(parser, cfg, prefix=""):
    for k, v in cfg.items():
        if isinstance(v, bool):
            parser.add_argument("--" + prefix + k, action="store_true")
        elif isinstance(v, str):
            parser.add_argument("--" + prefix + k)
        elif isinstance(v, int):
            parser.add_argument("--" + prefix + k, type=int)
        elif isinstance(v, float):
            parser.add_argument("--" + prefix + k, type=float)
        elif isinstance(v, dict):
            add_args(parser, v, prefix + k + ".")
        elif isinstance(v, collections_abc.Iterable) and len(v) > 0:
            parser.add_argument("--" + prefix + k, type=type(v[0]), nargs="+")
        else:
            print("[WARNING] cannot parse key {} of type {}".format(prefix + k, type(v)))
    return parser


def merge_dicts(base: dict, override: dict) -> dict:
    """Merge `override` into a copy of `base`, recursing into nested dicts."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_dicts(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def flatten_dict(cfg: dict, prefix: str = "") -> List[Tuple[str, Any]]:
    """Return (dotted key, leaf value) pairs in insertion order."""
    items = []
    for key, value in cfg.items():
        dotted = prefix + str(key)
        if isinstance(value, dict) and value:
            items.extend(flatten_dict(value, dotted + "."))
        else:
            items.append((dotted, value))
    return items


def set_dotted(cfg: dict, dotted: str, value: Any):
    """Assign `value` at a dotted key, creating intermediate dicts."""
    keys = dotted.split(".")
    node = cfg
    for key in keys[:-1]:
        node = node.setdefault(key, dict())
        if not isinstance(node, dict):
            raise ConfigParseError(f"[ERROR] key '{dotted}' overrides a leaf value")
    node[keys[-1]] = value


def _to_plain(value: Any) -> Any:
    """Convert ConfigDicts (and tuples inside them) to plain literals."""
    if isinstance(value, dict):
        return {k: _to_plain(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_to_plain(v) for v in value]
    if isinstance(value, tuple):
        return tuple(_to_plain(v) for v in value)
    return value


def _load_py(filename: str) -> Dict[str, Any]:
    module_name = osp.basename(filename)[:-3]
    if "." in module_name:
        raise ValueError("Dots are not allowed in config file path.")
    spec = spec_from_file_location(f"_polyplate_cfg_{module_name}", filename)
    mod = module_from_spec(spec)
    spec.loader.exec_module(mod)  # type: ignore
    return {
        name: value
        for name, value in mod.__dict__.items()
        if not name.startswith("__")
        and not callable(value)
        and not isinstance(value, ModuleType)
    }


def _load_cfg(filename: str) -> Dict[str, Any]:
    cfg_dict: Dict[str, Any] = dict()
    bases: List[str] = []
    with open(filename, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("include "):
                bases.append(line[len("include ") :].strip())
                continue
            if "=" not in line:
                raise ConfigParseError(
                    f"[ERROR] {filename}:{lineno}: expected 'key = value', got {line!r}"
                )
            key, text = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ConfigParseError(f"[ERROR] {filename}:{lineno}: empty key")
            try:
                value = ast.literal_eval(text)
            except (ValueError, SyntaxError):
                raise ConfigParseError(
                    f"[ERROR] {filename}:{lineno}: cannot parse value {text!r}"
                )
            set_dotted(cfg_dict, key, value)
    if bases:
        cfg_dict[BASE_KEY] = bases
    return cfg_dict


class Config:
    """A facility for config and config files.

    Two file formats are understood: python files, whose module-level names
    become keys, and flat `.cfg` text with one `dotted.key = literal` per line.
    Both may include other files (`_base_ = [...]` in python, `include path`
    in flat text); the including file's values are merged over its bases.
    The interface is the same as a dict object and also allows access to
    config values as attributes.

    Example:
        >>> cfg = Config(dict(a=1, b=dict(b1=[0, 1])))
        >>> cfg.a
        1
        >>> cfg.b.b1
        [0, 1]
        >>> cfg = Config.fromfile('configs/square_plate/udl_clamped.py')
        >>> cfg.problem.hyper_params.bc
        'clamped'

    """

    def __init__(self, cfg_dict=None, filename=None):
        if cfg_dict is None:
            cfg_dict = dict()
        elif not isinstance(cfg_dict, dict):
            raise TypeError(
                "cfg_dict must be a dict, but got {}".format(type(cfg_dict))
            )

        super(Config, self).__setattr__("_cfg_dict", ConfigDict(cfg_dict))
        super(Config, self).__setattr__("_filename", filename)
        if filename:
            with open(filename, "r", encoding="utf-8") as f:
                super(Config, self).__setattr__("_text", f.read())
        else:
            super(Config, self).__setattr__("_text", "")

    @staticmethod
    def _file2dict(filename: str) -> Dict[str, Any]:
        filename = osp.abspath(osp.expanduser(filename))
        if not osp.isfile(filename):
            raise FileNotFoundError(f"file {filename} does not exist")
        if filename.endswith(".py"):
            cfg_dict = _load_py(filename)
        elif filename.endswith(".cfg"):
            cfg_dict = _load_cfg(filename)
        else:
            raise IOError("Only py/cfg type are supported now!")

        bases = cfg_dict.pop(BASE_KEY, [])
        if isinstance(bases, str):
            bases = [bases]
        merged: Dict[str, Any] = dict()
        for base in bases:
            base_path = osp.join(osp.dirname(filename), base)
            merged = merge_dicts(merged, Config._file2dict(base_path))
        return merge_dicts(merged, cfg_dict)

    @staticmethod
    def fromfile(filename):
        cfg_dict = Config._file2dict(filename)
        return Config(cfg_dict, filename=osp.abspath(osp.expanduser(filename)))

    @staticmethod
    def auto_argparser(description=None):
        """Generate argparser from config file automatically (experimental)
        """
        partial_parser = ArgumentParser(description=description)
        partial_parser.add_argument("config", help="config file path")
        cfg_file = partial_parser.parse_known_args()[0].config
        cfg = Config.fromfile(cfg_file)
        parser = ArgumentParser(description=description)
        parser.add_argument("config", help="config file path")
        add_args(parser, cfg)
        return parser, cfg

    def to_dict(self) -> Dict[str, Any]:
        return _to_plain(self._cfg_dict)

    @property
    def pretty_text(self) -> str:
        """Flat `dotted.key = literal` text of this config."""
        lines = [f"{key} = {value!r}" for key, value in flatten_dict(self.to_dict())]
        return "\n".join(lines) + "\n"

    def dump(self, filename: str):
        with open(filename, "w", encoding="utf-8") as f:
            f.write(self.pretty_text)

    def merge_from_dict(self, options: Dict[str, Any]):
        """Override values from a {dotted key: value} mapping."""
        cfg_dict = self.to_dict()
        for dotted, value in options.items():
            set_dotted(cfg_dict, dotted, value)
        super(Config, self).__setattr__("_cfg_dict", ConfigDict(cfg_dict))

    @property
    def filename(self):
        return self._filename

    @property
    def text(self):
        return self._text

    def __repr__(self):
        return "Config (path: {}): {}".format(self.filename, self._cfg_dict.__repr__())

    def __len__(self):
        return len(self._cfg_dict)

    def __getattr__(self, name):
        return getattr(self._cfg_dict, name)

    def __getitem__(self, name):
        return self._cfg_dict.__getitem__(name)

    def __setattr__(self, name, value):
        if isinstance(value, dict):
            value = ConfigDict(value)
        self._cfg_dict.__setattr__(name, value)

    def __setitem__(self, name, value):
        if isinstance(value, dict):
            value = ConfigDict(value)
        self._cfg_dict.__setitem__(name, value)

    def __contains__(self, name):
        return name in self._cfg_dict

    def __iter__(self):
        return iter(self._cfg_dict)
