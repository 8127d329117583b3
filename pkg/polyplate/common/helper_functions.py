# -*- coding: utf-8 -*-
"""Common util functions shared by the mesh, element and verify modules."""
import hashlib
import json
import os
import random
from typing import Any, Dict, Sequence

import numpy as np

from polyplate.utils.config import ConfigDict

OUTPUT_ROOT_ENV = "POLYPLATE_OUTPUT_ROOT"


def set_random_seed(seed: int):
    """Set random seed"""
    np.random.seed(seed)
    random.seed(seed)


def polygon_signed_area(vertices: np.ndarray) -> float:
    """Shoelace area, positive for counter-clockwise loops."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def polygon_area(vertices: np.ndarray) -> float:
    return abs(polygon_signed_area(vertices))


def polygon_centroid(vertices: np.ndarray) -> np.ndarray:
    """Area centroid of a simple polygon."""
    x, y = vertices[:, 0], vertices[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * cross.sum()
    if area == 0.0:
        return vertices.mean(axis=0)
    cx = ((x + xn) * cross).sum() / (6.0 * area)
    cy = ((y + yn) * cross).sum() / (6.0 * area)
    return np.array([cx, cy])


def polygon_diameter(vertices: np.ndarray) -> float:
    """Largest vertex-to-vertex distance."""
    diff = vertices[:, None, :] - vertices[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=-1)).max())


def turn_cross_products(vertices: np.ndarray) -> np.ndarray:
    """Cross products of consecutive edge vectors; entry i is the turn at vertex i."""
    edges = np.roll(vertices, -1, axis=0) - vertices
    incoming = np.roll(edges, 1, axis=0)
    return incoming[:, 0] * edges[:, 1] - incoming[:, 1] * edges[:, 0]


def is_convex_ccw(vertices: np.ndarray, tol: float = 1e-12) -> bool:
    """Check strict convexity and counter-clockwise orientation.

    The tolerance is relative to the squared bounding-box scale.
    """
    if len(vertices) < 3:
        return False
    scale = float(np.ptp(vertices, axis=0).max())
    if scale == 0.0:
        return False
    cross = turn_cross_products(vertices)
    return bool(np.all(cross > tol * scale ** 2)) and polygon_signed_area(vertices) > 0


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0) -> np.ndarray:
    """Counter-clockwise regular n-gon centred at the origin."""
    theta = phase + 2.0 * np.pi * np.arange(n) / n
    return radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)


def random_convex_polygon(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random convex n-gon inscribed in the unit circle.

    Angles are jittered around a regular layout so no interior angle gets
    close to pi and no edge collapses.
    """
    base = 2.0 * np.pi * np.arange(n) / n
    jitter = rng.uniform(-0.3, 0.3, size=n) * (2.0 * np.pi / n)
    theta = np.sort(base + jitter) + rng.uniform(0.0, 2.0 * np.pi)
    radius = 1.0 + rng.uniform(-0.1, 0.1)
    return radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)


def fit_slope(sizes: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(size)."""
    sizes = np.asarray(sizes, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if len(sizes) < 2:
        raise ValueError("[ERROR] at least two points are needed to fit a slope")
    if np.any(sizes <= 0) or np.any(errors <= 0):
        raise ValueError("[ERROR] sizes and errors must be positive for a log fit")
    slope, _ = np.polyfit(np.log(sizes), np.log(errors), 1)
    return float(slope)


def get_output_root() -> str:
    return os.environ.get(OUTPUT_ROOT_ENV, "./output")


def config_hash(cfg_dict: Dict[str, Any]) -> str:
    """Stable sha256 of a plain config dict."""
    text = json.dumps(cfg_dict, sort_keys=True, default=repr)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def set_cfg_for_integration_test(cfg: ConfigDict) -> ConfigDict:
    """Set specific values in config for integration test."""
    hyper_params = cfg.problem.hyper_params
    if "thickness_ratios" in hyper_params:
        hyper_params.thickness_ratios = hyper_params.thickness_ratios[:2]
    if "node_targets" in hyper_params:
        hyper_params.node_targets = [60, 120]
    if "element_series" in hyper_params:
        hyper_params.element_series = [16, 36]
    for key in ("rank_polygons", "closed_form_polygons", "basis_polygons", "quadrature_polygons"):
        if key in hyper_params:
            hyper_params[key] = 3
    hyper_params.num_workers = 1
    mesher_cfgs = list(hyper_params.get("meshers", []))
    if "mesher_cfg" in cfg.problem:
        mesher_cfgs.append(cfg.problem.mesher_cfg)
    for mesher_cfg in mesher_cfgs:
        if "lloyd_iters" in mesher_cfg:
            mesher_cfg.lloyd_iters = 5
    # shrunken runs cannot meet the acceptance bands
    hyper_params.enforce_checks = False
    return cfg
