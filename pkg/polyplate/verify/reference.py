# -*- coding: utf-8 -*-
"""Published reference values for the square plate tables.

Deflections are normalized as w_bar = 100 w_c D_b / (q a^4). Third-party
element columns are kept for the report only.
"""
import csv
import os
from typing import Dict, List

THICKNESS_RATIOS = (1e-5, 0.001, 0.01, 0.1, 0.15, 0.2)

# classical thin-plate coefficients w_c D_b / (q a^4)
KIRCHHOFF_CLAMPED = 0.00126532
KIRCHHOFF_SIMPLY_SUPPORTED = 0.00406235

EXACT: Dict[str, Dict[float, float]] = {
    "clamped": dict(zip(THICKNESS_RATIOS, (0.1265, 0.1265, 0.1265, 0.1499, 0.1798, 0.2167))),
    "hard_simply_supported": dict(
        zip(THICKNESS_RATIOS, (0.4062, 0.4062, 0.4064, 0.4273, 0.4536, 0.4906))
    ),
}

# finest mesh (803 nodes) of the polygonal element study
PUBLISHED_803_NODES: Dict[str, Dict[float, float]] = {
    "clamped": dict(zip(THICKNESS_RATIOS, (0.1266, 0.1266, 0.1267, 0.1504, 0.1791, 0.2181))),
    "hard_simply_supported": dict(
        zip(THICKNESS_RATIOS, (0.4043, 0.4043, 0.4043, 0.4252, 0.4520, 0.4895))
    ),
}

# None where no value was published
THIRD_PARTY: Dict[str, Dict[str, tuple]] = {
    "clamped": {
        "TTK9s6": (0.1269, 0.1269, 0.1272, 0.1487, 0.1746, 0.2098),
        "DST-BL": (0.1265, 0.1265, 0.1268, 0.1476, 0.1726, 0.2073),
    },
    "hard_simply_supported": {
        "PRMn-W": (None, 0.4070, None, 0.42750, None, None),
        "TTK9s6": (0.4064, 0.4064, 0.4067, 0.4261, 0.4507, 0.4850),
        "DST-BL": (0.4061, 0.4061, 0.4063, 0.4256, 0.4501, 0.4844),
    },
}


def exact_w_bar(bc: str, h_over_a: float) -> float:
    if bc not in EXACT:
        raise KeyError(f"[ERROR] no reference deflections for boundary condition {bc!r}")
    for ratio, value in EXACT[bc].items():
        if abs(ratio - h_over_a) <= 1e-12 * max(ratio, h_over_a):
            return value
    raise KeyError(f"[ERROR] no reference deflection for h/a = {h_over_a!r}")


def reference_rows(bc: str) -> List[dict]:
    rows = []
    for i, ratio in enumerate(THICKNESS_RATIOS):
        row = dict(
            h_over_a=ratio, exact=EXACT[bc][ratio], published_803=PUBLISHED_803_NODES[bc][ratio]
        )
        for name, values in THIRD_PARTY[bc].items():
            row[name] = "" if values[i] is None else values[i]
        rows.append(row)
    return rows


def write_reference_csv(bc: str, path: str):
    rows = reference_rows(bc)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
