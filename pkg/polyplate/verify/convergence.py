# -*- coding: utf-8 -*-
"""Convergence series, fitted rates and their CSV / SVG reports."""
import csv
import os
from typing import Dict, List, NamedTuple, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

import polyplate.common.helper_functions as common_utils  # noqa: E402

CSV_FIELDS = ("mesh_size", "dofs", "l2_rel", "h1_rel", "seconds")


class ConvergencePoint(NamedTuple):
    mesh_size: float
    dofs: int
    l2_rel: float
    h1_rel: float
    seconds: float


class ConvergenceRecord:
    """Errors of one problem at one thickness over a refinement series.

    Attributes:
        problem (str): problem name
        h_over_a (float): normalized thickness
        points (list): ConvergencePoint rows, mesh size strictly decreasing

    """

    def __init__(self, problem: str, h_over_a: float, points: Sequence[ConvergencePoint] = ()):
        """Initialize."""
        self.problem = problem
        self.h_over_a = h_over_a
        self.points: List[ConvergencePoint] = []
        for point in points:
            self.add(point)

    def add(self, point: ConvergencePoint):
        if self.points and not point.mesh_size < self.points[-1].mesh_size:
            raise ValueError(
                f"[ERROR] mesh sizes must decrease along a series: "
                f"{point.mesh_size:.6g} after {self.points[-1].mesh_size:.6g}"
            )
        self.points.append(ConvergencePoint(*point))

    @property
    def sizes(self) -> np.ndarray:
        return np.array([p.mesh_size for p in self.points])

    @property
    def l2(self) -> np.ndarray:
        return np.array([p.l2_rel for p in self.points])

    @property
    def h1(self) -> np.ndarray:
        return np.array([p.h1_rel for p in self.points])

    def slopes(self) -> Tuple[float, float]:
        """Least-squares (L2, H1) rates on log-log axes."""
        return (
            common_utils.fit_slope(self.sizes, self.l2),
            common_utils.fit_slope(self.sizes, self.h1),
        )

    def slopes_without_coarsest(self) -> Tuple[float, float]:
        return (
            common_utils.fit_slope(self.sizes[1:], self.l2[1:]),
            common_utils.fit_slope(self.sizes[1:], self.h1[1:]),
        )

    @property
    def label(self) -> str:
        return f"{self.problem}_h{self.h_over_a:g}"

    def to_csv(self, path: str, timing: bool = False):
        """Write the series; the seconds column is written only when `timing` is set."""
        fields = CSV_FIELDS if timing else CSV_FIELDS[:-1]
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(fields)
            for p in self.points:
                row = [repr(float(p.mesh_size)), int(p.dofs), repr(float(p.l2_rel)), repr(float(p.h1_rel))]
                if timing:
                    row.append(f"{p.seconds:.3f}")
                writer.writerow(row)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "ConvergenceRecord(problem={!r}, h_over_a={!r}, n_points={})".format(
            self.problem, self.h_over_a, len(self.points)
        )


def _plot(records: Sequence[ConvergenceRecord], attr: str, title: str, path: str):
    fig, ax = plt.subplots(figsize=(5, 4))
    for record in records:
        values = getattr(record, attr)
        slope = common_utils.fit_slope(record.sizes, values)
        ax.loglog(record.sizes, values, "o-", label=f"h/a = {record.h_over_a:g} (rate {slope:.2f})")
    ax.set_xlabel("mesh size")
    ax.set_ylabel(title)
    ax.grid(True, which="both", linewidth=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=dict(Date=None))
    plt.close(fig)


def convergence_report(
    records: Sequence[ConvergenceRecord], directory: str, timing: bool = False
) -> List[str]:
    """Write one CSV per record, a slope table and L2 / H1 plots per problem.

    Returns:
        paths of the written files

    """
    if not records:
        raise ValueError("[ERROR] convergence report needs at least one series")
    for record in records:
        if len(record) < 2:
            raise ValueError(f"[ERROR] series {record.label} has fewer than two refinements")
    os.makedirs(directory, exist_ok=True)

    written = []
    by_problem: Dict[str, List[ConvergenceRecord]] = dict()
    slope_rows = []
    for record in records:
        path = os.path.join(directory, f"convergence_{record.label}.csv")
        record.to_csv(path, timing)
        written.append(path)
        by_problem.setdefault(record.problem, []).append(record)
        l2_slope, h1_slope = record.slopes()
        slope_rows.append([record.problem, repr(float(record.h_over_a)), f"{l2_slope:.6f}", f"{h1_slope:.6f}"])

    slope_path = os.path.join(directory, "convergence_slopes.csv")
    with open(slope_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["problem", "h_over_a", "l2_slope", "h1_slope"])
        writer.writerows(slope_rows)
    written.append(slope_path)

    for problem, group in by_problem.items():
        for attr, title in (("l2", "relative L2 error"), ("h1", "relative H1 seminorm error")):
            path = os.path.join(directory, f"convergence_{problem}_{attr}.svg")
            _plot(group, attr, title, path)
            written.append(path)
    return written
