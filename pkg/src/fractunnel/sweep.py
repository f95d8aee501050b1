"""Parameter sweeps behind the figures, with CSV and SVG export.

Grid points are independent pure evaluations. They may be farmed out to a
process pool, but rows are always assembled in axis-index order, so the output
does not depend on scheduling.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import __version__
from .config import DEFAULT_UNITS, UnitSystem
from .errors import DomainError, FractunnelError, RegimeError, SingularityError
from .hartman import find_alpha_H
from .kinematics import BarrierSpec
from .tunneling import asymptotic_slope, tunneling_time_closed

PARAMETERS = ("E", "Vr", "Vi", "alpha", "d")
DEFAULT_FIXED = {"E": 4.0, "Vr": 5.0, "Vi": 0.0, "alpha": 2.0}

D_POINTS = 240
CONTOUR_POINTS = 120

KINDS = {
    # kind: (axis names that must be present, output columns)
    "gamma_vs_d": (("d",), ("gamma",)),
    "gamma_vs_Vi": (("Vi",), ("gamma",)),
    "contour_alpha_d": (("alpha", "d"), ("gamma",)),
    "contour_Vi_d": (("Vi", "d"), ("gamma",)),
    "slope_vs_alpha": (("alpha",), ("slope", "intercept")),
    "alphaH_vs_Vi": (("Vi",), ("alpha_H", "slope_at_root")),
}


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]
    spec: str

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, steps: int) -> Axis:
        if name not in PARAMETERS:
            raise DomainError(f"unknown axis {name!r}; expected one of {', '.join(PARAMETERS)}")
        if steps < 2:
            raise DomainError(f"axis {name}: steps must be >= 2, got {steps}")
        if not lo < hi:
            raise DomainError(f"axis {name}: min must be < max, got {lo!r} >= {hi!r}")
        values = tuple(float(v) for v in np.linspace(lo, hi, steps))
        return cls(name, values, f"{name}:{lo!r}:{hi!r}:{steps}")

    @classmethod
    def of(cls, name: str, values: Sequence[float]) -> Axis:
        """A discrete family axis (e.g. the curve labels of a figure)."""
        if name not in PARAMETERS:
            raise DomainError(f"unknown axis {name!r}; expected one of {', '.join(PARAMETERS)}")
        if not values:
            raise DomainError(f"axis {name}: no values")
        vals = tuple(float(v) for v in values)
        return cls(name, vals, f"{name}=[{','.join(repr(v) for v in vals)}]")

    @classmethod
    def parse(cls, text: str) -> Axis:
        """Parse ``name:min:max:steps``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise DomainError(f"axis must look like name:min:max:steps, got {text!r}")
        name, lo, hi, steps = parts
        try:
            return cls.linspace(name, float(lo), float(hi), int(steps))
        except ValueError:
            raise DomainError(f"axis {text!r}: min/max must be numbers and steps an integer") from None


@dataclass(frozen=True)
class SweepRequest:
    kind: str
    fixed: Mapping[str, float]
    axes: tuple[Axis, ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown sweep kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if not 1 <= len(self.axes) <= 2:
            raise DomainError("a sweep takes one or two axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate axis names {names}")
        for key in self.fixed:
            if key not in PARAMETERS:
                raise DomainError(f"unknown fixed parameter {key!r}")
            if key in names:
                raise DomainError(f"parameter {key!r} is both fixed and an axis")
        required, _ = KINDS[self.kind]
        if tuple(names[-len(required):]) != required:
            raise DomainError(f"{self.kind} needs trailing axes {required}, got {tuple(names)}")
        if self.kind in ("gamma_vs_d", "gamma_vs_Vi", "contour_alpha_d", "contour_Vi_d"):
            if "d" not in names and "d" not in self.fixed:
                raise DomainError(f"{self.kind} needs a barrier width: fix d or sweep it")

    def parameters(self) -> dict[str, float]:
        params = dict(DEFAULT_FIXED)
        params.update(self.fixed)
        return params


@dataclass
class Dataset:
    """Rectangular table; ``None`` marks a value withheld because the point was flagged."""

    columns: list[str]
    rows: list[tuple]
    metadata: dict[str, str] = field(default_factory=dict)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _flag_for(exc: FractunnelError) -> str:
    if isinstance(exc, RegimeError):
        return "regime"
    if isinstance(exc, SingularityError):
        return "singular"
    return "domain"


def evaluate_point(kind: str, params: Mapping[str, float], units: UnitSystem = DEFAULT_UNITS) -> tuple[tuple, str]:
    """Outputs for one grid point and a flag ("" when the point is valid)."""
    n_out = len(KINDS[kind][1])
    try:
        if kind == "slope_vs_alpha":
            res = asymptotic_slope(params["E"], BarrierSpec(params["Vr"], params["Vi"]), params["alpha"], units)
            return (res.slope, res.intercept), ""
        if kind == "alphaH_vs_Vi":
            root = find_alpha_H(params["E"], params["Vr"], params["Vi"], units=units)
            if root.alpha_H is None:
                return (None, None), "no-root"
            return (root.alpha_H, root.slope_at_root), ""
        barrier = BarrierSpec(params["Vr"], params["Vi"], params["d"])
        return (tunneling_time_closed(params["E"], barrier, params["alpha"], units).gamma,), ""
    except FractunnelError as exc:
        return (None,) * n_out, _flag_for(exc)


def _evaluate_task(task: tuple) -> tuple[tuple, str]:
    return evaluate_point(*task)


def default_jobs() -> int:
    return os.cpu_count() or 1


def run_sweep(req: SweepRequest, jobs: int | None = 1, units: UnitSystem = DEFAULT_UNITS) -> Dataset:
    base = req.parameters()
    names = [a.name for a in req.axes]
    grid = list(product(*(a.values for a in req.axes)))
    tasks = []
    for point in grid:
        params = dict(base)
        params.update(zip(names, point))
        tasks.append((req.kind, params, units))

    if jobs is None:
        jobs = default_jobs()
    if jobs > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_task, tasks, chunksize=chunk))
    else:
        results = [_evaluate_task(t) for t in tasks]

    if all(flag for _, flag in results) and req.kind != "alphaH_vs_Vi":
        raise DomainError(f"no grid point of the {req.kind} sweep satisfies the regime preconditions")

    _, outputs = KINDS[req.kind]
    rows = [tuple(point) + tuple(values) + (flag,) for point, (values, flag) in zip(grid, results)]
    metadata = {"kind": req.kind}
    for key in PARAMETERS:
        if key not in names:
            metadata[key] = repr(base[key]) if key in base else "unset"
    for i, axis in enumerate(req.axes, start=1):
        metadata[f"axis{i}"] = axis.spec
    metadata["units"] = f"hbar={units.hbar!r} c={units.c!r} mass={units.mass!r} u={units.u!r}"
    metadata["version"] = __version__
    return Dataset(columns=names + list(outputs) + ["flag"], rows=rows, metadata=metadata)


# --- figures -------------------------------------------------------------------

FIGURE_IDS = (
    "fig1",
    "fig2a",
    "fig2b",
    "fig3a",
    "fig3b",
    "fig4",
    "fig5a",
    "fig5b",
    "fig6a",
    "fig6b",
    "fig6c",
    "fig6d",
)
FIG1_VI = (0.0, 10.0, 20.0, 40.0)
FIG_ALPHAS = (2.0, 1.98, 1.95, 1.9)
FIG6_ALPHAS = (2.0, 1.98, 1.96, 1.94, 1.92, 1.9)
FIG6_VI = {"fig6a": 20.0, "fig6b": 25.0, "fig6c": 30.0, "fig6d": 60.0}


def figure_requests(fig_id: str, d_points: int = D_POINTS, contour_points: int = CONTOUR_POINTS) -> list[tuple[str, SweepRequest]]:
    """(file stem, request) pairs reproducing one figure with E = 4, V_r = 5."""
    base = {"E": 4.0, "Vr": 5.0}
    d_axis = Axis.linspace("d", 0.05, 12.0, d_points)
    if fig_id == "fig1":
        return [("fig1", SweepRequest("gamma_vs_d", {**base, "alpha": 2.0}, (Axis.of("Vi", FIG1_VI), d_axis)))]
    if fig_id in ("fig2a", "fig2b"):
        d = 1.5 if fig_id == "fig2a" else 5.0
        axes = (Axis.of("alpha", FIG_ALPHAS), Axis.linspace("Vi", 0.0, 60.0, d_points))
        return [(fig_id, SweepRequest("gamma_vs_Vi", {**base, "d": d}, axes))]
    if fig_id in ("fig3a", "fig3b"):
        vi = 0.0 if fig_id == "fig3a" else 20.0
        axes = (Axis.linspace("alpha", 1.8, 2.0, contour_points), Axis.linspace("d", 0.05, 10.0, contour_points))
        return [(fig_id, SweepRequest("contour_alpha_d", {**base, "Vi": vi}, axes))]
    if fig_id == "fig4":
        axes = (Axis.of("alpha", FIG_ALPHAS), Axis.linspace("d", 0.05, 10.0, d_points))
        return [("fig4", SweepRequest("gamma_vs_d", {**base, "Vi": 0.0}, axes))]
    if fig_id in ("fig5a", "fig5b"):
        alpha = 2.0 if fig_id == "fig5a" else 1.96
        axes = (Axis.linspace("Vi", 0.0, 60.0, contour_points), Axis.linspace("d", 0.05, 10.0, contour_points))
        return [(fig_id, SweepRequest("contour_Vi_d", {**base, "alpha": alpha}, axes))]
    if fig_id in FIG6_VI:
        vi = FIG6_VI[fig_id]
        root = find_alpha_H(base["E"], base["Vr"], vi, bracket=(1.8, 2.0))
        family = set(FIG6_ALPHAS)
        if root.alpha_H is not None:
            family.add(root.alpha_H)
        axes = (Axis.of("alpha", sorted(family, reverse=True)), Axis.linspace("d", 0.05, 20.0, d_points))
        slope_axis = (Axis.linspace("alpha", 1.9, 2.0, 101),)
        return [
            (fig_id, SweepRequest("gamma_vs_d", {**base, "Vi": vi}, axes)),
            (f"{fig_id}_slope", SweepRequest("slope_vs_alpha", {**base, "Vi": vi}, slope_axis)),
        ]
    raise DomainError(f"unknown figure {fig_id!r}; expected one of {', '.join(FIGURE_IDS)}")


def reproduce_figure(fig_id: str, jobs: int | None = 1, units: UnitSystem = DEFAULT_UNITS, **grid) -> list[tuple[str, Dataset]]:
    out = []
    for stem, req in figure_requests(fig_id, **grid):
        ds = run_sweep(req, jobs=jobs, units=units)
        ds.metadata = {"figure": fig_id, **ds.metadata}
        out.append((stem, ds))
    return out


# --- writers -------------------------------------------------------------------


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".9g")


def dumps_csv(ds: Dataset) -> str:
    buf = io.StringIO()
    for key, value in ds.metadata.items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ds.columns)
    for row in ds.rows:
        if len(row) != len(ds.columns):
            raise ValueError(f"row arity {len(row)} does not match {len(ds.columns)} columns")
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _write(path: str | Path, text: str) -> int:
    data = text.encode("utf-8")
    path = Path(path)
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return len(data)


def write_csv(ds: Dataset, path: str | Path) -> int:
    return _write(path, dumps_csv(ds))


def read_csv(path: str | Path) -> Dataset:
    """Inverse of write_csv: numbers come back as floats, empty cells as None."""
    metadata: dict[str, str] = {}
    lines = Path(path).read_text().splitlines()
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            metadata[key] = value
        else:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    rows = []
    for raw in reader:
        row = []
        for name, cell in zip(columns, raw):
            if name == "flag":
                row.append(cell)
            else:
                row.append(float(cell) if cell else None)
        rows.append(tuple(row))
    return Dataset(columns, rows, metadata)


# --- SVG -----------------------------------------------------------------------

_PALETTE = ("#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
_W, _H = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 150, 20, 50


def _series(ds: Dataset) -> tuple[str, str, list[tuple[str, list[tuple[float, float]]]]]:
    outputs = [c for c in ds.columns if c not in PARAMETERS and c != "flag"]
    axes = [c for c in ds.columns if c in PARAMETERS]
    x_name, y_name = axes[-1], outputs[0]
    xi, yi = ds.columns.index(x_name), ds.columns.index(y_name)
    groups: dict[str, list[tuple[float, float]]] = {}
    for row in ds.rows:
        label = f"{axes[0]}={format(row[0], '.6g')}" if len(axes) > 1 else y_name
        pts = groups.setdefault(label, [])
        if row[yi] is not None:
            pts.append((float(row[xi]), float(row[yi])))
    return x_name, y_name, list(groups.items())


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def dumps_svg(ds: Dataset) -> str:
    """Static SVG 1.1 line chart: last axis on x, first output on y, one polyline per family member."""
    x_name, y_name, series = _series(ds)
    pts = [p for _, s in series for p in s]
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def sx(x: float) -> float:
        return _LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y: float) -> float:
        return _TOP + (1.0 - (y - y0) / (y1 - y0)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="#ffffff"/>',
        f'<g id="axes" stroke="#000000" stroke-width="1" fill="none">'
        f'<line x1="{_LEFT}" y1="{_TOP + ph}" x2="{_LEFT + pw}" y2="{_TOP + ph}"/>'
        f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + ph}"/></g>',
        '<g id="ticks" font-family="sans-serif" font-size="11" fill="#000000">',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.2f}" y="{_TOP + ph + 16}" text-anchor="middle">{format(t, ".4g")}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{_LEFT - 6}" y="{sy(t) + 4:.2f}" text-anchor="end">{format(t, ".4g")}</text>')
    out.append("</g>")
    out.append(
        f'<text x="{_LEFT + pw / 2:.2f}" y="{_H - 12}" font-family="sans-serif" font-size="13" text-anchor="middle">{x_name}</text>'
    )
    out.append(
        f'<text x="16" y="{_TOP + ph / 2:.2f}" font-family="sans-serif" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {_TOP + ph / 2:.2f})">{y_name}</text>'
    )
    out.append('<g id="series" fill="none" stroke-width="1.5">')
    for i, (label, s) in enumerate(series):
        colour = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s if math.isfinite(y))
        out.append(f'<polyline stroke="{colour}" points="{coords}"><title>{label}</title></polyline>')
    out.append("</g>")
    out.append('<g id="legend" font-family="sans-serif" font-size="11">')
    for i, (label, _) in enumerate(series[:30]):
        colour = _PALETTE[i % len(_PALETTE)]
        y = _TOP + 10 + 16 * i
        lx = _LEFT + pw + 12
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 20}" y2="{y}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{y + 4}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg_lineplot(ds: Dataset, path: str | Path) -> int:
    return _write(path, dumps_svg(ds))
