"""Parameter sweeps over curvature, photon operations, or quadrature phase.

A sweep evaluates one state family on a grid and tabulates the requested
observables.  Points are independent pure computations, so they are farmed
out to a thread pool; the output ordering (and therefore the rendered CSV)
does not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import ModelParams
from .observables import min_squeezing, photon_statistics, quadrature_report
from .states import StateKind, StateSpec, build_state
from .tables import Table

__all__ = ["SweepGrid", "SweepSpec", "run_sweep", "OBSERVABLES", "VARIABLES"]

OBSERVABLES = ("pdf", "mean", "mandel", "squeezing")
VARIABLES = ("lambda", "m", "phi")
_SQUEEZE_GRID = 256


@dataclass(frozen=True)
class SweepGrid:
    """Inclusive 1-D grid: linear or logarithmic between start and stop."""

    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.scale not in ("linear", "log"):
            raise ValueError(f"grid scale must be linear or log, got {self.scale!r}")
        if self.points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.points}")
        if self.scale == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise ValueError("log grids need positive endpoints")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: a state recipe, the swept variable, and observables.

    curvature holds the fixed deformation when the swept variable is not
    lambda itself.  Observables are stored in canonical order.  A phi sweep
    tabulates both quadrature components per state, so it only accepts the
    squeezing observable.
    """

    kind: StateKind
    cutoff: int
    mu: complex
    m_values: tuple[int, ...]
    variable: str
    grid: SweepGrid
    observables: tuple[str, ...]
    curvature: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", StateKind(self.kind))
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        if self.variable not in VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        unknown = set(self.observables) - set(OBSERVABLES)
        if unknown:
            raise ValueError(f"unknown observables: {sorted(unknown)}")
        if not self.observables:
            raise ValueError("need at least one observable")
        canonical = tuple(o for o in OBSERVABLES if o in set(self.observables))
        object.__setattr__(self, "observables", canonical)
        if self.curvature < 0.0:
            raise ValueError("curvature must be >= 0")
        if self.variable == "phi" and canonical != ("squeezing",):
            raise ValueError("a phi sweep supports exactly the squeezing observable")
        if self.variable != "m" and not self.m_values:
            raise ValueError("need at least one m value")


def _m_label(spec: SweepSpec, m: int) -> str:
    if spec.variable != "m" and len(spec.m_values) > 1:
        return f"[m={m}]"
    return ""


def _columns(spec: SweepSpec) -> tuple[str, ...]:
    cols = [spec.variable]
    ms = spec.m_values if spec.variable != "m" else (None,)
    for m in ms:
        tag = _m_label(spec, m) if m is not None else ""
        for obs in spec.observables:
            if spec.variable == "phi":
                cols += [f"s1{tag}", f"s2{tag}"]
            elif obs == "pdf":
                cols += [f"P{n}{tag}" for n in range(spec.cutoff + 1)]
            elif obs == "squeezing":
                cols += [f"s_min{tag}", f"phi_min{tag}"]
            else:
                cols.append(f"{obs}{tag}")
    return tuple(cols)


def _observable_cells(spec: SweepSpec, state) -> list:
    cells: list = []
    stats = None
    for obs in spec.observables:
        if obs in ("pdf", "mean", "mandel") and stats is None:
            stats = photon_statistics(state)
        if obs == "pdf":
            cells.extend(float(p) for p in stats.pdf)
        elif obs == "mean":
            cells.append(stats.mean)
        elif obs == "mandel":
            cells.append(stats.mandel_q)
        else:
            phase, s_star = min_squeezing(state, _SQUEEZE_GRID)
            cells.extend([s_star, phase])
    return cells


def _point_row(spec: SweepSpec, value) -> tuple:
    if spec.variable == "lambda":
        lam, ms = float(value), spec.m_values
        cells: list = [lam]
    else:  # variable == "m"
        lam, ms = spec.curvature, (int(value),)
        cells = [int(value)]
    params = ModelParams(lam, spec.cutoff)
    for m in ms:
        state = build_state(StateSpec(spec.kind, params, spec.mu, m))
        cells.extend(_observable_cells(spec, state))
    return tuple(cells)


def _integer_values(raw: np.ndarray, cutoff: int) -> list[int]:
    values = []
    for v in raw:
        r = round(float(v))
        if abs(v - r) > 1e-9:
            raise ValueError(f"m grid value {v} is not an integer")
        values.append(int(r))
    if len(set(values)) != len(values):
        raise ValueError("m grid repeats values")
    if any(v < 0 or v > cutoff for v in values):
        raise ValueError(f"m grid leaves 0..{cutoff}")
    return values


def run_sweep(spec: SweepSpec, *, values=None, max_workers: int | None = None) -> Table:
    """Evaluate the sweep and return its table.

    values, if given, overrides the grid of the spec (used by the bundled
    figures, whose curvature axis mixes a zero point into a log grid).
    """
    raw = spec.grid.values() if values is None else np.asarray(values, dtype=float)
    if spec.variable == "phi":
        return _phi_table(spec, raw, max_workers)
    if spec.variable == "m":
        points: list = _integer_values(raw, spec.cutoff)
    else:
        points = [float(v) for v in raw]

    workers = max_workers or min(8, len(points))
    if workers <= 1:
        rows = [_point_row(spec, v) for v in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _point_row(spec, v), points))
    return Table(columns=_columns(spec), rows=tuple(rows))


def _phi_table(spec: SweepSpec, raw: np.ndarray, max_workers: int | None) -> Table:
    params = ModelParams(spec.curvature, spec.cutoff)
    states = [
        build_state(StateSpec(spec.kind, params, spec.mu, m)) for m in spec.m_values
    ]

    def row(phi: float) -> tuple:
        cells: list = [phi]
        for state in states:
            report = quadrature_report(state, phi)
            cells.extend([report.s1, report.s2])
        return tuple(cells)

    points = [float(v) for v in raw]
    workers = max_workers or min(8, len(points))
    if workers <= 1:
        rows = [row(v) for v in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, points))
    return Table(columns=_columns(spec), rows=tuple(rows))
