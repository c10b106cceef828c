"""Bundled figure panels: canned sweeps with fixed grids and column layouts.

Each panel is concretely a sweep (same evaluation path as run_sweep) plus a
column selection, so a panel value and the equivalent hand-written sweep
agree to the byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .states import StateKind
from .svgplot import line_plot_svg
from .sweeps import SweepGrid, SweepSpec, run_sweep
from .tables import Table, merge_tables

__all__ = ["FigurePanel", "FigureResult", "FIGURES", "figure_ids", "run_figure"]

# curvature axis for the lambda panels: the flat point plus a log ramp
LAMBDA_AXIS = np.concatenate(([0.0], np.geomspace(1e-2, 1e2, 41)))
PHI_AXIS_POINTS = 201
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FigurePanel:
    figure_id: str
    filename: str
    title: str
    xlabel: str
    ylabel: str
    log_x: bool
    build: Callable[[], Table]


@dataclass(frozen=True)
class FigureResult:
    panel: FigurePanel
    table: Table
    csv: str
    svg: str | None


def _pdf_vs_m(kind: StateKind) -> Table:
    spec = SweepSpec(
        kind=kind,
        cutoff=5,
        mu=1.0,
        m_values=(),
        variable="m",
        grid=SweepGrid(0.0, 5.0, 6),
        observables=("pdf",),
        curvature=0.0,
    )
    return run_sweep(spec)


def _pdf_vs_lambda(kind: StateKind) -> Table:
    spec = SweepSpec(
        kind=kind,
        cutoff=5,
        mu=1.0,
        m_values=(1,),
        variable="lambda",
        grid=SweepGrid(1e-2, 1e2, 41, "log"),
        observables=("pdf",),
    )
    return run_sweep(spec, values=LAMBDA_AXIS)


def _mean_vs_lambda(kind: StateKind) -> Table:
    spec = SweepSpec(
        kind=kind,
        cutoff=5,
        mu=1.0,
        m_values=(0, 1, 2, 3, 4),
        variable="lambda",
        grid=SweepGrid(1e-2, 1e2, 41, "log"),
        observables=("mean",),
    )
    return run_sweep(spec, values=LAMBDA_AXIS)


def _mandel_vs_lambda(kind: StateKind) -> Table:
    spec = SweepSpec(
        kind=kind,
        cutoff=20,
        mu=1.0,
        m_values=(0, 5, 10),
        variable="lambda",
        grid=SweepGrid(1e-2, 1e2, 41, "log"),
        observables=("mandel",),
    )
    return run_sweep(spec, values=LAMBDA_AXIS)


def _phi_spec(kind: StateKind, m_values: tuple[int, ...], curvature: float) -> SweepSpec:
    return SweepSpec(
        kind=kind,
        cutoff=20,
        mu=0.5,
        m_values=m_values,
        variable="phi",
        grid=SweepGrid(0.0, _TWO_PI, PHI_AXIS_POINTS),
        observables=("squeezing",),
        curvature=curvature,
    )


def _squeezing_vs_phi_by_m(kind: StateKind, component: int) -> Table:
    table = run_sweep(_phi_spec(kind, (0, 5, 10), 0.0))
    names = ["phi"] + [f"s{component}[m={m}]" for m in (0, 5, 10)]
    return table.select(names)


def _squeezing_vs_phi_by_lambda(kind: StateKind, component: int) -> Table:
    lams = (0.0, 0.1, 0.2)
    tables = [run_sweep(_phi_spec(kind, (1,), lam)) for lam in lams]
    base = tables[0].select(["phi", f"s{component}"], ["phi", f"s{component}[lambda=0]"])
    extras = [
        (tables[i], f"s{component}", f"s{component}[lambda={lams[i]:g}]")
        for i in (1, 2)
    ]
    return merge_tables(base, extras)


def _panel(fig_id: str, title: str, xlabel: str, ylabel: str, log_x: bool, build) -> FigurePanel:
    return FigurePanel(
        figure_id=fig_id,
        filename=f"fig_{fig_id}.csv",
        title=title,
        xlabel=xlabel,
        ylabel=ylabel,
        log_x=log_x,
        build=build,
    )


_ADD = StateKind.PHOTON_ADDED
_SUB = StateKind.PHOTON_SUBTRACTED

FIGURES: dict[str, FigurePanel] = {
    p.figure_id: p
    for p in (
        _panel(
            "1a",
            "Photon-added distribution vs additions (N=5, mu=1, lambda=0)",
            "m",
            "P_n",
            False,
            lambda: _pdf_vs_m(_ADD),
        ),
        _panel(
            "1b",
            "Photon-added distribution vs curvature (N=5, mu=1, m=1)",
            "lambda",
            "P_n",
            True,
            lambda: _pdf_vs_lambda(_ADD),
        ),
        _panel(
            "2",
            "Mean photon number, photon-added (N=5, mu=1)",
            "lambda",
            "mean",
            True,
            lambda: _mean_vs_lambda(_ADD),
        ),
        _panel(
            "3a",
            "Photon-subtracted distribution vs subtractions (N=5, mu=1, lambda=0)",
            "m",
            "P_n",
            False,
            lambda: _pdf_vs_m(_SUB),
        ),
        _panel(
            "3b",
            "Photon-subtracted distribution vs curvature (N=5, mu=1, m=1)",
            "lambda",
            "P_n",
            True,
            lambda: _pdf_vs_lambda(_SUB),
        ),
        _panel(
            "4",
            "Mean photon number, photon-subtracted (N=5, mu=1)",
            "lambda",
            "mean",
            True,
            lambda: _mean_vs_lambda(_SUB),
        ),
        _panel(
            "5a",
            "Mandel parameter, photon-added (N=20, mu=1)",
            "lambda",
            "Q",
            True,
            lambda: _mandel_vs_lambda(_ADD),
        ),
        _panel(
            "5b",
            "Mandel parameter, photon-subtracted (N=20, mu=1)",
            "lambda",
            "Q",
            True,
            lambda: _mandel_vs_lambda(_SUB),
        ),
        _panel(
            "6a",
            "First quadrature vs phase, photon-added (N=20, mu=0.5, lambda=0)",
            "phi",
            "s1",
            False,
            lambda: _squeezing_vs_phi_by_m(_ADD, 1),
        ),
        _panel(
            "6b",
            "Second quadrature vs phase, photon-added (N=20, mu=0.5, lambda=0)",
            "phi",
            "s2",
            False,
            lambda: _squeezing_vs_phi_by_m(_ADD, 2),
        ),
        _panel(
            "7a",
            "First quadrature vs phase, photon-added (N=20, mu=0.5, m=1)",
            "phi",
            "s1",
            False,
            lambda: _squeezing_vs_phi_by_lambda(_ADD, 1),
        ),
        _panel(
            "7b",
            "Second quadrature vs phase, photon-added (N=20, mu=0.5, m=1)",
            "phi",
            "s2",
            False,
            lambda: _squeezing_vs_phi_by_lambda(_ADD, 2),
        ),
        _panel(
            "8a",
            "First quadrature vs phase, photon-subtracted (N=20, mu=0.5, lambda=0)",
            "phi",
            "s1",
            False,
            lambda: _squeezing_vs_phi_by_m(_SUB, 1),
        ),
        _panel(
            "8b",
            "Second quadrature vs phase, photon-subtracted (N=20, mu=0.5, lambda=0)",
            "phi",
            "s2",
            False,
            lambda: _squeezing_vs_phi_by_m(_SUB, 2),
        ),
        _panel(
            "9a",
            "First quadrature vs phase, photon-subtracted (N=20, mu=0.5, m=1)",
            "phi",
            "s1",
            False,
            lambda: _squeezing_vs_phi_by_lambda(_SUB, 1),
        ),
        _panel(
            "9b",
            "Second quadrature vs phase, photon-subtracted (N=20, mu=0.5, m=1)",
            "phi",
            "s2",
            False,
            lambda: _squeezing_vs_phi_by_lambda(_SUB, 2),
        ),
    )
}


def figure_ids() -> list[str]:
    return list(FIGURES)


def run_figure(figure_id: str, include_svg: bool = False) -> FigureResult:
    """Build one panel's table; optionally also render it as SVG."""
    panel = FIGURES.get(figure_id)
    if panel is None:
        raise KeyError(f"unknown figure {figure_id!r}; known: {', '.join(FIGURES)}")
    table = panel.build()
    svg = None
    if include_svg:
        x = [float(v) for v in (row[0] for row in table.rows)]
        series = [
            (name, [row[i] for row in table.rows])
            for i, name in enumerate(table.columns)
            if i > 0
        ]
        svg = line_plot_svg(
            x,
            series,
            title=panel.title,
            xlabel=panel.xlabel,
            ylabel=panel.ylabel,
            log_x=panel.log_x,
        )
    return FigureResult(panel=panel, table=table, csv=table.render_csv(), svg=svg)
