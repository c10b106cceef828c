"""Bundled figure panels: layout, determinism, and the trends in the curves."""

import numpy as np
import pytest

from spherecs.figures import FIGURES, LAMBDA_AXIS, figure_ids, run_figure
from spherecs.states import StateKind
from spherecs.sweeps import SweepGrid, SweepSpec, run_sweep

ALL_IDS = (
    "1a", "1b", "2", "3a", "3b", "4",
    "5a", "5b", "6a", "6b", "7a", "7b",
    "8a", "8b", "9a", "9b",
)


def column(table, name):
    return table.column(name)


def test_manifest_is_complete():
    assert tuple(figure_ids()) == ALL_IDS
    assert set(FIGURES) == set(ALL_IDS)
    for fid, panel in FIGURES.items():
        assert panel.filename == f"fig_{fid}.csv"


def test_unknown_figure_raises_key_error():
    with pytest.raises(KeyError):
        run_figure("10z")


def test_rerun_is_byte_identical():
    first = run_figure("5a").csv
    second = run_figure("5a").csv
    assert first == second


def test_panel_equals_equivalent_sweep():
    """A figure is sugar over run_sweep; the bytes must agree exactly."""
    spec = SweepSpec(
        kind=StateKind.PHOTON_ADDED, cutoff=20, mu=1.0, m_values=(0, 5, 10),
        variable="lambda", grid=SweepGrid(1e-2, 1e2, 41, "log"),
        observables=("mandel",),
    )
    direct = run_sweep(spec, values=LAMBDA_AXIS).render_csv()
    assert run_figure("5a").csv == direct


def test_svg_generation():
    res = run_figure("2", include_svg=True)
    assert res.svg is not None and res.svg.startswith("<svg")
    assert run_figure("2").svg is None


def test_lambda_axis_has_flat_point_and_log_ramp():
    assert LAMBDA_AXIS[0] == 0.0
    assert LAMBDA_AXIS[1] == pytest.approx(1e-2)
    assert LAMBDA_AXIS[-1] == pytest.approx(1e2)
    assert len(LAMBDA_AXIS) == 42


def test_added_distribution_vs_m():
    table = run_figure("1a").table
    assert [r[0] for r in table.rows] == [0, 1, 2, 3, 4, 5]
    for row in table.rows:
        m = row[0]
        # levels below m are exactly empty
        assert all(v == 0 for v in row[1 : 1 + m])
    # with every addition applied the state is the top Fock state
    assert table.rows[-1][6] == pytest.approx(1.0, abs=1e-12)


def test_subtracted_distribution_vs_m():
    table = run_figure("3a").table
    for row in table.rows:
        m = row[0]
        if m > 0:
            assert all(v == 0 for v in row[1 + 5 - m + 1 : 7])
    assert table.rows[-1][1] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("fid,level", [("1b", "P5"), ("3b", "P4")])
def test_distribution_vs_lambda_concentrates(fid, level):
    table = run_figure(fid).table
    assert len(table.rows) == len(LAMBDA_AXIS)
    assert column(table, level)[-1] > 0.99


@pytest.mark.parametrize("fid,kind", [("2", "added"), ("4", "subtracted")])
def test_mean_curves(fid, kind):
    table = run_figure(fid).table
    for m in range(5):
        vals = column(table, f"mean[m={m}]")
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        limit = 5.0 if kind == "added" else 5.0 - m
        assert vals[-1] == pytest.approx(limit, rel=0.01)
    # fixed-lambda ordering across m
    first = [column(table, f"mean[m={m}]")[0] for m in range(5)]
    if kind == "added":
        assert all(b > a for a, b in zip(first, first[1:]))
    else:
        assert all(b < a for a, b in zip(first, first[1:]))


def test_mandel_panels():
    added = run_figure("5a").table
    subtracted = run_figure("5b").table
    for table in (added, subtracted):
        for m in (0, 5, 10):
            qs = column(table, f"mandel[m={m}]")
            assert all(q < 0 for q in qs)
            assert all(b < a for a, b in zip(qs, qs[1:]))
            assert qs[-1] == pytest.approx(-1.0, abs=0.05)
    # adding photons pushes Q further down at any curvature
    for i in (0, len(LAMBDA_AXIS) - 1):
        row = {m: column(added, f"mandel[m={m}]")[i] for m in (0, 5, 10)}
        assert row[10] < row[5] < row[0]
    # subtracting photons lifts Q, at small and large curvature alike
    for i in (0, len(LAMBDA_AXIS) - 1):
        row = {m: column(subtracted, f"mandel[m={m}]")[i] for m in (0, 5, 10)}
        assert row[10] > row[5] > row[0]


def test_phase_panels_layout():
    for fid in ("6a", "6b", "8a", "8b"):
        table = run_figure(fid).table
        assert len(table.rows) == 201
        assert table.rows[0][0] == 0.0
        assert table.rows[-1][0] == pytest.approx(2 * np.pi)


def test_quadrature_components_are_quarter_turn_twins():
    s1 = run_figure("6a").table
    s2 = run_figure("6b").table
    # the phi grid contains phi + pi/2 for each phi in its first three quarters
    vals1 = column(s1, "s1[m=5]")
    vals2 = column(s2, "s2[m=5]")
    assert min(vals1) == pytest.approx(min(vals2), abs=1e-9)


def test_squeezing_by_m_panels_orderings():
    added = run_figure("6a").table
    mins = {m: min(column(added, f"s1[m={m}]")) for m in (0, 5, 10)}
    # adding photons deepens the quadrature noise minimum here
    assert mins[5] < mins[0]
    subtracted = run_figure("8a").table
    mins = {m: min(column(subtracted, f"s1[m={m}]")) for m in (0, 5, 10)}
    # subtracting photons makes the minimum shallower, monotonically
    assert mins[0] < mins[5] < mins[10]


@pytest.mark.parametrize("fid", ["7a", "7b", "9a", "9b"])
def test_squeezing_by_lambda_panels_deepen(fid):
    table = run_figure(fid).table
    comp = "s1" if fid.endswith("a") else "s2"
    mins = [min(column(table, f"{comp}[lambda={lam:g}]")) for lam in (0.0, 0.1, 0.2)]
    assert mins[0] > mins[1] > mins[2]


def test_every_panel_renders_finite_csv():
    for fid in ALL_IDS:
        res = run_figure(fid)
        assert res.csv.startswith(",".join(res.table.columns))
        for row in res.table.rows:
            for cell in row:
                if isinstance(cell, float):
                    assert np.isfinite(cell)
