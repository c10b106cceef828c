"""Numerical check that a state family resolves the identity operator.

The angular integral is analytic (off-diagonal elements vanish exactly), so
only the radial integral over x = |mu|^2 is done numerically.  Two measures
are supported: the exact flat-limit measure, whose diagonal must come out as
all ones, and a literal reading of the deformed measure, which is known to be
inconsistent and is therefore only reported, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import logsumexp

from .algebra import LogWeight, ModelParams, _g_factorial_logs
from .states import (
    StateKind,
    _log_binomial,
    _log_chi_g_product_subtracted,
    _log_chi_product_added,
)

__all__ = [
    "MeasureKind",
    "MeasureMode",
    "ResolutionReport",
    "QuadratureError",
    "deformed_binomial_sum",
    "resolution_matrix",
]

_PANEL_CAP = 10_000
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


class MeasureKind(str, Enum):
    FLAT_EXACT = "flat"
    LITERAL = "literal"


@dataclass(frozen=True)
class MeasureMode:
    """Choice of radial measure.

    The exponent is the power applied to the deformed binomial sum in the
    literal measure's denominator; the flat-exact measure has its own fixed
    form and ignores it.
    """

    kind: MeasureKind
    exponent: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "kind", MeasureKind(self.kind))
        object.__setattr__(self, "exponent", float(self.exponent))


@dataclass(frozen=True)
class ResolutionReport:
    """Outcome of the over-completeness check.

    matrix is diagonal by construction (angular orthogonality is analytic),
    diag_deviation collects |diag - 1| over the populated levels only, and
    quadrature_error_estimate is the largest last refinement step.
    """

    matrix: np.ndarray
    max_offdiag: float
    diag_deviation: np.ndarray
    quadrature_error_estimate: float
    support: tuple[int, int]


class QuadratureError(RuntimeError):
    """Radial integration failed to converge; carries the partial report."""

    def __init__(self, message: str, report: ResolutionReport | None = None):
        super().__init__(message)
        self.report = report


def _ladder_kind(kind: StateKind) -> StateKind:
    kind = StateKind(kind)
    if kind not in (StateKind.PHOTON_ADDED, StateKind.PHOTON_SUBTRACTED):
        raise ValueError("identity check covers the added/subtracted kinds")
    return kind


def _weight_terms(
    params: ModelParams, m: int, kind: StateKind
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Log coefficients and x-exponents of the unnormalized squared weights.

    Weight n is exp(coef[n]) * x**expo[n]; levels outside the support are
    omitted.  Returns (levels, coef, expo).
    """
    if m < 0 or m > params.cutoff:
        raise ValueError(f"m={m} outside 0..{params.cutoff}")
    gfl = _g_factorial_logs(params)
    ncut = params.cutoff
    if kind is StateKind.PHOTON_ADDED:
        levels = np.arange(m, ncut + 1)
        coef = np.array(
            [
                _log_binomial(ncut, n - m)
                + 2.0 * gfl[n]
                + 2.0 * _log_chi_product_added(params, n, m)
                for n in levels
            ]
        )
        expo = levels - m
    else:
        levels = np.arange(0, ncut - m + 1)
        coef = np.array(
            [
                _log_binomial(ncut, n + m)
                + 2.0 * gfl[n + m]
                + 2.0 * _log_chi_g_product_subtracted(params, n, m)
                for n in levels
            ]
        )
        expo = levels + m
    return levels, coef, expo


def deformed_binomial_sum(
    params: ModelParams, m: int, kind: StateKind, x: float
) -> LogWeight:
    """Log of the deformed binomial sum at x = |mu|^2.

    This is exactly the normalization constant of the corresponding state
    family; in the flat limit with m = 0 it collapses to (1 + x)^N.
    """
    kind = _ladder_kind(kind)
    if not (x >= 0.0):
        raise ValueError(f"x must be >= 0, got {x}")
    _, coef, expo = _weight_terms(params, m, kind)
    if x == 0.0:
        terms = np.where(expo == 0, coef, -math.inf)
    else:
        terms = coef + expo * math.log(x)
    return LogWeight(float(logsumexp(terms)))


def _integrate_half_line(log_f, tolerance: float):
    """Adaptive integral of exp(log_f(x)) over x in [0, inf).

    Maps the half line onto t in [0, 1) via x = t / (1 - t) and applies
    panel-based 15-point Gauss-Legendre, doubling the panel count until two
    successive estimates differ by less than the tolerance.  Returns
    (value, last_difference, converged).
    """

    def estimate(n_panels: int) -> float:
        edges = np.linspace(0.0, 1.0, n_panels + 1)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            half = 0.5 * (b - a)
            t = half * _GL_NODES + 0.5 * (a + b)
            x = t / (1.0 - t)
            vals = np.exp(log_f(x) - 2.0 * np.log1p(-t))
            total += half * float(np.dot(_GL_WEIGHTS, vals))
        return total

    prev = estimate(1)
    n_panels = 2
    diff = math.inf
    while n_panels <= _PANEL_CAP:
        cur = estimate(n_panels)
        diff = abs(cur - prev)
        if diff < tolerance:
            return cur, diff, True
        prev = cur
        n_panels *= 2
    return prev, diff, False


def resolution_matrix(
    params: ModelParams,
    m: int,
    kind: StateKind,
    measure: MeasureMode,
    radial_tolerance: float = 1e-9,
) -> ResolutionReport:
    """Assemble the (N+1) x (N+1) resolution-of-identity matrix.

    Computes (N+1) * integral of weight_n(x) / norm(x)^(exponent+1) dx for
    every populated level n; a perfect over-complete family gives the
    identity matrix.  Raises QuadratureError (with the partial report
    attached) if any level fails to converge within the panel cap.
    """
    kind = _ladder_kind(kind)
    if radial_tolerance <= 0.0:
        raise ValueError("radial_tolerance must be positive")
    if measure.kind is MeasureKind.FLAT_EXACT:
        if params.curvature != 0.0 or m != 0:
            raise ValueError("the exact flat measure requires curvature 0 and m = 0")

    levels, coef, expo = _weight_terms(params, m, kind)
    ncut = params.cutoff
    support = (int(levels[0]), int(levels[-1]))

    def make_log_f(idx: int):
        if measure.kind is MeasureKind.FLAT_EXACT:
            n = int(levels[idx])
            lb = _log_binomial(ncut, n)

            def log_f(x: np.ndarray) -> np.ndarray:
                return lb + n * np.log(x) - (ncut + 2.0) * np.log1p(x)

        else:
            power = measure.exponent + 1.0

            def log_f(x: np.ndarray) -> np.ndarray:
                lx = np.log(x)
                log_norm = logsumexp(
                    coef[None, :] + expo[None, :] * lx[:, None], axis=1
                )
                return coef[idx] + expo[idx] * lx - power * log_norm

        return log_f

    diag = np.zeros(params.dim)
    deviation = np.full(len(levels), np.nan)
    worst = 0.0
    for idx, n in enumerate(levels):
        value, diff, converged = _integrate_half_line(
            make_log_f(idx), radial_tolerance
        )
        diag[n] = (ncut + 1) * value
        deviation[idx] = abs(diag[n] - 1.0)
        worst = max(worst, diff)
        if not converged:
            partial = ResolutionReport(
                matrix=np.diag(diag),
                max_offdiag=0.0,
                diag_deviation=deviation,
                quadrature_error_estimate=worst,
                support=support,
            )
            raise QuadratureError(
                f"radial integral for level {n} still off by {diff:.3e} "
                f"after {_PANEL_CAP} panels",
                report=partial,
            )
    return ResolutionReport(
        matrix=np.diag(diag),
        max_offdiag=0.0,
        diag_deviation=deviation,
        quadrature_error_estimate=worst,
        support=support,
    )
