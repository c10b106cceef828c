"""Photon statistics and quadrature squeezing of finite Fock-space states.

Quadratures use the ordinary (undeformed) ladder operators: the states are
exact finite-support vectors in the usual infinite Fock space, so truncated
sums are exact, not approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .algebra import ModelParams, StateVector
from .states import (
    StateKind,
    StateSpec,
    DegenerateInputError,
    _log_binomial,
    _log_chi_g_product_subtracted,
    _log_chi_product_added,
)
from .algebra import _g_factorial_logs

__all__ = [
    "PhotonStatistics",
    "QuadratureReport",
    "photon_statistics",
    "closed_form_pdf",
    "quadrature_report",
    "min_squeezing",
]


@dataclass(frozen=True)
class PhotonStatistics:
    """Photon-number distribution and its first two moments.

    mandel_q is None when the mean vanishes (vacuum): the parameter is
    undefined there, and serializers must say so rather than emit NaN.
    """

    pdf: np.ndarray
    mean: float
    second_moment: float
    mandel_q: float | None


@dataclass(frozen=True)
class QuadratureReport:
    """Squeezing parameters s_i = 4 Var(X_i) - 1 at one quadrature phase."""

    phase: float
    s1: float
    s2: float
    variance1: float
    variance2: float


def photon_statistics(state: StateVector) -> PhotonStatistics:
    pdf = np.abs(state.amplitudes) ** 2
    levels = np.arange(state.params.dim)
    mean = float(np.dot(levels, pdf))
    second = float(np.dot(levels**2, pdf))
    if mean == 0.0:
        q = None
    else:
        q = (second - mean**2 - mean) / mean
    return PhotonStatistics(pdf=pdf, mean=mean, second_moment=second, mandel_q=q)


def closed_form_pdf(spec: StateSpec) -> np.ndarray:
    """Photon distribution of an added/subtracted state from its closed form.

    Evaluates the probability formula directly in log space, without going
    through amplitude construction, so it can serve as an independent check
    on the state builders.
    """
    if spec.kind not in (StateKind.PHOTON_ADDED, StateKind.PHOTON_SUBTRACTED):
        raise ValueError("closed-form distribution covers the added/subtracted kinds")
    params = spec.params
    ncut, dim = params.cutoff, params.dim
    m = spec.added_or_subtracted
    gfl = _g_factorial_logs(params)
    r = abs(spec.mu)
    log_r = -math.inf if r == 0.0 else math.log(r)

    logp = np.full(dim, -math.inf)
    if spec.kind is StateKind.PHOTON_ADDED:
        for n in range(m, dim):
            mu_term = 0.0 if n == m else 2.0 * (n - m) * log_r
            logp[n] = (
                _log_binomial(ncut, n - m)
                + mu_term
                + 2.0 * gfl[n]
                + 2.0 * _log_chi_product_added(params, n, m)
            )
    else:
        if r == 0.0 and m > 0:
            raise DegenerateInputError(
                "cannot subtract photons from the vacuum (mu = 0)"
            )
        for n in range(dim - m):
            logp[n] = (
                _log_binomial(ncut, n + m)
                + 2.0 * (n + m) * log_r
                + 2.0 * gfl[n + m]
                + 2.0 * _log_chi_g_product_subtracted(params, n, m)
            )
    log_total = logsumexp(logp)
    return np.where(np.isfinite(logp), np.exp(logp - log_total), 0.0)


def _quadrature_moments(state: StateVector) -> tuple[complex, complex, float]:
    """First two moments of the bare lowering operator, plus the mean number."""
    c = state.amplitudes
    n = np.arange(state.params.dim)
    a1 = complex(np.sum(np.sqrt(n[1:]) * np.conj(c[:-1]) * c[1:]))
    a2 = complex(np.sum(np.sqrt(n[2:] * (n[2:] - 1.0)) * np.conj(c[:-2]) * c[2:]))
    nbar = float(np.dot(n, np.abs(c) ** 2))
    return a1, a2, nbar


def _s_values(moments: tuple[complex, complex, float], phase: float) -> tuple[float, float, float, float]:
    a1, a2, nbar = moments
    rot = complex(math.cos(phase), math.sin(phase))
    m1 = a1 * rot
    t = (a2 * rot * rot).real
    var1 = (2.0 * t + 2.0 * nbar + 1.0) / 4.0 - m1.real**2
    var2 = (-2.0 * t + 2.0 * nbar + 1.0) / 4.0 - m1.imag**2
    return 4.0 * var1 - 1.0, 4.0 * var2 - 1.0, var1, var2


def quadrature_report(state: StateVector, phase: float) -> QuadratureReport:
    """Squeezing of the two rotated quadratures at a given phase.

    Negative s_i means noise below the vacuum level; both reach exactly 0 on
    the vacuum and 2n on a number state.
    """
    s1, s2, var1, var2 = _s_values(_quadrature_moments(state), phase)
    return QuadratureReport(phase=float(phase), s1=s1, s2=s2, variance1=var1, variance2=var2)


def min_squeezing(state: StateVector, grid_points: int = 256) -> tuple[float, float]:
    """Deepest squeezing over the quadrature phase.

    Scans a uniform phase grid, then sharpens the best grid point by
    golden-section search down to 1e-10 in phase.  Returns (phase, s) for
    min(s1, s2).  On a phase-independent landscape the smallest grid phase
    wins, so the vacuum reports phase 0.
    """
    if grid_points < 8:
        raise ValueError(f"need at least 8 grid points, got {grid_points}")
    moments = _quadrature_moments(state)

    def f(phi: float) -> float:
        s1, s2, _, _ = _s_values(moments, phi)
        return min(s1, s2)

    phis = np.linspace(0.0, 2.0 * math.pi, grid_points, endpoint=False)
    values = [f(p) for p in phis]
    best = int(np.argmin(values))
    step = 2.0 * math.pi / grid_points

    lo, hi = phis[best] - step, phis[best] + step
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 1e-10:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    refined = 0.5 * (a + b)
    refined_val = f(refined)
    if refined_val < values[best]:
        return refined % (2.0 * math.pi), refined_val
    return float(phis[best]), values[best]
