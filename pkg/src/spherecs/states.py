"""Coherent states on the sphere and their photon-added/subtracted variants.

All four families live in the same finite Fock space.  Amplitudes are
assembled in log space (log magnitude plus unit phase) and exponentiated only
after the normalization sum has been max-shifted, so large cutoffs and strong
deformations do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import logsumexp

from .algebra import (
    ModelParams,
    StateVector,
    _g_factorial_logs,
    apply_lower,
    apply_raise,
    chi,
    deformation_g,
)

__all__ = [
    "StateKind",
    "StateSpec",
    "DegenerateInputError",
    "build_state",
    "state_by_ladder",
]


class StateKind(str, Enum):
    SPHERE_CS = "sphere-cs"
    FLAT_CS = "flat-cs"
    PHOTON_ADDED = "pacs"
    PHOTON_SUBTRACTED = "pscs"


class DegenerateInputError(ValueError):
    """The requested state does not exist (e.g. subtracting from vacuum)."""


_LADDER_KINDS = (StateKind.PHOTON_ADDED, StateKind.PHOTON_SUBTRACTED)


@dataclass(frozen=True)
class StateSpec:
    """Recipe for one state.

    Attributes:
        kind: which family to build.
        params: curvature and cutoff of the underlying model.
        mu: complex coherent-state label; its modulus sets the mean photon
            number, its phase is imprinted verbatim on the amplitudes.
        added_or_subtracted: how many photons are added (or subtracted) on
            top of the base coherent state; must stay 0 for the plain
            coherent-state kinds.
    """

    kind: StateKind
    params: ModelParams
    mu: complex
    added_or_subtracted: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", StateKind(self.kind))
        object.__setattr__(self, "mu", complex(self.mu))
        m = self.added_or_subtracted
        if not isinstance(m, (int, np.integer)):
            raise ValueError(f"added_or_subtracted must be an integer, got {m!r}")
        m = int(m)
        object.__setattr__(self, "added_or_subtracted", m)
        if m < 0 or m > self.params.cutoff:
            raise ValueError(
                f"added_or_subtracted={m} outside 0..{self.params.cutoff}"
            )
        if self.kind not in _LADDER_KINDS and m != 0:
            raise ValueError(f"{self.kind.value} does not take photon operations")


def _log_binomial(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _log_chi_product_added(params: ModelParams, n: int, m: int) -> float:
    # chi(n) * chi(n-1) * ... * chi(n-m+1), in logs
    return sum(math.log(chi(params, n - j)) for j in range(m))


def _log_chi_g_product_subtracted(params: ModelParams, n: int, m: int) -> float:
    # [chi(n+1) g(n+1)] * ... * [chi(n+m) g(n+m)], in logs
    total = 0.0
    for j in range(1, m + 1):
        total += math.log(chi(params, n + j)) + math.log(deformation_g(params, n + j))
    return total


def _mu_split(mu: complex) -> tuple[float, complex]:
    r = abs(mu)
    if r == 0.0:
        return -math.inf, 1.0 + 0.0j
    return math.log(r), mu / r


def _log_weights(spec: StateSpec) -> tuple[np.ndarray, np.ndarray]:
    """Per-level log magnitudes (-inf off support) and unit phases."""
    params = spec.params
    ncut, dim = params.cutoff, params.dim
    m = spec.added_or_subtracted
    log_r, unit = _mu_split(spec.mu)
    gfl = _g_factorial_logs(params)

    logw = np.full(dim, -math.inf)
    phases = np.ones(dim, dtype=np.complex128)

    def mu_part(power: int) -> float:
        # 0 * log(0) is an empty factor, not a NaN
        return 0.0 if power == 0 else power * log_r

    if spec.kind in (StateKind.SPHERE_CS, StateKind.FLAT_CS):
        for n in range(dim):
            logw[n] = 0.5 * _log_binomial(ncut, n) + mu_part(n)
            if spec.kind is StateKind.SPHERE_CS:
                logw[n] += gfl[n]
            phases[n] = unit**n
    elif spec.kind is StateKind.PHOTON_ADDED:
        for n in range(m, dim):
            logw[n] = (
                0.5 * _log_binomial(ncut, n - m)
                + mu_part(n - m)
                + gfl[n]
                + _log_chi_product_added(params, n, m)
            )
            phases[n] = unit ** (n - m)
    else:
        if spec.mu == 0 and m > 0:
            raise DegenerateInputError(
                "cannot subtract photons from the vacuum (mu = 0)"
            )
        for n in range(dim - m):
            logw[n] = (
                0.5 * _log_binomial(ncut, n + m)
                + mu_part(n + m)
                + gfl[n + m]
                + _log_chi_g_product_subtracted(params, n, m)
            )
            phases[n] = unit ** (n + m)
    return logw, phases


def build_state(spec: StateSpec) -> StateVector:
    """Build the normalized state directly from its closed-form amplitudes.

    Off-support amplitudes come out exactly zero: photon addition empties
    levels below m, subtraction empties levels above N - m.
    """
    logw, phases = _log_weights(spec)
    log_norm_sq = logsumexp(2.0 * logw)
    if not np.isfinite(log_norm_sq):
        raise DegenerateInputError(f"state {spec} has no support")
    amps = np.where(
        np.isfinite(logw), np.exp(logw - 0.5 * log_norm_sq), 0.0
    ) * phases
    return StateVector(spec.params, amps)


def state_by_ladder(spec: StateSpec) -> StateVector:
    """Build the same state by m explicit ladder applications to the base CS.

    Independent construction path used to cross-check build_state: start from
    the sphere coherent state and raise (or lower) m times, renormalizing.
    """
    if spec.kind not in _LADDER_KINDS:
        raise ValueError("ladder construction applies to the added/subtracted kinds")
    base = StateSpec(StateKind.SPHERE_CS, spec.params, spec.mu, 0)
    state = build_state(base)
    op = apply_raise if spec.kind is StateKind.PHOTON_ADDED else apply_lower
    for _ in range(spec.added_or_subtracted):
        state = op(spec.params, state)
        nrm = state.norm()
        if nrm == 0.0:
            raise DegenerateInputError(
                "ladder application annihilated the state"
            )
        state = StateVector(spec.params, state.amplitudes / nrm)
    return state
