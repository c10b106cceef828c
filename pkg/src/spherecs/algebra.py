"""Deformed ladder-operator algebra for a harmonic oscillator on a sphere.

An oscillator living on a sphere of curvature ``lam`` (1/R^2) behaves like a
nonlinear oscillator whose ladder operators carry a number-dependent
deformation factor.  Its Fock space is finite: occupation numbers run from 0
to the cutoff ``N`` and the raising operator annihilates the top state, so
every state is an (N+1)-component complex vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "LogWeight",
    "StateVector",
    "deformation_g",
    "g_factorial_log",
    "chi",
    "apply_raise",
    "apply_lower",
    "commutator_diagonal",
]


@dataclass(frozen=True)
class ModelParams:
    """Geometry of the model: sphere curvature and Fock-space cutoff.

    Attributes:
        curvature: deformation strength ``lam >= 0``; 0 recovers the flat
            (undeformed, su(2)-like) limit.
        cutoff: highest occupation number ``N >= 1``; the space has N+1 levels.
    """

    curvature: float
    cutoff: int

    def __post_init__(self):
        if not isinstance(self.cutoff, (int, np.integer)):
            raise ValueError(f"cutoff must be an integer, got {self.cutoff!r}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        if not (self.curvature >= 0.0):
            raise ValueError(f"curvature must be >= 0, got {self.curvature}")
        object.__setattr__(self, "curvature", float(self.curvature))
        object.__setattr__(self, "cutoff", int(self.cutoff))

    @property
    def dim(self) -> int:
        return self.cutoff + 1


@dataclass(frozen=True)
class LogWeight:
    """A nonnegative magnitude kept in log space, with its unit phase.

    Represents ``phase * exp(log_magnitude)``.  Sums of these must be
    exponentiated only after a max-log shift (see the state builders).
    """

    log_magnitude: float
    phase: complex = 1.0 + 0.0j

    @property
    def value(self) -> complex:
        return self.phase * math.exp(self.log_magnitude)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the Fock basis |0>..|N> of a fixed model."""

    params: ModelParams
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.params.dim,):
            raise ValueError(
                f"expected {self.params.dim} amplitudes, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize a zero state")
        return StateVector(self.params, self.amplitudes / nrm)

    def overlap(self, other: "StateVector") -> complex:
        if other.params.dim != self.params.dim:
            raise ValueError("overlap requires states of equal dimension")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        return abs(self.overlap(other))


def _check_level(params: ModelParams, n: int, upper: int) -> int:
    if not isinstance(n, (int, np.integer)):
        raise ValueError(f"level index must be an integer, got {n!r}")
    if n < 0 or n > upper:
        raise ValueError(f"level index {n} outside 0..{upper}")
    return int(n)


def _g_squared(lam: float, ncut: int, n: int) -> float:
    # valid for 0 <= n <= N+1; callers guarantee the range
    s = math.sqrt(1.0 + 0.5 * lam * lam)
    return (lam * (ncut + 1 - n) + s) * (lam * n + s)


def deformation_g(params: ModelParams, n: int) -> float:
    """Deformation factor g(lam, n); identically 1 in the flat limit."""
    n = _check_level(params, n, params.cutoff)
    return math.sqrt(_g_squared(params.curvature, params.cutoff, n))


def g_factorial_log(params: ModelParams, n: int) -> LogWeight:
    """Log of the deformation factorial g(1)*g(2)*...*g(n); empty product at n=0."""
    n = _check_level(params, n, params.cutoff)
    total = 0.0
    for k in range(1, n + 1):
        total += math.log(deformation_g(params, k))
    return LogWeight(total)


def _g_factorial_logs(params: ModelParams) -> np.ndarray:
    """Cumulative log deformation factorials for n = 0..N."""
    logs = np.zeros(params.dim)
    acc = 0.0
    for n in range(1, params.dim):
        acc += math.log(deformation_g(params, n))
        logs[n] = acc
    return logs


def chi(params: ModelParams, n: int) -> float:
    """Undeformed ladder coefficient sqrt(n * (N + 1 - n)).

    Vanishes at n = 0 and n = N + 1, which is what truncates the space.
    """
    n = _check_level(params, n, params.cutoff + 1)
    return math.sqrt(n * (params.cutoff + 1 - n))


def _ladder_coeffs(params: ModelParams) -> np.ndarray:
    # c[k] = g(k) * chi(k): the matrix element <k| raise |k-1>
    return np.array(
        [0.0] + [deformation_g(params, k) * chi(params, k) for k in range(1, params.dim)]
    )


def apply_raise(params: ModelParams, state: StateVector) -> StateVector:
    """Apply the deformed raising operator.  Output is not normalized."""
    if state.params != params:
        raise ValueError("state was built for different model parameters")
    c = _ladder_coeffs(params)
    out = np.zeros(params.dim, dtype=np.complex128)
    # the |N> component maps to chi(N+1) = 0, so it simply drops out
    out[1:] = c[1:] * state.amplitudes[:-1]
    return StateVector(params, out)


def apply_lower(params: ModelParams, state: StateVector) -> StateVector:
    """Apply the deformed lowering operator.  Output is not normalized."""
    if state.params != params:
        raise ValueError("state was built for different model parameters")
    c = _ladder_coeffs(params)
    out = np.zeros(params.dim, dtype=np.complex128)
    out[:-1] = c[1:] * state.amplitudes[1:]
    return StateVector(params, out)


def commutator_diagonal(params: ModelParams, n: int) -> float:
    """Diagonal element <n|[A, A+]|n> of the deformed commutator.

    Equals (n+1) f(n+1)^2 - n f(n)^2 with f(n)^2 = (N + 1 - n) g(lam, n)^2.
    Reduces to N - 2n in the flat limit, which is the su(2) signature: the
    commutator is not 1, even undeformed, because the space is finite.
    """
    n = _check_level(params, n, params.cutoff)
    lam, ncut = params.curvature, params.cutoff

    def fs2(k: int) -> float:
        if k == ncut + 1:
            return 0.0
        return (ncut + 1 - k) * _g_squared(lam, ncut, k)

    return (n + 1) * fs2(n + 1) - n * fs2(n)
