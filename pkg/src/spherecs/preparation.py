"""Synthesis of cavity preparation sequences for arbitrary finite states.

A two-level atom crosses the cavity once per step; step k turns a state with
support 0..k-1 into one with support 0..k, conditioned on detecting the atom
in its ground state.  Walking the recursion backwards from the target, each
step's atomic amplitude epsilon is a root of a characteristic polynomial, so
a K-photon target costs exactly K conditioned crossings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .algebra import ModelParams, StateVector
from .states import StateSpec
from .tables import format_cell

__all__ = [
    "RootPolicy",
    "PreparationStep",
    "PreparationPlan",
    "SimulationResult",
    "ScheduleError",
    "SynthesisError",
    "NumericalError",
    "SimulationError",
    "forward_step",
    "excited_branch",
    "characteristic_polynomial",
    "synthesize_plan",
    "simulate_plan",
    "plan_csv",
]

_COS_FLOOR = 1e-6
_ROOT_FLOOR = 1e-12
_RESIDUAL_TOL = 1e-10
_SUPPORT_TRIM = 1e-13


class ScheduleError(RuntimeError):
    """An interaction-time schedule hits a trigonometric zero."""


class SynthesisError(RuntimeError):
    """No usable polynomial root: the target cannot be reached this way."""


class NumericalError(RuntimeError):
    """Root polishing failed to reach the residual tolerance."""


class SimulationError(RuntimeError):
    """A simulated step produced a zero ground-branch amplitude."""


class RootPolicy(str, Enum):
    MAX_SUCCESS = "max-success"
    SMALLEST_MAGNITUDE = "smallest-magnitude"


@dataclass(frozen=True)
class PreparationStep:
    index: int
    epsilon: complex
    g_tau: float
    ground_prob: float


@dataclass(frozen=True)
class PreparationPlan:
    """Ordered atom injections that build the target from the vacuum."""

    steps: tuple[PreparationStep, ...]
    target: StateVector
    success_probability: float


@dataclass(frozen=True)
class SimulationResult:
    final: StateVector
    fidelity: float
    success_probability: float


def _trig_tables(g_tau: float, top: int) -> tuple[list[float], list[float]]:
    sines = [math.sin(g_tau * math.sqrt(n)) for n in range(top + 1)]
    cosines = [math.cos(g_tau * math.sqrt(n)) for n in range(top + 1)]
    return sines, cosines


def forward_step(state: StateVector, epsilon: complex, g_tau: float) -> StateVector:
    """Ground-state branch of one atom crossing.  Output is not normalized.

    Level n receives sin(g_tau sqrt(n)) of level n-1 and -epsilon
    cos(g_tau sqrt(n)) of itself, so support grows by exactly one level.
    """
    dim = state.params.dim
    amps = state.amplitudes
    if amps[-1] != 0.0:
        raise ValueError("top level occupied: one more step would leave the space")
    sq = np.sqrt(np.arange(dim))
    out = -epsilon * np.cos(g_tau * sq) * amps
    out[1:] = out[1:] + np.sin(g_tau * sq[1:]) * amps[:-1]
    return StateVector(state.params, out)


def excited_branch(state: StateVector, epsilon: complex, g_tau: float) -> StateVector:
    """Excited-state branch of the same crossing (unnormalized).

    Together with forward_step it forms a unitary: the squared norms of the
    two branches add up to (1 + |epsilon|^2) times the input norm.
    """
    dim = state.params.dim
    amps = state.amplitudes
    sq_up = np.sqrt(np.arange(1, dim + 1))
    out = np.cos(g_tau * sq_up) * amps
    out[:-1] = out[:-1] + epsilon * np.sin(g_tau * sq_up[:-1]) * amps[1:]
    return StateVector(state.params, out)


def _top_support(amps: np.ndarray) -> int:
    mags = np.abs(amps)
    peak = float(mags.max())
    if peak == 0.0:
        raise ValueError("zero state has no support")
    idx = np.nonzero(mags > _SUPPORT_TRIM * peak)[0]
    return int(idx[-1])


def _characteristic_coeffs(amps: np.ndarray, k: int, g_tau: float) -> np.ndarray:
    sines, cosines = _trig_tables(g_tau, k)
    for n in range(1, k):
        if abs(cosines[n]) < _COS_FLOOR:
            raise ScheduleError(
                f"cos(g_tau sqrt({n})) = {cosines[n]:.2e} is too close to zero; "
                "perturb g_tau"
            )
    # p_n(eps) tracks the scaled backward amplitudes as polynomials in eps
    p = np.array([-amps[0]], dtype=np.complex128)
    for n in range(1, k):
        q = np.zeros(n + 1, dtype=np.complex128)
        q[:n] = sines[n] * p
        q[n] = -amps[n]
        p = q / cosines[n]
    coeffs = np.zeros(k + 1, dtype=np.complex128)
    coeffs[:k] = -sines[k] * p
    coeffs[k] = coeffs[k] + amps[k]
    return coeffs


def characteristic_polynomial(state_k: StateVector, g_tau: float) -> np.ndarray:
    """Coefficients (ascending powers) of the step polynomial in epsilon.

    The state's top occupied level fixes the degree; every root is a valid
    atomic amplitude for the final crossing that produces this state.
    """
    k = _top_support(state_k.amplitudes)
    if k == 0:
        raise ValueError("state with support {0} needs no step")
    return _characteristic_coeffs(state_k.amplitudes, k, g_tau)


def _back_substitute(
    amps: np.ndarray, k: int, epsilon: complex, g_tau: float
) -> np.ndarray:
    sines, cosines = _trig_tables(g_tau, k)
    psi = np.zeros(len(amps), dtype=np.complex128)
    psi[0] = -amps[0] / epsilon
    for n in range(1, k):
        psi[n] = (sines[n] * psi[n - 1] - amps[n]) / (epsilon * cosines[n])
    return psi


def _polish_root(coeffs: np.ndarray, z: complex, scale: float) -> complex:
    dcoeffs = npoly.polyder(coeffs)
    for _ in range(40):
        val = npoly.polyval(z, coeffs)
        if abs(val) < 1e-15 * scale:
            break
        dval = npoly.polyval(z, dcoeffs)
        if dval == 0.0:
            break
        step = val / dval
        z = z - step
        if abs(step) < 1e-16 * (1.0 + abs(z)):
            break
    return z


def _normalize_schedule(
    schedule: Sequence[float] | float | None, top: int
) -> list[float]:
    if schedule is None:
        values = [1.0] * top
    elif isinstance(schedule, (int, float)):
        values = [float(schedule)] * top
    else:
        values = [float(g) for g in schedule]
        if len(values) < top:
            raise ValueError(f"schedule has {len(values)} entries, need {top}")
        values = values[:top]
    if any(g <= 0.0 for g in values):
        raise ValueError("interaction times must be positive")

    # keep every sine and cosine used by the recursions clear of zero,
    # nudging deterministically when a near-zero shows up
    for i in range(top):
        g = values[i]
        for _ in range(21):
            sines, cosines = _trig_tables(g, top)
            bad = any(abs(c) < _COS_FLOOR for c in cosines[1:top]) or any(
                abs(s) < _COS_FLOOR for s in sines[1 : top + 1]
            )
            if not bad:
                break
            g += 0.05
        else:
            raise ScheduleError("could not find a usable interaction time")
        values[i] = g
    return values


def synthesize_plan(
    target: StateVector,
    g_tau_schedule: Sequence[float] | float | None = None,
    root_policy: RootPolicy = RootPolicy.MAX_SUCCESS,
) -> PreparationPlan:
    """Work backwards from the target to a sequence of atom injections.

    Args:
        target: normalized state to prepare; its top occupied level K sets
            the number of steps.
        g_tau_schedule: per-step interaction times (scalar means uniform);
            default is the uniform schedule at 1.0.
        root_policy: how to pick among the polynomial roots of each step.

    Returns:
        A plan whose steps are listed in execution order, k = 1..K.

    Targets whose lowest occupied level lies above the vacuum (photon-added
    states, bare Fock states) force epsilon = 0 for the bottom steps; those
    atoms enter fully excited and simply climb the state one level.
    """
    nrm = target.norm()
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"target norm is {nrm}, expected 1")
    top = _top_support(target.amplitudes)
    if top == 0:
        return PreparationPlan(steps=(), target=target, success_probability=1.0)
    schedule = _normalize_schedule(g_tau_schedule, top)
    root_policy = RootPolicy(root_policy)

    current = np.array(target.amplitudes, dtype=np.complex128)
    steps: list[PreparationStep] = []
    for k in range(top, 0, -1):
        g_tau = schedule[k - 1]
        coeffs = _characteristic_coeffs(current, k, g_tau)
        scale = float(np.abs(coeffs).max())
        raw_roots = np.roots(coeffs[::-1])
        candidates = []
        polish_failed = 0
        for z in raw_roots:
            z = _polish_root(coeffs, complex(z), scale)
            if abs(z) < _ROOT_FLOOR:
                continue
            if abs(npoly.polyval(z, coeffs)) >= _RESIDUAL_TOL * scale:
                polish_failed += 1
                continue
            psi = _back_substitute(current, k, z, g_tau)
            nrm_sq = float(np.vdot(psi, psi).real)
            ground_prob = 1.0 / (nrm_sq * (1.0 + abs(z) ** 2))
            candidates.append((z, psi, nrm_sq, ground_prob))
        if candidates:
            if root_policy is RootPolicy.MAX_SUCCESS:
                key = lambda c: (-c[3], c[0].real, c[0].imag)
            else:
                key = lambda c: (abs(c[0]), c[0].real, c[0].imag)
            z, psi, nrm_sq, ground_prob = min(candidates, key=key)
        elif polish_failed:
            raise NumericalError(
                f"step {k}: no root reached residual {_RESIDUAL_TOL:g}"
            )
        elif abs(current[0]) < _ROOT_FLOOR:
            # All roots collapse to the origin exactly when the ground level
            # is empty.  epsilon = 0 is then the legitimate choice: the atom
            # enters fully excited and the crossing is a plain one-level
            # transfer, whose backward image divides out the sines.
            sines, _ = _trig_tables(g_tau, k)
            psi = np.zeros_like(current)
            psi[:k] = current[1 : k + 1] / np.asarray(sines[1 : k + 1])
            z = 0j
            nrm_sq = float(np.vdot(psi, psi).real)
            ground_prob = 1.0 / nrm_sq
        else:
            raise SynthesisError(
                f"step {k}: every root is numerically zero; the target cannot "
                "be reached through a ground-state-conditioned sequence"
            )
        steps.append(
            PreparationStep(index=k, epsilon=z, g_tau=g_tau, ground_prob=ground_prob)
        )
        current = psi / math.sqrt(nrm_sq)

    steps.reverse()
    # The backward recursion estimates each step probability through the
    # polynomial root, which carries the residual error.  Rerunning the plan
    # forward from the vacuum (the same loop simulate_plan uses) makes the
    # recorded numbers exact for the plan as it will actually execute.
    state = np.zeros(target.params.dim, dtype=np.complex128)
    state[0] = 1.0
    success = 1.0
    for i, step in enumerate(steps):
        out = forward_step(StateVector(target.params, state), step.epsilon, step.g_tau)
        nrm_sq = float(np.vdot(out.amplitudes, out.amplitudes).real)
        ground_prob = nrm_sq / (1.0 + abs(step.epsilon) ** 2)
        steps[i] = PreparationStep(
            index=step.index,
            epsilon=step.epsilon,
            g_tau=step.g_tau,
            ground_prob=ground_prob,
        )
        success *= ground_prob
        state = out.amplitudes / math.sqrt(nrm_sq)
    return PreparationPlan(
        steps=tuple(steps), target=target, success_probability=success
    )


def simulate_plan(plan: PreparationPlan) -> SimulationResult:
    """Run the plan forward from the vacuum and compare against its target."""
    params = plan.target.params
    state = np.zeros(params.dim, dtype=np.complex128)
    state[0] = 1.0
    success = 1.0
    for step in plan.steps:
        out = forward_step(StateVector(params, state), step.epsilon, step.g_tau)
        nrm_sq = float(np.vdot(out.amplitudes, out.amplitudes).real)
        if nrm_sq <= 0.0:
            raise SimulationError(f"step {step.index} extinguished the state")
        success *= nrm_sq / (1.0 + abs(step.epsilon) ** 2)
        state = out.amplitudes / math.sqrt(nrm_sq)
    final = StateVector(params, state)
    fidelity = plan.target.fidelity(final)
    return SimulationResult(
        final=final, fidelity=fidelity, success_probability=success
    )


def plan_csv(spec: StateSpec, plan: PreparationPlan, fidelity: float) -> str:
    """Serialize a plan: a metadata comment line, then one row per step."""
    params = spec.params
    meta = ", ".join(
        [
            f"kind={spec.kind.value}",
            f"N={params.cutoff}",
            f"lambda={format_cell(params.curvature)}",
            f"mu_re={format_cell(spec.mu.real)}",
            f"mu_im={format_cell(spec.mu.imag)}",
            f"m={spec.added_or_subtracted}",
            f"fidelity={format_cell(fidelity)}",
            f"success_probability={format_cell(plan.success_probability)}",
        ]
    )
    lines = [f"# {meta}", "k,eps_re,eps_im,g_tau,p_g"]
    for step in plan.steps:
        lines.append(
            ",".join(
                [
                    str(step.index),
                    format_cell(step.epsilon.real),
                    format_cell(step.epsilon.imag),
                    format_cell(step.g_tau),
                    format_cell(step.ground_prob),
                ]
            )
        )
    return "\n".join(lines) + "\n"
