"""Deterministic outcome selection from the global phase.

The Born probabilities of a composite observable are laid out as a
half-open interval partition of [0,1) in lexicographic outcome order; the
phase extractor pulls a unit-modulus number out of the state vector, and
the measurement result is the interval that its angle lands in.  Collapse
re-phases the projected state to the clock phase of the measurement tick,
so every measurement freshly randomizes the hidden variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from detqm.errors import DimensionMismatchError, ProbabilityError, ZeroNormError
from detqm.linalg import StateVector, normalize
from detqm.randomness import PhaseClock, tau_inverse
from detqm.spectral import CompositeObservable, joint_projector

ZERO_TOL = 1e-12
IMAG_TOL = 1e-10
TOTAL_PROB_TOL = 1e-9
_TIE_REL = 1e-9  # squared-modulus tie detection threshold in theta


@dataclass(frozen=True)
class OutcomeDistribution:
    """Nonzero-probability outcomes with their cumulative interval partition.

    Interval i is [boundaries[i], boundaries[i+1]) and has length probs[i];
    the last boundary is snapped to exactly 1.
    """

    outcomes: tuple
    probs: np.ndarray
    boundaries: np.ndarray

    def __len__(self):
        return len(self.outcomes)


@dataclass(frozen=True)
class SelectorBasis:
    """Orthonormal basis the phase extractor scans; rows are basis vectors."""

    vectors: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        object.__setattr__(self, "vectors", v)
        gram = v.conj() @ v.T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > 1e-10:
            raise ValueError("selector basis is not orthonormal within 1e-10")
        object.__setattr__(self, "_identity", bool(np.array_equal(v, np.eye(v.shape[0]))))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def is_standard(self) -> bool:
        return self._identity

    @staticmethod
    def standard(dim: int) -> "SelectorBasis":
        return SelectorBasis(np.eye(dim, dtype=complex), label=f"standard-{dim}")


@dataclass(frozen=True)
class MeasurementRecord:
    outcome: tuple
    tick: int
    collapsed: StateVector
    probability: float

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "outcome": list(self.outcome),
            "probability": self.probability,
        }


def joint_distribution(c: CompositeObservable, psi: StateVector, zero_tol: float = ZERO_TOL) -> OutcomeDistribution:
    """Born probabilities over the outcome space, zeros dropped, lex order."""
    if psi.dim != c.dim:
        raise DimensionMismatchError(f"state dim {psi.dim} vs observable dim {c.dim}")
    outcomes, stack = c.projector_stack()  # outcomes are lexicographically ordered
    v = psi.amplitudes
    amplitudes = stack @ v  # (k, d)
    raw = (np.conj(v) @ amplitudes.T).tolist()  # <psi, Pi psi> per outcome
    kept_outcomes = []
    kept_probs = []
    boundaries = [0.0]
    total = 0.0
    running = 0.0
    for outcome, value in zip(outcomes, raw):
        if abs(value.imag) > IMAG_TOL:
            raise ProbabilityError(f"probability has imaginary part {value.imag:.3e} > {IMAG_TOL}")
        p = value.real
        total += p
        if p > zero_tol:
            kept_outcomes.append(outcome)
            kept_probs.append(p)
            running += p
            boundaries.append(running)
    if abs(total - 1.0) > TOTAL_PROB_TOL:
        raise ProbabilityError(f"probabilities sum to {total}, off by more than {TOTAL_PROB_TOL}")
    boundaries[-1] = 1.0
    return OutcomeDistribution(
        outcomes=tuple(kept_outcomes),
        probs=np.asarray(kept_probs),
        boundaries=np.asarray(boundaries),
    )


def rho(dist: OutcomeDistribution, xi: float):
    """Inverse-CDF step map: the outcome whose interval contains xi."""
    if not 0.0 <= xi < 1.0:
        raise ValueError("rho expects xi in [0, 1)")
    idx = int(np.searchsorted(dist.boundaries, xi, side="right")) - 1
    idx = min(idx, len(dist.outcomes) - 1)
    return dist.outcomes[idx]


def theta(basis: SelectorBasis, psi: StateVector) -> complex:
    """Equivariant phase extractor: theta(w*psi) = w*theta(psi).

    Scans the basis coefficients until their cumulative weight exceeds 1/2
    (strict), then returns the direction of the largest coefficient seen so
    far (ties broken by smallest index).
    """
    if basis.dim != psi.dim:
        raise DimensionMismatchError(f"basis dim {basis.dim} vs state dim {psi.dim}")
    coeffs = psi.amplitudes if basis.is_standard else basis.vectors.conj() @ psi.amplitudes
    partial = 0.0
    z = 0j
    best = -1.0
    for cv in coeffs.tolist():
        w = cv.real * cv.real + cv.imag * cv.imag
        # ties go to the smallest index; detected within a relative
        # tolerance so that multiplying psi by a unit-modulus factor
        # (which perturbs the computed moduli by ~1 ulp) cannot flip
        # the selection between mathematically equal coefficients
        if w > best * (1.0 + _TIE_REL):
            best = w
            z = cv
        partial += w
        if partial > 0.5:  # strict, exactly as the scan is defined
            return z / abs(z)
    # unreachable for unit vectors up to rounding; fall back to the best seen
    return z / abs(z)


def mu(c: CompositeObservable, psi: StateVector, basis: SelectorBasis):
    """Deterministic measurement result: rho at the angle of the state phase."""
    dist = joint_distribution(c, psi)
    return rho(dist, tau_inverse(theta(basis, psi)))


def birth_phase(psi_raw, clock: PhaseClock, tick: int, basis: SelectorBasis) -> StateVector:
    """Normalize and re-phase so the extracted phase equals the clock phase."""
    vec = psi_raw.amplitudes if isinstance(psi_raw, StateVector) else psi_raw
    if not isinstance(vec, np.ndarray) or vec.dtype != complex:
        unit = normalize(vec, birth_tick=tick)
    else:
        n2 = np.vdot(vec, vec).real
        if n2 <= 1e-24:
            raise ZeroNormError(f"vanishing input: squared norm {n2}")
        unit = StateVector._trusted(vec / math.sqrt(n2), tick)
    omega = clock.phase(tick) / theta(basis, unit)
    return StateVector._trusted(omega * unit.amplitudes, tick)


def collapse(
    c: CompositeObservable,
    psi: StateVector,
    outcome,
    clock: PhaseClock,
    tick: int,
    basis: SelectorBasis,
    zero_tol: float = ZERO_TOL,
) -> MeasurementRecord:
    """Project onto the outcome, normalize, and re-phase to the tick's phase."""
    outcome = tuple(outcome)
    pi = joint_projector(c, outcome)
    projected = pi @ psi.amplitudes
    p = float(np.vdot(psi.amplitudes, projected).real)
    if p <= zero_tol:
        raise ProbabilityError(f"outcome {outcome} has vanishing probability {p}")
    raw = StateVector._trusted(projected / math.sqrt(np.vdot(projected, projected).real), tick)
    omega = clock.phase(tick) / theta(basis, raw)
    collapsed = StateVector._trusted(omega * raw.amplitudes, tick)
    return MeasurementRecord(outcome=outcome, tick=tick, collapsed=collapsed, probability=p)


def measure_sequence(
    c: CompositeObservable,
    psi: StateVector,
    clock: PhaseClock,
    start_tick: int,
    n: int,
    basis: SelectorBasis,
    rebirth: bool = True,
) -> list:
    """Repeated deterministic measurement.

    In rebirth mode every step re-phases a fresh copy of the initial state at
    the current tick (repeated preparation of the same state); otherwise the
    collapsed state of the previous step is fed forward.
    """
    if n < 1:
        raise ValueError("need at least one measurement")
    records = []
    current = psi
    for tick in range(start_tick, start_tick + n):
        state = birth_phase(psi.amplitudes, clock, tick, basis) if rebirth else current
        outcome = mu(c, state, basis)
        record = collapse(c, state, outcome, clock, tick, basis)
        records.append(record)
        current = record.collapsed
    return records


def rebirth_outcome_counts(
    c: CompositeObservable,
    psi: StateVector,
    clock: PhaseClock,
    start_tick: int,
    n: int,
) -> dict:
    """Outcome counts of n rebirth-mode measurements, computed in bulk.

    Re-phasing only multiplies the state by a unit-modulus factor, which
    leaves the outcome distribution unchanged and (by equivariance) makes the
    extracted phase exactly the clock phase, so the per-tick result reduces
    to the step map applied to the raw clock value.  Bit-level agreement with
    measure_sequence is covered by tests.
    """
    dist = joint_distribution(c, normalize(psi.amplitudes))
    xis = clock.values(np.arange(start_tick, start_tick + n))
    idx = np.searchsorted(dist.boundaries, xis, side="right") - 1
    idx = np.minimum(idx, len(dist.outcomes) - 1)
    counts = np.bincount(idx, minlength=len(dist.outcomes))
    return {outcome: int(k) for outcome, k in zip(dist.outcomes, counts)}


def state_to_json_dict(psi: StateVector) -> dict:
    return {
        "dim": psi.dim,
        "amplitudes": [[float(z.real), float(z.imag)] for z in psi.amplitudes],
        "birth_tick": psi.birth_tick,
    }


def state_from_json_dict(data: dict) -> StateVector:
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    if len(amps) != int(data["dim"]):
        raise ValueError("amplitude count does not match dim")
    return StateVector(amps, birth_tick=int(data.get("birth_tick", 0)))
