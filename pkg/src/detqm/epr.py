"""Two-spin EPR model: singlet state, rotated spin observables, correlation.

The composite observable measures the x-spin of each particle after
rotating both measurement directions about z; for the singlet the exact
spin-spin correlation is -cos(theta1 - theta2), and the deterministic
measurement loop reproduces it statistically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from detqm.linalg import StateVector, normalize, tensor_product
from detqm.randomness import PhaseClock
from detqm.selector import SelectorBasis, measure_sequence
from detqm.spectral import CompositeObservable, Observable, compose, spectral_decompose

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

WINDOW = 200  # rolling correlation window shown by the explorer


def spin_operators() -> dict:
    """The dimension-4 spin operators: per-particle s, totals S, and S^2."""
    s = {"x": SIGMA_X / 2, "y": SIGMA_Y / 2, "z": SIGMA_Z / 2}
    ops = {}
    for axis, m in s.items():
        ops[f"s{axis}1"] = tensor_product(m, IDENTITY_2)
        ops[f"s{axis}2"] = tensor_product(IDENTITY_2, m)
        ops[f"S{axis}"] = ops[f"s{axis}1"] + ops[f"s{axis}2"]
    ops["S2"] = sum(ops[f"S{axis}"] @ ops[f"S{axis}"] for axis in "xyz")
    return ops


def rotation(theta1: float, theta2: float) -> np.ndarray:
    """U(theta1, theta2) = exp(i*theta1*s_z) (x) exp(i*theta2*s_z), in closed form."""
    def half(theta):
        return np.diag([np.exp(1j * theta / 2), np.exp(-1j * theta / 2)])

    return tensor_product(half(theta1), half(theta2))


def singlet_state(birth_tick: int = 0) -> StateVector:
    """Unit vector in the 1-dimensional eigenvalue-0 subspace of S^2."""
    s2 = spectral_decompose(spin_operators()["S2"], snap=(0.0, 2.0))
    p0 = s2.projectors[s2.spectrum.index(0.0)]
    # pick the column with the largest norm as a representative of the range
    col = int(np.argmax(np.linalg.norm(p0, axis=0)))
    return normalize(p0[:, col], birth_tick=birth_tick)


@dataclass(frozen=True)
class EprModel:
    theta1: float  # radians
    theta2: float
    singlet: StateVector
    observable_a: Observable
    observable_b: Observable
    composite: CompositeObservable = field(repr=False)


def build_model(theta1: float, theta2: float, clock: PhaseClock | None = None, birth_tick: int = 0) -> EprModel:
    """Rotated x-spin observables for both particles plus the singlet state.

    The singlet's eigensolver phase is arbitrary; it is re-phased per tick by
    the measurement loop, so no convention leaks into results.
    """
    ops = spin_operators()
    u = rotation(theta1, theta2)
    a_matrix = u @ ops["sx1"] @ u.conj().T
    b_matrix = u @ ops["sx2"] @ u.conj().T
    obs_a = spectral_decompose(a_matrix, snap=(-0.5, 0.5))
    obs_b = spectral_decompose(b_matrix, snap=(-0.5, 0.5))
    psi = singlet_state(birth_tick=birth_tick)
    if clock is not None:
        from detqm.selector import birth_phase

        psi = birth_phase(psi.amplitudes, clock, birth_tick, SelectorBasis.standard(4))
    return EprModel(
        theta1=theta1,
        theta2=theta2,
        singlet=psi,
        observable_a=obs_a,
        observable_b=obs_b,
        composite=compose([obs_a, obs_b]),
    )


def exact_correlation(m: EprModel) -> float:
    """<psi, AB psi> / (sqrt(<psi, A^2 psi>) * sqrt(<psi, B^2 psi>))."""
    v = m.singlet.amplitudes
    a, b = m.observable_a.matrix, m.observable_b.matrix
    num = np.vdot(v, a @ (b @ v)).real
    den = math.sqrt(np.vdot(v, a @ (a @ v)).real) * math.sqrt(np.vdot(v, b @ (b @ v)).real)
    return float(num / den)


@dataclass(frozen=True)
class CorrelationTrace:
    """Measurement samples with the running correlation coefficient."""

    samples: tuple  # (a_j, b_j) pairs, values in {-1/2, +1/2}
    c_values: np.ndarray
    metadata: dict

    @property
    def window(self) -> np.ndarray:
        """Most recent 200 running-correlation values."""
        return self.c_values[-WINDOW:]

    @property
    def final_c(self) -> float:
        return float(self.c_values[-1])


def running_correlation(samples) -> np.ndarray:
    """Zero-mean correlation coefficient after each sample.

    c_i = sum(a_j*b_j) / (sqrt(sum(a_j^2)) * sqrt(sum(b_j^2))), evaluated in
    full even though it reduces to the mean of 4*a_j*b_j for half-integer
    spins.
    """
    arr = np.asarray(samples, dtype=float)
    ab = np.cumsum(arr[:, 0] * arr[:, 1])
    a2 = np.cumsum(arr[:, 0] ** 2)
    b2 = np.cumsum(arr[:, 1] ** 2)
    # sqrt of the product (== sqrt(a2)*sqrt(b2)) keeps perfect
    # anti-correlation at exactly -1 for half-integer samples
    return ab / np.sqrt(a2 * b2)


def run_epr(
    m: EprModel,
    clock: PhaseClock,
    start_tick: int = 0,
    n: int = 1000,
    basis: SelectorBasis | None = None,
) -> CorrelationTrace:
    """Rebirth-mode measurement loop over the composite (A, B)."""
    if basis is None:
        basis = SelectorBasis.standard(4)
    records = measure_sequence(m.composite, m.singlet, clock, start_tick, n, basis, rebirth=True)
    samples = tuple((r.outcome[0], r.outcome[1]) for r in records)
    c_values = running_correlation(samples)
    metadata = {
        "theta1_deg": math.degrees(m.theta1),
        "theta2_deg": math.degrees(m.theta2),
        "theta1_rad": m.theta1,
        "theta2_rad": m.theta2,
        "clock_scheme": clock.scheme,
        "seed_offset": clock.seed_offset,
        "tick_scale": clock.tick_scale,
        "start_tick": start_tick,
        "n": n,
        "basis": basis.label,
        "exact_correlation": exact_correlation(m),
    }
    return CorrelationTrace(samples=samples, c_values=c_values, metadata=metadata)


def arrow_endpoints(sample, theta1: float, theta2: float):
    """Planar endpoints of the red (a) and green (b) arrows.

    The pi/2 offset makes theta = 0 point vertically rather than
    horizontally.
    """
    a, b = sample
    red = (a * math.cos(theta1 + math.pi / 2), a * math.sin(theta1 + math.pi / 2))
    green = (b * math.cos(theta2 + math.pi / 2), b * math.sin(theta2 + math.pi / 2))
    return red, green


def write_trace_csv(path, trace: CorrelationTrace) -> None:
    """CSV rows step,a,b,c with a JSON metadata header comment line."""
    lines = ["# " + json.dumps(trace.metadata, sort_keys=True), "step,a,b,c"]
    for i, ((a, b), c) in enumerate(zip(trace.samples, trace.c_values), start=1):
        lines.append(f"{i},{a:g},{b:g},{c:.12g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trace_csv(path) -> CorrelationTrace:
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("# "):
            raise ValueError("missing metadata header line")
        metadata = json.loads(header[2:])
        fh.readline()  # column header
        samples = []
        cs = []
        for line in fh:
            _, a, b, c = line.strip().split(",")
            samples.append((float(a), float(b)))
            cs.append(float(c))
    return CorrelationTrace(samples=tuple(samples), c_values=np.array(cs), metadata=metadata)
