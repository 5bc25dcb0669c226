"""Pseudo-random clocks, the unit-circle bijection, and a test battery.

A clock maps integer ticks deterministically to [0, 1).  Two schemes are
provided: the folded-sine generator u_i = frac(1000000 sin(i)) and a
counter-mode splitmix64 hash, which has the better statistical quality and
is the default for experiments.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
from scipy import stats

TAU_ROUNDTRIP_TOL = 1e-12
_TWO_PI = 2.0 * np.pi
_U64 = np.uint64
_MASK64 = _U64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_INV_2_64 = 2.0 ** -64

SCHEMES = ("sine_fold", "counter_hash")


def sine_fold(i):
    """Fractional part of 1000000*sin(i), elementwise; values in [0, 1)."""
    x = 1_000_000.0 * np.sin(np.asarray(i, dtype=float))
    out = x - np.floor(x)
    return float(out) if np.ndim(i) == 0 else out


def _splitmix64(counter: np.ndarray) -> np.ndarray:
    """Finalizer of splitmix64 applied to a uint64 counter array."""
    z = (counter * _GOLDEN) & _MASK64
    z = ((z ^ (z >> _U64(30))) * _MIX1) & _MASK64
    z = ((z ^ (z >> _U64(27))) * _MIX2) & _MASK64
    return z ^ (z >> _U64(31))


def counter_hash(seed_offset, index):
    """Splitmix64 output for stream `seed_offset` at `index`, scaled to [0,1)."""
    seed = np.asarray(seed_offset, dtype=np.int64).astype(np.uint64)
    idx = np.asarray(index, dtype=np.int64).astype(np.uint64)
    with np.errstate(over="ignore"):
        z = _splitmix64((seed + idx * _GOLDEN) & _MASK64)
    out = z.astype(float) * _INV_2_64
    return float(out) if np.ndim(index) == 0 else out


def tau(xi):
    """Bijection [0,1) -> unit circle, xi |-> exp(2*pi*i*xi)."""
    x = np.asarray(xi, dtype=float)
    if np.any(x < 0.0) or np.any(x >= 1.0):
        raise ValueError("tau expects values in [0, 1)")
    out = np.exp(2j * np.pi * x)
    return complex(out) if np.ndim(xi) == 0 else out


def tau_inverse(z):
    """Inverse of tau on the unit circle; returns a value in [0, 1)."""
    if np.ndim(z) == 0:
        xi = cmath.phase(complex(z)) / _TWO_PI % 1.0
        return 0.0 if xi >= 1.0 else xi
    xi = np.mod(np.angle(z) / _TWO_PI, 1.0)
    return np.where(xi >= 1.0, 0.0, xi)


@dataclass(frozen=True)
class PhaseClock:
    """Deterministic tick -> [0,1) map; tau of it gives a phase per tick."""

    scheme: str = "counter_hash"
    seed_offset: int = 0
    tick_scale: int = 1

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.tick_scale < 1:
            raise ValueError("tick_scale must be a positive integer")

    def value(self, tick: int) -> float:
        return clock_value(self, tick)

    def values(self, ticks) -> np.ndarray:
        return clock_values(self, ticks)

    def phase(self, tick: int) -> complex:
        """chi_tau(tick) = tau(chi(tick))."""
        xi = clock_value(self, tick)
        return complex(cmath.exp(2j * cmath.pi * xi))


def _counter_hash_scalar(seed_offset: int, index: int) -> float:
    # pure-int splitmix64; bit-identical to the vectorized counter_hash
    mask = 0xFFFFFFFFFFFFFFFF
    z = ((seed_offset + index * 0x9E3779B97F4A7C15) & mask) * 0x9E3779B97F4A7C15 & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    z ^= z >> 31
    return z * _INV_2_64


def clock_value(clock: PhaseClock, tick: int) -> float:
    if clock.scheme == "sine_fold":
        return sine_fold(clock.seed_offset + tick * clock.tick_scale)
    return _counter_hash_scalar(clock.seed_offset, tick * clock.tick_scale)


def clock_values(clock: PhaseClock, ticks) -> np.ndarray:
    ticks = np.asarray(ticks, dtype=np.int64)
    if clock.scheme == "sine_fold":
        return sine_fold(clock.seed_offset + ticks * clock.tick_scale)
    return counter_hash(clock.seed_offset, ticks * np.int64(clock.tick_scale))


@dataclass(frozen=True)
class WeightedClock:
    """Weighted mean of two clock streams, folded back into [0,1)."""

    first: PhaseClock
    second: PhaseClock
    weight: float = 0.5  # weight of `first`; the other gets 1 - weight

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError("weight must lie in [0, 1]")

    def value(self, tick: int) -> float:
        return float(self.values(np.asarray([tick]))[0])

    def values(self, ticks) -> np.ndarray:
        mixed = self.weight * clock_values(self.first, ticks) + (1.0 - self.weight) * clock_values(self.second, ticks)
        return mixed - np.floor(mixed)


@dataclass(frozen=True)
class TestResult:
    name: str
    statistic: float
    p_value: float
    passed: bool


@dataclass(frozen=True)
class BatteryReport:
    results: tuple
    n: int
    alpha: float

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "all_passed": self.all_passed,
            "tests": [
                {
                    "name": r.name,
                    "statistic": r.statistic,
                    "p_value": r.p_value,
                    "passed": r.passed,
                }
                for r in self.results
            ],
        }


MIN_BATTERY_N = 10_000


def _chi_square_uniformity(u: np.ndarray) -> tuple:
    bins = 1000
    counts = np.bincount((u * bins).astype(int), minlength=bins)
    stat, p = stats.chisquare(counts)
    return float(stat), float(p)


def _serial_correlation(u: np.ndarray) -> tuple:
    x, y = u[:-1], u[1:]
    r = float(np.corrcoef(x, y)[0, 1])
    # under the null, r*sqrt(n) is asymptotically standard normal
    z = r * np.sqrt(len(x))
    p = 2.0 * stats.norm.sf(abs(z))
    return r, float(p)


def _monobit(u: np.ndarray) -> tuple:
    # leading bit of each value: 1 iff u >= 0.5
    n = len(u)
    ones = int(np.count_nonzero(u >= 0.5))
    z = (ones - 0.5 * n) / np.sqrt(0.25 * n)
    p = 2.0 * stats.norm.sf(abs(z))
    return float(z), float(p)


def _gap_test(u: np.ndarray) -> tuple:
    # gaps between successive visits to [0, 0.5); gap length is geometric(1/2)
    hits = np.flatnonzero(u < 0.5)
    if len(hits) < 2:
        return float("inf"), 0.0
    gaps = np.diff(hits) - 1
    max_gap = 15  # tail bin collects everything longer
    observed = np.bincount(np.minimum(gaps, max_gap), minlength=max_gap + 1)
    m = len(gaps)
    probs = 0.5 ** (np.arange(max_gap + 1) + 1)
    probs[-1] = 0.5 ** max_gap  # tail mass P(gap >= max_gap)
    stat, p = stats.chisquare(observed, f_exp=m * probs)
    return float(stat), float(p)


def _kolmogorov_smirnov(u: np.ndarray) -> tuple:
    stat, p = stats.kstest(u, "uniform")
    return float(stat), float(p)


_BATTERY = (
    ("chi_square_uniformity", _chi_square_uniformity),
    ("serial_correlation_lag1", _serial_correlation),
    ("monobit_frequency", _monobit),
    ("gap_below_half", _gap_test),
    ("kolmogorov_smirnov", _kolmogorov_smirnov),
)


def run_battery(stream, alpha: float = 0.001) -> BatteryReport:
    """Run the five-test qualification battery on a [0,1)-valued stream."""
    u = np.asarray(stream, dtype=float)
    n = len(u)
    if n < MIN_BATTERY_N:
        raise ValueError(f"battery needs at least {MIN_BATTERY_N} values, got {n}")
    if np.any(u < 0.0) or np.any(u >= 1.0):
        raise ValueError("stream values must lie in [0, 1)")
    results = []
    for name, fn in _BATTERY:
        stat, p = fn(u)
        results.append(TestResult(name=name, statistic=stat, p_value=p, passed=p >= alpha))
    return BatteryReport(results=tuple(results), n=n, alpha=alpha)
