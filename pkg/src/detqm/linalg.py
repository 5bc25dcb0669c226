"""Dense complex vector/matrix arithmetic for small Hilbert spaces.

Matrices are plain 2-d complex numpy arrays; state vectors carry a birth
tick because the global phase set at creation time is physically meaningful
here.  Everything is double precision and dense -- target dimensions are
tiny (the EPR model lives in dimension 4).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from detqm.errors import DimensionMismatchError, ZeroNormError

NORM_TOL = 1e-12


def as_complex_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError("vector has non-finite entries")
    return arr


def as_complex_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError("matrix has non-finite entries")
    return arr


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex vector together with the tick it was (re)born at."""

    amplitudes: np.ndarray
    birth_tick: int = 0

    def __post_init__(self):
        arr = as_complex_vector(self.amplitudes)
        object.__setattr__(self, "amplitudes", arr)
        nrm = np.linalg.norm(arr)
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {nrm} deviates from 1 by more than {NORM_TOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def _trusted(cls, amplitudes: np.ndarray, birth_tick: int) -> "StateVector":
        """Skip validation for vectors that are unit-norm by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "amplitudes", amplitudes)
        object.__setattr__(obj, "birth_tick", birth_tick)
        return obj


def inner_product(x, y) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    xv = x.amplitudes if isinstance(x, StateVector) else as_complex_vector(x)
    yv = y.amplitudes if isinstance(y, StateVector) else as_complex_vector(y)
    if xv.shape != yv.shape:
        raise DimensionMismatchError(f"inner product of dim {xv.shape[0]} with dim {yv.shape[0]}")
    return complex(np.vdot(xv, yv))


def tensor_product(m1, m2) -> np.ndarray:
    """Kronecker product; row/column dimensions multiply."""
    return np.kron(as_complex_matrix(m1), as_complex_matrix(m2))


def apply(m, v) -> np.ndarray:
    """Matrix-vector product m @ v."""
    mm = as_complex_matrix(m)
    vv = v.amplitudes if isinstance(v, StateVector) else as_complex_vector(v)
    if mm.shape[1] != vv.shape[0]:
        raise DimensionMismatchError(f"matrix is {mm.shape}, vector has dim {vv.shape[0]}")
    return mm @ vv


def normalize(v, birth_tick: int = 0) -> StateVector:
    """Scale v to unit norm; a vanishing input signals a zero projection."""
    vv = v.amplitudes if isinstance(v, StateVector) else as_complex_vector(v)
    nrm = np.linalg.norm(vv)
    if nrm <= NORM_TOL:
        raise ZeroNormError(f"vanishing projection: norm {nrm} <= {NORM_TOL}")
    return StateVector._trusted(vv / nrm, birth_tick)
