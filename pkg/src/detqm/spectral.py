"""Spectral representation of Hermitian observables and composites.

An observable is kept as its matrix plus the finite spectrum and the
orthogonal projector family; nearby eigenvalues are clustered back into a
single spectrum point because numerical eigensolvers split degenerate
eigenvalues at roundoff scale.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from detqm.errors import DimensionMismatchError, NonCommutingError, NonHermitianError
from detqm.linalg import as_complex_matrix

HERMITIAN_TOL = 1e-10
COMMUTATION_TOL = 1e-10
DEFAULT_DEGENERACY_TOL = 1e-8


def _max_abs(m) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


@dataclass(frozen=True)
class Observable:
    """Hermitian matrix with ascending finite spectrum and projectors."""

    matrix: np.ndarray
    spectrum: tuple
    projectors: tuple

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def projector_for(self, value) -> np.ndarray:
        try:
            idx = self.spectrum.index(value)
        except ValueError:
            raise ValueError(f"{value} is not in the spectrum {self.spectrum}") from None
        return self.projectors[idx]

    def reconstruction_error(self) -> float:
        recon = sum(a * p for a, p in zip(self.spectrum, self.projectors))
        return _max_abs(self.matrix - recon)


def spectral_decompose(m, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL, snap=None) -> Observable:
    """Eigendecompose a Hermitian matrix into clustered spectrum + projectors.

    Eigenvalues within `degeneracy_tol` of each other form one cluster whose
    representative is the cluster mean, optionally snapped to the closest
    value in `snap` (exact outcome values keep lexicographic ordering stable
    downstream).  The projector of a cluster is the orthogonal projector onto
    the span of its eigenvectors.
    """
    mm = as_complex_matrix(m)
    if mm.shape[0] != mm.shape[1]:
        raise NonHermitianError(f"matrix is not square: {mm.shape}")
    if degeneracy_tol <= 0:
        raise ValueError("degeneracy_tol must be positive")
    herm_err = _max_abs(mm - mm.conj().T)
    if herm_err > HERMITIAN_TOL:
        raise NonHermitianError(f"max |m - m^H| = {herm_err:.3e} > {HERMITIAN_TOL}")

    evals, evecs = np.linalg.eigh(mm)  # ascending eigenvalues

    # greedy clustering of the sorted eigenvalues
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[clusters[-1][-1]] <= degeneracy_tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    spectrum = []
    projectors = []
    for idx in clusters:
        rep = float(np.mean(evals[idx]))
        if snap is not None:
            candidates = list(snap)
            rep = float(min(candidates, key=lambda s: abs(rep - s)))
        vecs = evecs[:, idx]
        projectors.append(vecs @ vecs.conj().T)
        spectrum.append(rep)
    return Observable(matrix=mm, spectrum=tuple(spectrum), projectors=tuple(projectors))


@dataclass(frozen=True)
class CompositeObservable:
    """Ordered list of pairwise commuting observables; outcomes are tuples."""

    parts: tuple
    _joint_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    @property
    def outcome_space(self) -> list:
        """Full cartesian product of the spectra, lexicographically ordered."""
        return list(itertools.product(*(obs.spectrum for obs in self.parts)))

    def joint_projectors(self) -> list:
        """(outcome, projector) pairs over the full outcome space, cached."""
        outcomes, stack = self.projector_stack()
        return [(o, stack[i]) for i, o in enumerate(outcomes)]

    def projector_stack(self) -> tuple:
        """Outcome tuples (lexicographic) and the stacked joint projectors."""
        cached = self._joint_cache.get("__stack__")
        if cached is None:
            outcomes = tuple(self.outcome_space)
            stack = np.stack([joint_projector(self, o) for o in outcomes])
            cached = (outcomes, stack)
            self._joint_cache["__stack__"] = cached
        return cached


def compose(parts) -> CompositeObservable:
    """Validate pairwise projector commutation and build the composite."""
    parts = tuple(parts)
    if len(parts) < 1:
        raise ValueError("composite observable needs at least one part")
    dim = parts[0].dim
    for obs in parts[1:]:
        if obs.dim != dim:
            raise DimensionMismatchError(f"observable dims differ: {dim} vs {obs.dim}")
    for i, j in itertools.combinations(range(len(parts)), 2):
        worst = 0.0
        for p in parts[i].projectors:
            for q in parts[j].projectors:
                worst = max(worst, _max_abs(p @ q - q @ p))
        if worst > COMMUTATION_TOL:
            raise NonCommutingError(i, j, worst)
    return CompositeObservable(parts=parts)


def joint_projector(c: CompositeObservable, outcome) -> np.ndarray:
    """Ordered product of the per-part projectors for an outcome tuple."""
    outcome = tuple(outcome)
    if len(outcome) != len(c.parts):
        raise ValueError(f"outcome has {len(outcome)} entries for {len(c.parts)} parts")
    if outcome in c._joint_cache:
        return c._joint_cache[outcome]
    result = None
    for obs, value in zip(c.parts, outcome):
        p = obs.projector_for(value)
        result = p if result is None else result @ p
    c._joint_cache[outcome] = result
    return result


def observable_to_json(obs: Observable) -> str:
    """Serialize as {"dim": n, "matrix": [[[re, im], ...], ...]}."""
    mat = [[[float(z.real), float(z.imag)] for z in row] for row in obs.matrix]
    return json.dumps({"dim": obs.dim, "matrix": mat})


def observable_from_json(text: str, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL, snap=None) -> Observable:
    """Load a matrix and recompute the spectral data (never trusted from file)."""
    data = json.loads(text)
    dim = int(data["dim"])
    mat = np.array([[complex(re, im) for re, im in row] for row in data["matrix"]])
    if mat.shape != (dim, dim):
        raise ValueError(f"matrix shape {mat.shape} does not match dim {dim}")
    return spectral_decompose(mat, degeneracy_tol=degeneracy_tol, snap=snap)
