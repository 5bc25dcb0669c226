"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class ZeroNormError(ValueError):
    """A vector with (numerically) vanishing norm cannot be normalized."""


class NonHermitianError(ValueError):
    """Matrix handed to the spectral machinery is not Hermitian."""


class NonCommutingError(ValueError):
    """Two observables of a composite fail to commute."""

    def __init__(self, i, j, commutator_norm):
        self.i = i
        self.j = j
        self.commutator_norm = commutator_norm
        super().__init__(
            f"observables {i} and {j} do not commute "
            f"(max commutator entry {commutator_norm:.3e})"
        )


class ProbabilityError(ValueError):
    """Outcome probabilities are inconsistent (broken projector family)."""
