"""Deterministic phase-selection quantum measurement engine.

The measurement outcome is not drawn at random: it is computed from the
global phase of the state vector via an equivariant phase extractor and an
inverse-CDF step map over the Born probabilities.  Statistically the results
are indistinguishable from an orthodox quantum simulation, which is
demonstrated on the two-spin EPR singlet model.
"""

from detqm.linalg import StateVector, inner_product, tensor_product, apply, normalize
from detqm.spectral import Observable, CompositeObservable, spectral_decompose, compose, joint_projector
from detqm.randomness import PhaseClock, sine_fold, tau, tau_inverse, clock_value, run_battery
from detqm.selector import (
    OutcomeDistribution,
    SelectorBasis,
    MeasurementRecord,
    joint_distribution,
    rho,
    theta,
    mu,
    collapse,
    birth_phase,
    measure_sequence,
)
from detqm.epr import EprModel, CorrelationTrace, build_model, exact_correlation, run_epr, arrow_endpoints

__all__ = [
    "StateVector",
    "inner_product",
    "tensor_product",
    "apply",
    "normalize",
    "Observable",
    "CompositeObservable",
    "spectral_decompose",
    "compose",
    "joint_projector",
    "PhaseClock",
    "sine_fold",
    "tau",
    "tau_inverse",
    "clock_value",
    "run_battery",
    "OutcomeDistribution",
    "SelectorBasis",
    "MeasurementRecord",
    "joint_distribution",
    "rho",
    "theta",
    "mu",
    "collapse",
    "birth_phase",
    "measure_sequence",
    "EprModel",
    "CorrelationTrace",
    "build_model",
    "exact_correlation",
    "run_epr",
    "arrow_endpoints",
]

__version__ = "0.1.0"
