"""Acceptance suite: one test per top-level criterion, with a printed verdict."""

import math
import time

import numpy as np
from click.testing import CliRunner
from conftest import random_commuting_composite, random_hermitian, random_unit_vector

from detqm.cli import main as cli_main
from detqm.epr import build_model, exact_correlation, run_epr, spin_operators
from detqm.linalg import StateVector, normalize
from detqm.randomness import PhaseClock, clock_values, run_battery, tau
from detqm.selector import (
    SelectorBasis,
    joint_distribution,
    measure_sequence,
    rebirth_outcome_counts,
    theta,
)
from detqm.spectral import spectral_decompose


def verdict(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"{name} failed: {detail}"


def test_perfect_anticorrelation():
    start = time.perf_counter()
    m = build_model(0.7, 0.7)
    trace = run_epr(m, PhaseClock(seed_offset=1), n=10_000)
    elapsed = time.perf_counter() - start
    structural = all(a == -b for a, b in trace.samples)
    exact_minus_one = trace.final_c == -1.0
    verdict(
        "perfect-anticorrelation",
        structural and exact_minus_one and elapsed < 5.0,
        f"(10000 samples, c={trace.final_c}, {elapsed:.2f}s)",
    )


def test_closed_form_correlation(rng):
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        t1, t2 = rng.uniform(-2 * math.pi, 2 * math.pi, size=2)
        worst = max(worst, abs(exact_correlation(build_model(t1, t2)) + math.cos(t1 - t2)))
    elapsed = time.perf_counter() - start
    verdict("closed-form-correlation", worst <= 1e-10 and elapsed < 1.0, f"(worst={worst:.2e}, {elapsed:.2f}s)")


def test_statistical_convergence():
    start = time.perf_counter()
    n = 50_000
    clock = PhaseClock(scheme="counter_hash", seed_offset=7)
    worst_ratio = 0.0
    for delta_deg in (0, 30, 60, 90, 120, 150, 180):
        delta = math.radians(delta_deg)
        trace = run_epr(build_model(delta, 0.0), clock, n=n)
        bound = 4 * math.sqrt((1 - math.cos(delta) ** 2) / n) + 0.005
        dev = abs(trace.final_c + math.cos(delta))
        worst_ratio = max(worst_ratio, dev / bound)
        assert dev <= bound, (delta_deg, dev, bound)
    elapsed = time.perf_counter() - start
    verdict("statistical-convergence", worst_ratio <= 1.0 and elapsed < 60.0, f"(worst dev/bound={worst_ratio:.2f}, {elapsed:.1f}s)")


def test_image_measure_exactness(rng):
    n = 100_000
    basis_cache = {}
    worst_interval = 0.0
    worst_ratio = 0.0
    clock = PhaseClock(seed_offset=5)
    for case in range(500):
        dim = int(rng.integers(2, 9))
        c = random_commuting_composite(rng, dim)
        psi = random_unit_vector(rng, dim)
        dist = joint_distribution(c, psi)
        worst_interval = max(worst_interval, float(np.max(np.abs(np.diff(dist.boundaries) - dist.probs))))
        counts = rebirth_outcome_counts(c, psi, clock, case * n, n)
        for outcome, p in zip(dist.outcomes, dist.probs):
            bound = 4 * math.sqrt(max(p * (1 - p), 0.0) / n)
            dev = abs(counts[outcome] / n - p)
            if bound > 0:
                worst_ratio = max(worst_ratio, dev / bound)
            else:
                assert dev <= 1e-12
        # the bulk path above is validated against the per-step path here
        if case < 3:
            basis = basis_cache.setdefault(dim, SelectorBasis.standard(dim))
            records = measure_sequence(c, psi, clock, case * n, 2000, basis, rebirth=True)
            step_counts = {}
            for r in records:
                step_counts[r.outcome] = step_counts.get(r.outcome, 0) + 1
            fast = rebirth_outcome_counts(c, psi, clock, case * n, 2000)
            assert step_counts == {k: v for k, v in fast.items() if v}
    verdict(
        "image-measure-exactness",
        worst_interval <= 1e-9 and worst_ratio <= 1.0,
        f"(interval err={worst_interval:.2e}, worst freq dev/bound={worst_ratio:.2f})",
    )


def test_determinism(tmp_path):
    runner = CliRunner()
    args = ["epr", "run", "--theta1", "25", "--theta2", "-10", "--n", "2000", "--seed", "11"]
    paths = [tmp_path / "t1.csv", tmp_path / "t2.csv"]
    for p in paths:
        result = runner.invoke(cli_main, args + ["--out", str(p)])
        assert result.exit_code == 0, result.output
    files_identical = paths[0].read_bytes() == paths[1].read_bytes()

    m = build_model(0.4, 0.0)
    basis = SelectorBasis.standard(4)
    clock = PhaseClock(seed_offset=2)
    sequences_identical = True
    for rebirth in (True, False):
        r1 = measure_sequence(m.composite, m.singlet, clock, 0, 500, basis, rebirth=rebirth)
        r2 = measure_sequence(m.composite, m.singlet, clock, 0, 500, basis, rebirth=rebirth)
        sequences_identical &= all(
            a.outcome == b.outcome
            and a.probability == b.probability
            and np.array_equal(a.collapsed.amplitudes, b.collapsed.amplitudes)
            for a, b in zip(r1, r2)
        )
    verdict("determinism", files_identical and sequences_identical, "(byte-identical traces, bit-identical records)")


def test_theta_equivariance_and_chaining(rng):
    worst_equi = 0.0
    for _ in range(1000):
        dim = int(rng.integers(2, 9))
        basis = SelectorBasis.standard(dim)
        psi = random_unit_vector(rng, dim)
        omega = complex(tau(float(rng.uniform(0, 1))))
        worst_equi = max(
            worst_equi, abs(theta(basis, StateVector(omega * psi.amplitudes)) - omega * theta(basis, psi))
        )

    worst_chain = 0.0
    checked = 0
    while checked < 1000:
        dim = int(rng.integers(2, 9))
        c = random_commuting_composite(rng, dim)
        psi = random_unit_vector(rng, dim)
        dist = joint_distribution(c, psi, zero_tol=1e-6)
        for outcome in dist.outcomes:
            pa = c.parts[0].projector_for(outcome[0])
            qb = c.parts[1].projector_for(outcome[1])
            two_step = normalize(pa @ normalize(qb @ psi.amplitudes).amplitudes).amplitudes
            one_step = normalize(pa @ (qb @ psi.amplitudes)).amplitudes
            worst_chain = max(worst_chain, float(np.max(np.abs(two_step - one_step))))
            checked += 1
            if checked >= 1000:
                break
    verdict(
        "theta-equivariance-and-chaining",
        worst_equi <= 1e-12 and worst_chain <= 1e-12,
        f"(equivariance={worst_equi:.2e}, chaining={worst_chain:.2e})",
    )


def test_spectral_integrity(rng):
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(2, 9))
        obs = spectral_decompose(random_hermitian(rng, dim))
        worst = max(worst, obs.reconstruction_error())
        total = np.zeros((dim, dim), dtype=complex)
        for i, p in enumerate(obs.projectors):
            worst = max(worst, float(np.max(np.abs(p @ p - p))))
            worst = max(worst, float(np.max(np.abs(p - p.conj().T))))
            for q in obs.projectors[i + 1:]:
                worst = max(worst, float(np.max(np.abs(p @ q))))
            total += p
        worst = max(worst, float(np.max(np.abs(total - np.eye(dim)))))

    s2 = spectral_decompose(spin_operators()["S2"], snap=(0.0, 2.0))
    ranks = [int(round(np.trace(p).real)) for p in s2.projectors]
    s2_ok = s2.spectrum == (0.0, 2.0) and ranks == [1, 3]
    verdict("spectral-integrity", worst <= 1e-10 and s2_ok, f"(worst={worst:.2e}, S2 ranks={ranks})")


def test_rng_battery():
    start = time.perf_counter()
    all_ok = True
    details = []
    for scheme in ("sine_fold", "counter_hash"):
        clock = PhaseClock(scheme=scheme, seed_offset=0)
        stream = clock_values(clock, np.arange(1, 1_000_001))
        report = run_battery(stream, alpha=0.001)
        all_ok &= report.all_passed and len(report.results) == 5
        details.append(f"{scheme}={'pass' if report.all_passed else 'FAIL'}")
    elapsed = time.perf_counter() - start
    verdict("rng-battery", all_ok and elapsed < 30.0, f"({', '.join(details)}, {elapsed:.1f}s)")
