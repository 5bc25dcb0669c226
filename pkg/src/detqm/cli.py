"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 model/commutation error, 4 I/O
error.  Every command taking a --seed is a pure function of its flags:
repeated invocation produces byte-identical output files.
"""

from __future__ import annotations

import functools
import json
import math
import sys

import click
import numpy as np

from detqm.epr import build_model, exact_correlation, run_epr, write_trace_csv
from detqm.errors import (
    DimensionMismatchError,
    NonCommutingError,
    NonHermitianError,
    ProbabilityError,
    ZeroNormError,
)
from detqm.randomness import MIN_BATTERY_N, PhaseClock, clock_values, run_battery
from detqm.selector import (
    SelectorBasis,
    collapse,
    joint_distribution,
    mu,
    state_from_json_dict,
    state_to_json_dict,
)
from detqm.spectral import compose, observable_from_json

EXIT_MODEL = 3
EXIT_IO = 4


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (NonCommutingError, NonHermitianError, ProbabilityError, DimensionMismatchError, ZeroNormError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_MODEL)
        except (OSError, json.JSONDecodeError) as exc:
            click.echo(f"i/o error: {exc}", err=True)
            sys.exit(EXIT_IO)

    return wrapper


@click.group()
def main():
    """Deterministic phase-selection quantum measurement engine."""


@main.group()
def epr():
    """Two-spin EPR singlet simulations."""


scheme_option = click.option(
    "--scheme",
    type=click.Choice(["sine_fold", "counter_hash"]),
    default="counter_hash",
    show_default=True,
    help="Pseudo-random clock scheme.",
)


@epr.command("run")
@click.option("--theta1", type=float, required=True, help="First measurement angle in degrees.")
@click.option("--theta2", type=float, required=True, help="Second measurement angle in degrees.")
@click.option("--n", type=int, default=1000, show_default=True, help="Number of samples.")
@click.option("--seed", type=int, default=0, show_default=True)
@scheme_option
@click.option("--start-tick", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV trace output path.")
@click.option("--json-out", type=click.Path(dir_okay=False), default=None, help="JSON trace output path.")
@click.option("--plot", type=click.Path(dir_okay=False), default=None, help="Render the correlation figure to this file.")
@_mapped_errors
def epr_run(theta1, theta2, n, seed, scheme, start_tick, out, json_out, plot):
    """Measure the singlet repeatedly and report the final correlation."""
    if n < 1:
        raise click.UsageError("--n must be at least 1")
    if not (math.isfinite(theta1) and math.isfinite(theta2)):
        raise click.UsageError("angles must be finite")
    clock = PhaseClock(scheme=scheme, seed_offset=seed)
    model = build_model(math.radians(theta1), math.radians(theta2))
    trace = run_epr(model, clock, start_tick=start_tick, n=n)
    exact = trace.metadata["exact_correlation"]
    if out:
        write_trace_csv(out, trace)
    if json_out:
        payload = {
            "metadata": trace.metadata,
            "samples": [[a, b] for a, b in trace.samples],
            "c_values": [float(c) for c in trace.c_values],
        }
        with open(json_out, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
    if plot:
        from detqm.report import correlation_figure

        correlation_figure(trace, plot)
    click.echo(f"samples:   {n}")
    click.echo(f"final c:   {trace.final_c:.12g}")
    click.echo(f"exact:     {exact:.12g}")
    click.echo(f"deviation: {abs(trace.final_c - exact):.12g}")


@epr.command("sweep")
@click.option("--delta", "deltas", type=float, multiple=True, help="Angle difference in degrees; repeatable.")
@click.option("--n", type=int, default=20000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@scheme_option
@click.option("--start-tick", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON results path.")
@click.option("--plot", type=click.Path(dir_okay=False), default=None, help="Render the sweep figure to this file.")
@_mapped_errors
def epr_sweep(deltas, n, seed, scheme, start_tick, out, plot):
    """Run one trace per angle difference and compare to -cos(delta)."""
    if not deltas:
        raise click.UsageError("at least one --delta is required")
    rows = []
    for delta in sorted(deltas):
        clock = PhaseClock(scheme=scheme, seed_offset=seed)
        model = build_model(math.radians(delta), 0.0)
        trace = run_epr(model, clock, start_tick=start_tick, n=n)
        exact = -math.cos(math.radians(delta))
        rows.append(
            {
                "delta_deg": delta,
                "c_final": trace.final_c,
                "exact": exact,
                "deviation": abs(trace.final_c - exact),
            }
        )
    click.echo(f"{'delta':>8}  {'c_final':>14}  {'-cos(delta)':>14}  {'deviation':>12}")
    for r in rows:
        click.echo(f"{r['delta_deg']:8.2f}  {r['c_final']:14.8f}  {r['exact']:14.8f}  {r['deviation']:12.3e}")
    if out:
        with open(out, "w") as fh:
            json.dump({"n": n, "seed": seed, "scheme": scheme, "rows": rows}, fh, sort_keys=True)
    if plot:
        from detqm.report import sweep_figure

        sweep_figure(rows, plot)


@main.command("measure")
@click.option("--state", "state_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option(
    "--observable",
    "observable_paths",
    type=click.Path(exists=True, dir_okay=False),
    multiple=True,
    required=True,
    help="Observable JSON file; repeatable, order defines the outcome tuple.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@scheme_option
@click.option("--tick", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Collapsed-state JSON output path.")
@_mapped_errors
def measure(state_path, observable_paths, seed, scheme, tick, out):
    """Deterministically measure a user-supplied state and observables."""
    with open(state_path) as fh:
        psi = state_from_json_dict(json.load(fh))
    observables = []
    for path in observable_paths:
        with open(path) as fh:
            observables.append(observable_from_json(fh.read()))
    composite = compose(observables)
    basis = SelectorBasis.standard(psi.dim)
    clock = PhaseClock(scheme=scheme, seed_offset=seed)
    outcome = mu(composite, psi, basis)
    dist = joint_distribution(composite, psi)
    probability = float(dist.probs[dist.outcomes.index(outcome)])
    record = collapse(composite, psi, outcome, clock, tick, basis)
    click.echo(f"outcome:     {list(outcome)}")
    click.echo(f"probability: {probability:.12g}")
    if out:
        with open(out, "w") as fh:
            json.dump(state_to_json_dict(record.collapsed), fh, sort_keys=True)


@main.group()
def rng():
    """Pseudo-random clock qualification."""


@rng.command("test")
@scheme_option
@click.option("--n", type=int, default=1_000_000, show_default=True)
@click.option("--alpha", type=float, default=0.001, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--json-out", type=click.Path(dir_okay=False), default=None)
@click.option("--plot", type=click.Path(dir_okay=False), default=None, help="Render the histogram figure to this file.")
@_mapped_errors
def rng_test(scheme, n, alpha, seed, json_out, plot):
    """Run the five-test statistical battery on a clock stream."""
    if n < MIN_BATTERY_N:
        raise click.UsageError(f"--n must be at least {MIN_BATTERY_N}")
    clock = PhaseClock(scheme=scheme, seed_offset=seed)
    stream = clock_values(clock, np.arange(1, n + 1))
    report = run_battery(stream, alpha=alpha)
    click.echo(f"{'test':<26} {'statistic':>14} {'p-value':>10}  verdict")
    for r in report.results:
        click.echo(f"{r.name:<26} {r.statistic:>14.4f} {r.p_value:>10.4f}  {'pass' if r.passed else 'FAIL'}")
    click.echo(f"overall: {'pass' if report.all_passed else 'FAIL'} at alpha={alpha:g}")
    click.echo(json.dumps(report.to_dict(), sort_keys=True))
    if json_out:
        with open(json_out, "w") as fh:
            json.dump(report.to_dict(), fh, sort_keys=True)
    if plot:
        from detqm.report import battery_figure

        battery_figure(stream, report, plot)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--max-sessions", type=int, default=64, show_default=True)
def serve(host, port, max_sessions):
    """Start the interactive explorer backend."""
    import uvicorn

    from detqm.service import create_app

    uvicorn.run(create_app(max_sessions=max_sessions), host=host, port=port)


if __name__ == "__main__":
    main()
