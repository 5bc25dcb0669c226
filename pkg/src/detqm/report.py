"""Matplotlib figures rendered to files alongside the delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from detqm.epr import CorrelationTrace


def correlation_figure(trace: CorrelationTrace, path) -> None:
    """Running correlation vs sample index, with the exact value as a line."""
    exact = trace.metadata.get("exact_correlation")
    fig, ax = plt.subplots(figsize=(8, 4.5))
    steps = np.arange(1, len(trace.c_values) + 1)
    ax.plot(steps, trace.c_values, color="#8b5a2b", linewidth=0.8, label="running correlation")
    if exact is not None:
        ax.axhline(exact, color="tab:blue", linewidth=1.2, label=f"exact = {exact:.6f}")
    ax.set_ylim(-1.05, 1.05)
    ax.set_xlabel("sample")
    ax.set_ylabel("spin-spin correlation")
    ax.set_title(
        "theta1 = {theta1_deg:.1f} deg, theta2 = {theta2_deg:.1f} deg".format(**trace.metadata)
    )
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def sweep_figure(rows, path) -> None:
    """Final correlation vs angle difference against the -cos(delta) curve."""
    deltas = [r["delta_deg"] for r in rows]
    finals = [r["c_final"] for r in rows]
    grid = np.linspace(min(deltas + [0.0]), max(deltas + [180.0]), 400)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(grid, -np.cos(np.radians(grid)), color="tab:blue", label="-cos(delta)")
    ax.plot(deltas, finals, "o", color="#8b5a2b", label="simulated")
    ax.set_xlabel("angle difference (deg)")
    ax.set_ylabel("correlation")
    ax.set_ylim(-1.05, 1.05)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def battery_figure(stream, report, path) -> None:
    """Histogram of the sampled stream with per-test p-values in the title."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(np.asarray(stream), bins=100, density=True, color="#8b5a2b", alpha=0.8)
    ax.axhline(1.0, color="tab:blue", linewidth=1.0)
    ax.set_xlabel("value")
    ax.set_ylabel("density")
    verdict = "pass" if report.all_passed else "FAIL"
    ps = ", ".join(f"{r.name.split('_')[0]}={r.p_value:.3f}" for r in report.results)
    ax.set_title(f"battery {verdict} (alpha={report.alpha:g}): {ps}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def arrows_figure(sample, theta1: float, theta2: float, path) -> None:
    """Latest sample drawn as red/green arrows from the origin."""
    from detqm.epr import arrow_endpoints

    red, green = arrow_endpoints(sample, theta1, theta2)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.annotate("", xy=red, xytext=(0, 0), arrowprops=dict(color="red", arrowstyle="->", lw=2))
    ax.annotate("", xy=green, xytext=(0, 0), arrowprops=dict(color="green", arrowstyle="->", lw=2))
    lim = 0.7
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.8", lw=0.5)
    ax.axvline(0, color="0.8", lw=0.5)
    ax.set_title(f"a = {sample[0]:+.1f}, b = {sample[1]:+.1f}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
