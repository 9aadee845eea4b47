"""Figure rendering for the CLI report paths.

Each helper takes the already-computed rows that go into the delimited
output and saves a PNG next to it.  PNG only: the agg backend embeds no
timestamps, so renders are reproducible byte for byte.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

PNG_METADATA = {"Software": "qtripwire"}


def _save(fig, path: str) -> None:
    fig.savefig(path, dpi=150, metadata=PNG_METADATA)
    plt.close(fig)


def transmission_figure(series: Mapping[int, Sequence[tuple[float, float]]], path: str) -> None:
    """No-object transmission versus per-pass loss, one curve per pass count."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for n, pairs in series.items():
        lams = [lam for lam, _ in pairs]
        qs = [q for _, q in pairs]
        ax.plot(lams, qs, label=f"N = {n}")
    ax.set_xlabel(r"per-pass loss $\lambda$")
    ax.set_ylabel(r"transmission $P_{\mathrm{tr}}$ (no object)")
    ax.set_xlim(0.0, 1.0)
    ax.legend()
    fig.tight_layout()
    _save(fig, path)


def distance_figure(rows: Sequence[dict], path: str) -> None:
    """Chernoff and visibility distances plus optimal loss versus pass count."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax2 = ax.twinx()
    for theta in sorted({row["theta_total_pi"] for row in rows}):
        sub = [row for row in rows if row["theta_total_pi"] == theta]
        ns = [row["n"] for row in sub]
        label = rf"$N\theta_N = {theta}\pi$"
        ax.plot(ns, [row["c2"] for row in sub], "o-", label=f"$C_2$, {label}")
        ax.plot(ns, [row["c_vis"] for row in sub], "s--", label=rf"$C_{{vis}}$, {label}")
        ax2.plot(ns, [row["lambda"] for row in sub], ":", alpha=0.6)
    ax.set_xlabel("passes N")
    ax.set_ylabel("distance (nats)")
    ax2.set_ylabel(r"optimal loss $\lambda_N$ (dotted)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def scaling_figure(rows: Sequence[dict], path: str) -> None:
    """Invisibility probability and error bound versus number of trials."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for n in sorted({row["n"] for row in rows}):
        sub = sorted((row for row in rows if row["n"] == n), key=lambda row: row["m"])
        ms = [row["m"] for row in sub]
        ax.plot(ms, [row["p_vis"] for row in sub], "-", label=rf"$\bar P_{{vis}}$, N={n}")
        ax.plot(ms, [row["p_e_max"] for row in sub], "--", label=rf"$P_e^{{max}}$, N={n}")
    ax.set_xlabel("trials M")
    ax.set_ylabel("probability")
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def montecarlo_figure(rows: Sequence[dict], path: str) -> None:
    """Histogram of empirical transmission frequencies, split by truth."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for truth in sorted({row["truth"] for row in rows}):
        freqs = [row["transmitted_frequency"] for row in rows if row["truth"] == truth]
        ax.hist(freqs, bins=30, alpha=0.6, label=truth)
    ax.set_xlabel("empirical transmission frequency")
    ax.set_ylabel("campaigns")
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)
