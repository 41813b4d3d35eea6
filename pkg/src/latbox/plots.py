"""Figure rendering for the scan reports.

Each function takes the rows a scan command emits as CSV and writes a PNG
next to it.  Figures are rendered with the Agg backend so the commands work
headless.
"""

from __future__ import annotations

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_eps_scan", "plot_cube_scan", "plot_prob_scan"]


def _grouped(rows, key, value):
    groups: dict[int, list[float]] = defaultdict(list)
    for row in rows:
        groups[row[key]].append(row[value])
    ns = sorted(groups)
    return ns, [groups[n] for n in ns]


def plot_eps_scan(rows, path: str) -> str:
    """Empty-box volume ratios against the order, one point per sample."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    for ax, col, label in ((axes[0], "eps_over_n2", "eps / n^2"),
                           (axes[1], "eps_over_n2_ln2n", "eps / (n^2 ln^2 n)")):
        ns, series = _grouped(rows, "n", col)
        for n, vals in zip(ns, series):
            ax.plot([n] * len(vals), vals, "o", ms=4, alpha=0.6, color="tab:blue")
        ax.plot(ns, [sum(v) / len(v) for v in series], "-", color="tab:red",
                label="mean")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("n")
        ax.set_ylabel(label)
        ax.legend()
    axes[0].plot(sorted({r["n"] for r in rows}),
                 [(n // 2) ** 2 / n ** 2 for n in sorted({r["n"] for r in rows})],
                 "--", color="gray", label="guaranteed")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_cube_scan(rows, path: str) -> str:
    """Greedy and best-found empty-cube sides against the order."""
    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    ns, greedy = _grouped(rows, "n", "greedy_side")
    _, best = _grouped(rows, "n", "max_side")
    ax.plot(ns, [sum(v) / len(v) for v in greedy], "s-", label="greedy side")
    ax.plot(ns, [sum(v) / len(v) for v in best], "o-", label="best side found")
    ax.plot(ns, [100 * math.sqrt(n * math.log(n)) for n in ns], "--",
            color="gray", label="100 sqrt(n ln n)")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("cube side")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_prob_scan(rows, path: str) -> str:
    """Empty-box probability against volume, with the e^{-vol/n} reference."""
    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    vols = [r["volume"] for r in rows]
    ref = [r["exp_neg_vol_over_n"] for r in rows]
    exact = [(v, r["exact_prob"]) for v, r in zip(vols, rows)
             if r["exact_prob"] is not None]
    mc = [(v, r["mc_prob"]) for v, r in zip(vols, rows) if r["mc_prob"] is not None]
    if exact:
        ax.plot([v for v, _ in exact], [p for _, p in exact], "o", ms=4,
                label="exact", color="tab:blue")
    if mc:
        ax.plot([v for v, _ in mc], [p for _, p in mc], "x", ms=4,
                label="monte carlo", color="tab:orange")
    order = sorted(range(len(vols)), key=lambda i: vols[i])
    ax.plot([vols[i] for i in order], [ref[i] for i in order], "--",
            color="gray", label="exp(-vol/n)")
    ax.set_xlabel("box volume")
    ax.set_ylabel("empty probability")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
