"""Matplotlib renderers for the CSV outputs.

Figures are an optional convenience layered on the delimited data; the CSV
files remain the canonical, deterministic output.  All functions write to a
file path and never open interactive windows.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import numpy as np


def _axes(nrows: int = 1):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(nrows, 1, figsize=(6.4, 2.2 * nrows), sharex=(nrows > 1))
    return fig, axes


def plot_bounds(n: np.ndarray, s: np.ndarray, b: np.ndarray, path: str | Path) -> Path:
    """Gain-bound comparison: region-calculus bound vs. the reference bound."""
    fig, ax = _axes()
    ax.plot(n, s, "--", color="tab:orange", label="region bound")
    ax.plot(n, b, ":", color="tab:blue", label="balanced-truncation bound")
    ax.set_xlabel("n")
    ax.set_ylabel("error bound")
    ax.set_ylim(0.0, min(4.0, float(np.nanmax([np.nanmax(s), 4.0]))))
    ax.grid(True)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    return Path(path)


def plot_simulation(
    t: np.ndarray, columns: dict[str, np.ndarray], path: str | Path
) -> Path:
    """Output traces on top; error magnitudes on a log axis below."""
    errors = {k: v for k, v in columns.items() if k.startswith("err")}
    outputs = {k: v for k, v in columns.items() if not k.startswith("err")}
    fig, axes = _axes(2 if errors else 1)
    ax0 = axes[0] if errors else axes
    styles = {"v_full": ("-", "black"), "v_red_srg": ("--", "tab:orange"), "v_red_bt": (":", "tab:blue")}
    for name, values in outputs.items():
        ls, color = styles.get(name, ("-", None))
        ax0.plot(t, values, ls, color=color, label=name, linewidth=1.0)
    ax0.set_ylabel("port voltage")
    ax0.grid(True)
    ax0.legend(fontsize=8)
    if errors:
        ax1 = axes[1]
        for name, values in errors.items():
            ls, color = ("--", "tab:orange") if name.endswith("srg") else (":", "tab:blue")
            ax1.semilogy(t, np.maximum(values, 1e-16), ls, color=color, label=name)
        ax1.set_ylabel("|error|")
        ax1.grid(True)
        ax1.legend(fontsize=8)
        ax1.set_xlabel("t")
    else:
        ax0.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    return Path(path)


def plot_srg(
    regions: dict[str, object],
    path: str | Path,
    points: Sequence | None = None,
    samples: int = 256,
) -> Path:
    """Region boundaries (mirrored into the lower half-plane) plus overlays."""
    from .regions import sample_boundary

    fig, ax = _axes()
    colors = ["tab:orange", "tab:blue", "tab:green"]
    for (label, region), color in zip(regions.items(), colors):
        pts = sample_boundary(region, samples)
        if not pts:
            continue
        re = np.array([p[0] for p in pts])
        im = np.array([p[1] for p in pts])
        ax.plot(np.concatenate([re, re[::-1]]), np.concatenate([im, -im[::-1]]), color=color, label=label)
    if points:
        ax.scatter([p.re for p in points], [p.im for p in points], s=4, color="0.4", label="empirical")
        ax.scatter([p.re for p in points], [-p.im for p in points], s=4, color="0.4")
    ax.axhline(0.0, color="0.8", linewidth=0.5)
    ax.axvline(0.0, color="0.8", linewidth=0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.grid(True)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    return Path(path)
