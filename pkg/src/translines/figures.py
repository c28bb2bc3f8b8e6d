"""Matplotlib report figures written next to the CSV outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .arrangements import IntArrangement, MappedArrangement  # noqa: E402
from .curves import map_points  # noqa: E402


def _save(fig, path) -> None:
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-stable
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def plot_arrangement(arr: IntArrangement, path, mapped: MappedArrangement | None = None) -> None:
    """Points and lines, or their images under a curve map.

    Curve images are drawn by pushing dense samples of each source line
    through the map, restricted to the x-range of the point set.
    """
    fig, ax = plt.subplots(figsize=(6, 5))
    xs = np.array([p[0] for p in arr.points], dtype=float)
    lo, hi = xs.min() - 0.25, xs.max() + 0.25
    t = np.linspace(max(lo, 1e-3) if mapped is not None else lo, hi, 200)
    for a, b in arr.lines:
        if mapped is None:
            ax.plot(t, a * t + b, lw=0.4, color="0.6")
        else:
            X, Y = map_points(mapped.map_id, t, a * t + b)
            ax.plot(X, Y, lw=0.4, color="0.6")
    pts = arr.points if mapped is None else mapped.points
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=6, color="C3", zorder=3)
    title = "point-line arrangement" if mapped is None else f"image under {mapped.map_id.value} map"
    ax.set_title(f"{title}: N={len(arr.points)}, M={len(arr.lines)}")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    _save(fig, path)


def plot_unit_distance_fit(rows, slope: float | None, path) -> None:
    """log-log plot of unit-distance counts against N, with the fitted slope."""
    N = np.array([r[0] for r in rows], dtype=float)
    C = np.array([r[1] for r in rows], dtype=float)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(N, C, "o", color="C0", label="exact count")
    if slope is not None:
        icpt = np.mean(np.log(C) - slope * np.log(N))
        ax.loglog(N, np.exp(icpt) * N ** slope, "-", color="C0", lw=1, label=f"fit, slope {slope:.4f}")
        ax.loglog(N, np.exp(icpt) * N[0] ** (slope - 4 / 3) * N ** (4 / 3), "--", color="0.5", lw=1,
                  label="slope 4/3")
    ax.set_xlabel("N (points)")
    ax.set_ylabel("unit distances")
    ax.legend(frameon=False)
    _save(fig, path)


def plot_series(series, path, labels=None) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for k, s in enumerate(series):
        arr = np.asarray(s, dtype=float)
        ax.plot(arr[:, 0], arr[:, 1], lw=1.2, label=None if labels is None else labels[k])
    if labels:
        ax.legend(frameon=False)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    _save(fig, path)
