"""Matplotlib renderings for the report path.  CSV/JSON stay the data
contract; these figures are a convenience layer written next to them."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["orbit_figure", "levi_figure", "log_image_figure"]

_DPI = 110


def orbit_figure(report, path) -> Path:
    """Orbit parameter index against distance to the boundary (log scale)."""
    path = Path(path)
    idx = np.arange(1, len(report.points) + 1)
    dist = np.asarray(report.boundary_distances, dtype=float)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    good = np.isfinite(dist) & (dist > 0)
    ax1.semilogy(idx[good], dist[good], "o-", ms=3)
    ax1.set_xlabel("orbit index i")
    ax1.set_ylabel("radial distance to boundary")
    ax1.set_title("boundary approach")
    pts = np.asarray(report.points)
    ax2.plot(pts[:, 0].real, pts[:, 0].imag, "o-", ms=3)
    ax2.set_xlabel("Re z1")
    ax2.set_ylabel("Im z1")
    ax2.set_title("first coordinate of the orbit")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def levi_figure(report, path) -> Path:
    """Bar chart of tangent-form eigenvalues with the sign verdict."""
    path = Path(path)
    eig = np.asarray(report.eigenvalues, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 3.4))
    if eig.size:
        colors = ["#c0392b" if e < 0 else "#27ae60" for e in eig]
        ax.bar(np.arange(eig.size), eig, color=colors)
        ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("eigenvalue index")
    ax.set_ylabel("eigenvalue")
    ax.set_title(f"Levi form on the complex tangent: {report.verdict}")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def log_image_figure(sample, path) -> Path:
    """Scatter of the first two logarithmic coordinates (1-D: a histogram)."""
    path = Path(path)
    pts = np.asarray(sample.points)
    fig, ax = plt.subplots(figsize=(4.6, 4.2))
    if pts.shape[1] >= 2:
        ax.plot(pts[:, 0], pts[:, 1], ".", ms=2, alpha=0.6)
        ax.set_xlabel("log|z1|")
        ax.set_ylabel("log|z2|")
    else:
        ax.hist(pts[:, 0], bins=50, color="#2c3e50")
        ax.set_xlabel("log|z1|")
        ax.set_ylabel("count")
    ax.set_title("logarithmic image sample")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
