"""Matplotlib renderings written next to the CSV payloads."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# Strip the writer's Software chunk so PNG bytes depend only on the data.
_PNG_META = {"Software": None}


def render_example_figure(
    path: Path,
    grid_x: np.ndarray,
    truth: np.ndarray,
    fit: np.ndarray,
    sample_x: np.ndarray,
    sample_y: np.ndarray,
    truth_label: str = "true function",
    fit_label: str = "estimate",
) -> None:
    """Two panels: (a) truth with its noisy observations, (b) truth vs fit."""
    fig, axes = plt.subplots(1, 2, figsize=(11.0, 3.6))
    axes[0].plot(sample_x, sample_y, ".", ms=2.5, color="tab:red", label="noisy data")
    axes[0].plot(grid_x, truth, color="black", lw=1.2, label=truth_label)
    axes[0].legend(loc="upper right", fontsize=8)
    axes[1].plot(grid_x, truth, color="tab:blue", lw=1.2, label=truth_label)
    axes[1].plot(grid_x, fit, color="tab:red", lw=1.0, ls="--", label=fit_label)
    axes[1].legend(loc="upper right", fontsize=8)
    for ax in axes:
        ax.set_xlabel("x")
        ax.set_xlim(-1, 1)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_META)
    plt.close(fig)


def render_fit_figure(
    path: Path,
    grid_x: np.ndarray,
    fit: np.ndarray,
    sample_x: np.ndarray,
    sample_y: np.ndarray,
) -> None:
    """Single panel: input samples with the fitted curve."""
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.plot(sample_x, sample_y, ".", ms=3, color="tab:gray", label="samples")
    ax.plot(grid_x, fit, color="tab:red", lw=1.2, label="fit")
    ax.set_xlabel("x")
    ax.set_xlim(-1, 1)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_META)
    plt.close(fig)


def render_condition_figure(
    path: Path,
    labels: list[str],
    measured: list[float],
    bounds: list[float],
) -> None:
    """Measured kappa2 of the regularized Gram vs its theoretical bound."""
    idx = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.bar(idx - 0.18, measured, width=0.36, label="measured (mean)")
    ax.bar(idx + 0.18, bounds, width=0.36, label="upper bound")
    ax.set_xticks(idx, labels)
    ax.set_yscale("log")
    ax.set_ylabel(r"$\kappa_2$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_META)
    plt.close(fig)
