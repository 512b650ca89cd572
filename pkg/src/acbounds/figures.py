"""Figure rendering for the CLI report paths.

Each CSV-emitting command drops a PNG next to its delimited output; the CSV
stays the machine-readable artefact, the figure is for eyeballing.  The Agg
backend keeps rendering headless and byte-stable for identical inputs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_PNG_META = {"Software": "acbounds"}


def render_ellipse(points: np.ndarray, epsilon: float, path: str) -> None:
    """Draw the feasible-boundary curve inside the unit square."""
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    closed = np.vstack([points, points[:1]])
    ax.plot(closed[:, 0], closed[:, 1], lw=1.5, color="tab:blue")
    square = np.array([[-1, -1], [1, -1], [1, 1], [-1, 1], [-1, -1]], dtype=float)
    ax.plot(square[:, 0], square[:, 1], lw=0.8, ls="--", color="gray")
    ax.set_xlim(-1.12, 1.12)
    ax.set_ylim(-1.12, 1.12)
    ax.set_aspect("equal")
    ax.set_xlabel(r"$\langle A_1 \rangle$")
    ax.set_ylabel(r"$\langle A_2 \rangle$")
    ax.set_title(f"feasible expectations, eps = {epsilon:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=144, metadata=_PNG_META)
    plt.close(fig)


def render_compare(rows: np.ndarray, path: str) -> None:
    """Plot the three bound curves against overlap ``c``."""
    fig, ax = plt.subplots(figsize=(5.6, 4.2))
    ax.plot(rows[:, 0], rows[:, 1], label=r"$q_{MU}$", color="tab:orange")
    ax.plot(rows[:, 0], rows[:, 2], label="anti-commutator bound", color="tab:blue")
    ax.plot(rows[:, 0], rows[:, 3], label="state-optimised minimum", color="tab:green", ls=":")
    ax.set_xlabel("overlap c")
    ax.set_ylabel("bits")
    ax.set_xlim(0.5, 1.0)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=144, metadata=_PNG_META)
    plt.close(fig)
