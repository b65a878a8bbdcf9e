"""Render a bounds sweep to a figure file next to its CSV."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bounds import BoundsRow


def plot_bounds(rows: list[BoundsRow], path: str) -> None:
    """Process-fidelity envelope versus 1 - F0, one SDP-max curve per qubit count."""
    by_n: dict[int, list[BoundsRow]] = {}
    for row in rows:
        by_n.setdefault(row.n, []).append(row)

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    xs_all = sorted({r.one_minus_f0 for r in rows})
    ax.plot(xs_all, [1 - x for x in xs_all], "k:", lw=1.2, label="upper bound $F_0$")
    ax.plot(
        xs_all,
        [1 - 1.5 * x for x in xs_all],
        "k--",
        lw=1.2,
        label=r"lower bound $1 - \frac{3}{2}(1 - F_0)$",
    )
    for n in sorted(by_n):
        cells = sorted(by_n[n], key=lambda r: r.one_minus_f0)
        xs = [r.one_minus_f0 for r in cells]
        ax.plot(xs, [r.sdp_max for r in cells], marker="o", ms=4, lw=1.4,
                label=f"SDP max, n={n}")
        ax.plot(xs, [r.sdp_min for r in cells], marker="x", ms=4, lw=0.8,
                alpha=0.6, label=f"SDP min, n={n}")
    ax.set_xlabel(r"$1 - F_0$")
    ax.set_ylabel("process fidelity $F$")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=200, bbox_inches="tight")
    plt.close(fig)
