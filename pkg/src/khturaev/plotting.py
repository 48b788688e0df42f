"""Matplotlib rendering of the bigraded homology grid."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .khovanov import BigradedGroups  # noqa: E402
from .render import cell_text  # noqa: E402

__all__ = ["plot_homology"]


def plot_homology(H: BigradedGroups, path, *, title: str | None = None, diagonals: bool = True):
    """Draw the ``(i, j)`` grid with one labelled cell per nonzero group and save it to ``path``.

    Free parts are shaded; cells with torsion get a hatched border.  When
    ``diagonals`` is set, the lines of constant ``2i - j`` through the
    support are drawn faintly.
    """
    fig, ax = plt.subplots(figsize=(6, 5))
    sup = H.support()
    if not sup:
        ax.text(0.5, 0.5, "zero", ha="center", va="center", transform=ax.transAxes)
        ax.set_axis_off()
    else:
        i_lo, i_hi = min(i for i, _ in sup), max(i for i, _ in sup)
        j_lo, j_hi = min(j for _, j in sup), max(j for _, j in sup)
        top = max(h.free_rank for _, h in H.items()) or 1
        for (i, j), h in H.items():
            shade = 0.15 + 0.6 * h.free_rank / top if h.free_rank else 0.0
            ax.add_patch(
                plt.Rectangle(
                    (i - 0.5, j - 1), 1, 2,
                    facecolor=(0.2, 0.4, 0.8, shade),
                    edgecolor="black",
                    hatch="//" if h.torsion else None,
                    linewidth=0.8,
                )
            )
            ax.text(i, j, cell_text(h), ha="center", va="center", fontsize=8)
        if diagonals:
            for d in sorted({2 * i - j for i, j in sup}):
                xs = [i_lo - 0.5, i_hi + 0.5]
                ax.plot(xs, [2 * x - d for x in xs], color="gray", linewidth=0.5, alpha=0.5)
        ax.set_xlim(i_lo - 0.5, i_hi + 0.5)
        ax.set_ylim(j_lo - 1, j_hi + 1)
        ax.set_xticks(range(i_lo, i_hi + 1))
        ax.set_yticks(range(j_lo, j_hi + 1, 2))
        ax.set_xlabel("i")
        ax.set_ylabel("j")
        ax.grid(True, linewidth=0.3)
    ax.set_title(title or f"Khovanov homology over {H.ring}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
