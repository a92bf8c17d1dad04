"""Figures for ``bench`` reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_COLOURS = {"SAT": "tab:green", "UNSAT": "tab:blue",
            "INCONCLUSIVE": "tab:orange", "ERROR": "tab:red"}


def bench_figure(rows, path: str, timing: bool = True) -> None:
    """Bar chart with one bar per file, coloured by verdict.

    *rows* holds ``(name, verdict)`` pairs.  Bars show wall time, or the
    number of generated sequents/states when *timing* is off so that the
    figure stays reproducible.
    """
    from .engines import counts

    names = [name for name, _ in rows]
    if timing:
        values = [v.stats.get("ms", 0.0) for _, v in rows]
        label = "wall time [ms]"
    else:
        values = [counts(v)[0] for _, v in rows]
        label = "sequents / states"
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(rows) + 2.0), 3.0))
    ax.bar(range(len(rows)), values,
           color=[_COLOURS.get(v.status, "grey") for _, v in rows])
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel(label)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
