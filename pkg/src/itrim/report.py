"""Figure rendering for experiment output.

Renders the error-versus-sample-size comparison (one curve per method,
from the aggregate rows) to a PNG next to the delimited output. Uses the
Agg backend so the CLI works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

_STYLE = {
    "ITM": dict(color="tab:blue", marker="o"),
    "OM": dict(color="tab:orange", marker="s"),
    "ITSM": dict(color="tab:blue", marker="o"),
    "OLS": dict(color="tab:orange", marker="s"),
}


def render_error_curves(rows, out_path, title=None):
    """Plot mean final error per method against sample size.

    `rows` are TrialResult records; only aggregate rows (trial_index -1)
    are drawn.
    """
    aggregates = [r for r in rows if r.trial_index == -1]
    if not aggregates:
        raise ValueError("no aggregate rows to plot")
    methods = sorted({r.method for r in aggregates})
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    for method in methods:
        pts = sorted(
            (r.n, r.final_error) for r in aggregates if r.method == method
        )
        ax.plot(
            [p[0] for p in pts],
            [p[1] for p in pts],
            label=method,
            **_STYLE.get(method, {}),
        )
    ax.set_xlabel("sample size n")
    ax.set_ylabel("mean final error")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
