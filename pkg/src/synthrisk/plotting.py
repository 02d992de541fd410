"""Static figures for reports, written as SVG with matplotlib.

Figures are built on bare :class:`~matplotlib.figure.Figure` objects (no
pyplot state), and SVG output pins the element-id salt and drops the date
so identical inputs give identical bytes.
"""

from __future__ import annotations

import io

import matplotlib
from matplotlib.figure import Figure

from .pipeline import DisclosureReport, SweepResult

ORIG_COLOR = "#4c72b0"
SYN_COLOR = "#dd8452"

# line colour follows the denominator, line style the numerator
DENOM_COLORS = {"N_d": "#1b9e77", "N_s": "#d95f02", "N_b": "#7570b3", "N_bp": "#e7298a"}
SWEEP_STYLE = {
    "DiSCO": ("N_d", "-"), "TCAP_s": ("N_s", "-"), "TCAP_b": ("N_b", "-"), "TCAP": ("N_bp", "-"),
    "DCAP_d": ("N_d", "--"), "DCAP_s": ("N_s", "--"), "DCAP_b": ("N_b", "--"),
}


def figure_bytes(fig: Figure, fmt: str = "svg") -> bytes:
    buf = io.BytesIO()
    with matplotlib.rc_context({"svg.hashsalt": "synthrisk", "svg.fonttype": "path"}):
        metadata = {"Date": None} if fmt == "svg" else None
        fig.savefig(buf, format=fmt, metadata=metadata, bbox_inches="tight")
    return buf.getvalue()


def save_figure(fig: Figure, path) -> None:
    fmt = str(path).rsplit(".", 1)[-1].lower()
    with open(path, "wb") as fh:
        fh.write(figure_bytes(fig, fmt if fmt in ("svg", "png", "pdf") else "svg"))


def plot_summary(report: DisclosureReport) -> Figure:
    """Paired original/synthetic attribute-disclosure bars, one pair per target.

    Targets are ordered as in the summary table, so the most disclosive
    target in the synthetic data ends up on top.
    """
    rows = report.summary
    n = max(len(rows), 1)
    fig = Figure(figsize=(7.5, 1.2 + 0.55 * n))
    ax = fig.add_subplot()
    ys = range(len(rows))
    h = 0.38
    ax.barh([y + h / 2 for y in ys], [r.attrib_orig for r in rows], height=h,
            color=ORIG_COLOR, label="original (Dorig)")
    ax.barh([y - h / 2 for y in ys], [r.attrib_syn for r in rows], height=h,
            color=SYN_COLOR, label="synthetic (DiSCO)")
    ax.set_yticks(list(ys))
    ax.set_yticklabels([r.label for r in rows])
    ax.set_xlim(0, 100)
    ax.set_xlabel("% of original records")
    ident = report.ident
    if ident:
        uio = sum(i.UiO for i in ident) / len(ident)
        rep = sum(i.repU for i in ident) / len(ident)
        ax.set_title(f"Attribute disclosure from keys: {' '.join(report.keys)}\n"
                     f"identity: UiO {uio:.2f}%, repU {rep:.2f}%", fontsize=10)
    ax.legend(loc="lower right", fontsize=8, frameon=False)
    ax.grid(axis="x", alpha=0.3)
    return fig


def plot_sweep(result: SweepResult) -> Figure:
    targets = list(dict.fromkeys(r["target"] for r in result.rows))
    n = max(len(targets), 1)
    fig = Figure(figsize=(4.2 * n, 3.8))
    axes = fig.subplots(1, n, squeeze=False)[0]
    for ax, t in zip(axes, targets):
        rows = [r for r in result.rows if r["target"] == t]
        xs = [r["n_syn"] for r in rows]
        for m in result.measures:
            denom, style = SWEEP_STYLE.get(m, ("N_d", ":"))
            ax.plot(xs, [r[m] for r in rows], style, marker="o", markersize=3,
                    color=DENOM_COLORS[denom], label=m)
        ax.set_title(t, fontsize=10)
        ax.set_xlabel("synthetic records")
        ax.set_ylabel("%")
        ax.grid(alpha=0.3)
    axes[0].legend(fontsize=7, frameon=False)
    fig.suptitle(f"Disclosure by synthetic size, keys: {' '.join(result.keys)}", fontsize=10)
    return fig
