"""Matplotlib figures for the evaluation report path.

Figures are rendered straight to files next to the delimited output; no
interactive backend is required.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .evaluation import CorpusEvaluation  # noqa: E402
from .formulas import FormulaId  # noqa: E402
from .synthgen import SweepFamily  # noqa: E402


def plot_effectiveness(
    evaluation: CorpusEvaluation,
    families: list[SweepFamily],
    out_path: str | Path,
) -> Path:
    """Grouped bar chart of AUC per formula, one group per family."""
    formulas = sorted({fid for fid, _ in evaluation.scores}, key=lambda f: int(f.value[1:]))
    x = range(len(formulas))
    width = 0.8 / max(1, len(families))
    fig, ax = plt.subplots(figsize=(10, 4.5))
    for i, fam in enumerate(families):
        aucs = [evaluation.scores[(fid, fam)].auc for fid in formulas]
        ax.bar([xi + i * width for xi in x], aucs, width=width, label=fam.value)
    ax.axhline(0.95, color="grey", linewidth=0.8, linestyle="--")
    ax.set_xticks([xi + 0.4 - width / 2 for xi in x])
    ax.set_xticklabels([f.value for f in formulas])
    ax.set_ylabel("effectiveness (AUC)")
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8)
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def plot_series(
    values: dict[int, float],
    fid: FormulaId,
    family: SweepFamily,
    out_path: str | Path,
) -> Path:
    """Scatter of formula value against sweep index k."""
    ks = sorted(values)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(ks, [values[k] for k in ks], s=8)
    ax.set_xlabel("sweep index k")
    ax.set_ylabel(f"{fid.value} value")
    ax.set_title(f"{fid.value} over the {family.value} sweep")
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
