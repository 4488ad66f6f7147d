"""Formula-effectiveness scoring over sweep corpora.

The primary index is a half-vs-half AUC: the probability that a graph from
the high half of a sweep (k > n/2) outscores one from the low half, ties
counted 1/2. Kendall tau-b and Spearman rank correlations between k and the
formula value are reported alongside. The tournament winner maximizes mean
AUC across the four families.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from .errors import BadCorpusShape, MissingFamily
from .formulas import METRIC_COUNTS, FormulaId, FormulaInput, evaluate
from .metrics import compute_bundle
from .synthgen import SweepFamily, SyntheticGraph

#: previously reported effectiveness per (formula, family), for side-by-side
#: display in reports; not used by any computation.
REFERENCE_EFFECTIVENESS = {
    FormulaId.C0: (0.975, 0.8, 0.375, 0.55),
    FormulaId.C1: (0.975, 0.375, 0.325, 0.875),
    FormulaId.C2: (1.0, 0.325, 0.3, 0.825),
    FormulaId.C3: (1.0, 0.4, 0.35, 0.575),
    FormulaId.C4: (1.0, 0.275, 0.4, 0.675),
    FormulaId.C5: (0.7, 0.525, 0.375, 0.925),
    FormulaId.C6: (1.0, 0.375, 0.25, 0.9),
    FormulaId.C7: (0.95, 0.85, 0.325, 0.675),
    FormulaId.C8: (0.95, 0.85, 0.35, 0.625),
    FormulaId.C9: (1.0, 0.8, 0.35, 0.8),
    FormulaId.C10: (1.0, 0.825, 0.325, 0.875),
    FormulaId.C11: (1.0, 0.85, 0.325, 0.8),
    FormulaId.C12: (1.0, 0.8, 0.3, 0.8),
    FormulaId.C13: (1.0, 0.8, 0.3, 0.8),
    FormulaId.C14: (1.0, 0.825, 0.325, 0.825),
}

FAMILY_ORDER = (
    SweepFamily.NEW_CONNECTIONS,
    SweepFamily.NUM_RESPONSES,
    SweepFamily.RESPONDENT_RANGE,
    SweepFamily.RESPONDENTS,
)

TOURNAMENT_FORMULAS = tuple(fid for fid in FormulaId if fid is not FormulaId.C10R)


@dataclass(frozen=True)
class EffectivenessScore:
    formula: FormulaId
    family: SweepFamily
    auc: float
    kendall_tau_b: float
    spearman: float


@dataclass(frozen=True)
class CorpusEvaluation:
    scores: dict[tuple[FormulaId, SweepFamily], EffectivenessScore]
    winner: FormulaId
    mean_auc: dict[FormulaId, float]


def rank_by_formula(
    corpus: list[SyntheticGraph],
    fid: FormulaId,
    m: int,
    values: dict[int, float] | None = None,
) -> list[tuple[int, float]]:
    """(k, value) pairs sorted ascending by value, ties broken by k.

    `values` can carry precomputed formula values keyed by k to avoid
    recomputing bundles when scoring many formulas on one corpus.
    """
    pairs = []
    for sg in corpus:
        if values is not None and sg.k in values:
            v = values[sg.k]
        else:
            bundle = compute_bundle(sg.graph, survey=sg.survey)
            v = evaluate(fid, FormulaInput(bundle=bundle, m=m)).value
        pairs.append((sg.k, v))
    pairs.sort(key=lambda kv: (kv[1], kv[0]))
    return pairs


def effectiveness(values: list[tuple[int, float]]) -> tuple[float, float, float]:
    """(auc, kendall_tau_b, spearman) for a complete k = 1..n series."""
    n = len(values)
    ks = sorted(k for k, _ in values)
    if n < 2 or n % 2 != 0 or ks != list(range(1, n + 1)):
        raise BadCorpusShape(f"need a complete even-length k=1..n series, got {n} entries")
    by_k = dict(values)
    half = n // 2
    low = np.array([by_k[k] for k in range(1, half + 1)])
    high = np.array([by_k[k] for k in range(half + 1, n + 1)])
    gt = (high[:, None] > low[None, :]).sum()
    eq = (high[:, None] == low[None, :]).sum()
    auc = (gt + 0.5 * eq) / (half * half)
    k_arr = np.arange(1, n + 1)
    v_arr = np.array([by_k[k] for k in k_arr])
    if np.all(v_arr == v_arr[0]):
        tau, rho = 0.0, 0.0
    else:
        tau = stats.kendalltau(k_arr, v_arr).statistic
        rho = stats.spearmanr(k_arr, v_arr).statistic
    return float(auc), float(tau), float(rho)


def corpus_formula_values(
    corpus: list[SyntheticGraph],
    formulas: tuple[FormulaId, ...],
    m: int,
) -> dict[FormulaId, dict[int, float]]:
    """Evaluate each requested formula on every graph (one bundle per graph)."""
    out: dict[FormulaId, dict[int, float]] = {fid: {} for fid in formulas}
    for sg in corpus:
        bundle = compute_bundle(sg.graph, survey=sg.survey)
        inp = FormulaInput(bundle=bundle, m=m)
        for fid in formulas:
            out[fid][sg.k] = evaluate(fid, inp).value
    return out


def default_m(corpus: list[SyntheticGraph]) -> int:
    """Survey cap for a corpus: the largest per-graph reportable maximum."""
    return max(sg.survey.max_reportable for sg in corpus)


def evaluate_corpus(
    corpora: dict[SweepFamily, list[SyntheticGraph]],
    formulas: tuple[FormulaId, ...] = TOURNAMENT_FORMULAS,
    m: int | None = None,
) -> tuple[CorpusEvaluation, dict[tuple[FormulaId, SweepFamily], dict[int, float]]]:
    """Score matrix over (formula, family) plus the raw per-k value series."""
    missing = [f for f in corpora if not corpora[f]]
    if missing:
        raise MissingFamily(f"empty corpus for {missing[0].value}")
    scores: dict[tuple[FormulaId, SweepFamily], EffectivenessScore] = {}
    series: dict[tuple[FormulaId, SweepFamily], dict[int, float]] = {}
    for family, corpus in corpora.items():
        m_family = m if m is not None else default_m(corpus)
        values = corpus_formula_values(corpus, formulas, m_family)
        for fid in formulas:
            ranked = rank_by_formula(corpus, fid, m_family, values=values[fid])
            auc, tau, rho = effectiveness(ranked)
            scores[(fid, family)] = EffectivenessScore(
                formula=fid, family=family, auc=auc, kendall_tau_b=tau, spearman=rho
            )
            series[(fid, family)] = values[fid]
    families = list(corpora)
    mean_auc = {
        fid: float(np.mean([scores[(fid, fam)].auc for fam in families]))
        for fid in formulas
    }
    winner = min(mean_auc, key=lambda fid: (-mean_auc[fid], fid.value))
    return (
        CorpusEvaluation(scores=scores, winner=winner, mean_auc=mean_auc),
        series,
    )


def write_score_table(
    evaluation: CorpusEvaluation, path: str | Path, families: list[SweepFamily]
) -> None:
    """Score matrix CSV: rows are formulas, columns are family AUCs."""
    path = Path(path)
    formulas = sorted({fid for fid, _ in evaluation.scores}, key=lambda f: int(f.value[1:]))
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["formula", *(f.value for f in families), "mean_auc"])
        for fid in formulas:
            row = [fid.value]
            for fam in families:
                row.append(f"{evaluation.scores[(fid, fam)].auc:.6g}")
            row.append(f"{evaluation.mean_auc[fid]:.6g}")
            writer.writerow(row)


def write_score_sidecar(
    evaluation: CorpusEvaluation, path: str | Path, families: list[SweepFamily]
) -> None:
    """JSON sidecar with all three statistics per cell plus metric counts."""
    formulas = sorted({fid for fid, _ in evaluation.scores}, key=lambda f: int(f.value[1:]))
    data = {
        "winner": evaluation.winner.value,
        "aggregate": "mean auc across families",
        "families": [f.value for f in families],
        "formulas": {},
    }
    for fid in formulas:
        cells = {}
        for fam in families:
            s = evaluation.scores[(fid, fam)]
            cells[fam.value] = {
                "auc": s.auc,
                "kendall_tau_b": s.kendall_tau_b,
                "spearman": s.spearman,
            }
        entry = {
            "metric_count": METRIC_COUNTS[fid],
            "mean_auc": evaluation.mean_auc[fid],
            "cells": cells,
        }
        if fid in REFERENCE_EFFECTIVENESS:
            entry["reference_effectiveness"] = list(REFERENCE_EFFECTIVENESS[fid])
        data["formulas"][fid.value] = entry
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def write_series(
    series: dict[tuple[FormulaId, SweepFamily], dict[int, float]],
    out_dir: str | Path,
) -> list[Path]:
    """Plot-ready per-k value series, one CSV per (formula, family)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for (fid, family), values in sorted(
        series.items(), key=lambda kv: (int(kv[0][0].value[1:]), kv[0][1].value)
    ):
        path = out_dir / f"series_{fid.value}_{family.value}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["k", "value"])
            for k in sorted(values):
                writer.writerow([k, f"{values[k]:.12g}"])
        written.append(path)
    return written
