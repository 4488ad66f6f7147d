"""The sixteen collaboration-structure indices (C0..C14 plus rescaled C10).

Each index is a closed-form combination of bundle metrics. Definitions are
transcribed literally, including outer averaging factors. `m` is the survey
instrument's cap on reportable collaborations and is always an explicit
input, never inferred from the graph.

Shared building blocks:
  quantity  q_ln   = ln(1 + avg/m)         in [0, ln 2] for avg <= m
  quantity  q_sqrt = sqrt(avg/m)           in [0, 1]    for avg <= m
  collapse  1/exc                          in (0, 1]    for exc >= 1
  collapse  sin(pi/exc)                    in [0, 1]    for exc >= 1
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import MissingField, OutOfBound
from .metrics import MetricsBundle

MOD_EPSILON = 1e-6  # |modularity| clamp for the log10(mod^2) term of C0
_LN2 = math.log(2.0)

C10_LOW = 0.0
C10_HIGH = (_LN2 + 1.0) / 2.0


class FormulaId(enum.Enum):
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C7 = "C7"
    C8 = "C8"
    C9 = "C9"
    C10 = "C10"
    C11 = "C11"
    C12 = "C12"
    C13 = "C13"
    C14 = "C14"
    C10R = "C10R"

    @classmethod
    def from_string(cls, s: str) -> "FormulaId":
        try:
            return cls(s.upper().replace("_", "").replace("-", ""))
        except ValueError:
            raise ValueError(f"unknown formula id {s!r}") from None


#: number of distinct metrics each index consumes (reported, not a tie-break)
METRIC_COUNTS = {
    FormulaId.C0: 3,
    FormulaId.C1: 4,
    FormulaId.C2: 4,
    FormulaId.C3: 3,
    FormulaId.C4: 3,
    FormulaId.C5: 3,
    FormulaId.C6: 3,
    FormulaId.C7: 4,
    FormulaId.C8: 4,
    FormulaId.C9: 4,
    FormulaId.C10: 4,
    FormulaId.C11: 6,
    FormulaId.C12: 5,
    FormulaId.C13: 5,
    FormulaId.C14: 7,
    FormulaId.C10R: 4,
}

_FIELDS = {
    FormulaId.C0: ("avg_collaborations", "clustering", "modularity"),
    FormulaId.C1: ("global_efficiency", "transitivity", "modularity", "core_ratio"),
    FormulaId.C2: ("global_efficiency", "transitivity", "avg_eccentricity", "modularity"),
    FormulaId.C3: ("global_efficiency", "clustering", "modularity"),
    FormulaId.C4: ("global_efficiency", "transitivity", "modularity"),
    FormulaId.C5: ("global_efficiency", "transitivity", "core_ratio"),
    FormulaId.C6: ("global_efficiency", "transitivity", "avg_eccentricity"),
    FormulaId.C7: ("avg_collaborations", "global_efficiency", "transitivity", "avg_eccentricity"),
    FormulaId.C8: ("avg_collaborations", "global_efficiency", "transitivity", "modularity"),
    FormulaId.C9: ("avg_collaborations", "global_efficiency", "transitivity", "avg_eccentricity"),
    FormulaId.C10: ("avg_collaborations", "global_efficiency", "transitivity", "avg_eccentricity"),
    FormulaId.C11: (
        "avg_collaborations", "global_efficiency", "transitivity",
        "rich_club", "core_ratio", "avg_eccentricity",
    ),
    FormulaId.C12: (
        "avg_collaborations", "global_efficiency", "transitivity",
        "central_point_dominance", "avg_eccentricity",
    ),
    FormulaId.C13: (
        "avg_collaborations", "global_efficiency", "transitivity",
        "central_point_dominance", "avg_eccentricity",
    ),
    FormulaId.C14: (
        "avg_collaborations", "global_efficiency", "avg_eccentricity",
        "transitivity", "central_point_dominance", "rich_club", "core_ratio",
    ),
    FormulaId.C10R: ("avg_collaborations", "global_efficiency", "transitivity", "avg_eccentricity"),
}


@dataclass(frozen=True)
class FormulaInput:
    bundle: MetricsBundle
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")


@dataclass(frozen=True)
class FormulaValue:
    value: float
    bound_low: float
    bound_high: float
    warnings: tuple[str, ...] = ()
    error: str | None = None


def bounds(fid: FormulaId, m: int) -> tuple[float, float]:
    """Documented value interval, assuming bundle fields in their own ranges
    (including avg_collaborations <= m)."""
    third_hi = (_LN2 + 3.0) / 4.0
    table = {
        FormulaId.C0: (0.0, m * (1.0 - 2.0 * math.log10(MOD_EPSILON))),
        FormulaId.C1: (0.0, 3.25),
        FormulaId.C2: (-1.0, 3.5),
        FormulaId.C3: (0.0, 1.0),
        FormulaId.C4: (0.0, 1.0),
        FormulaId.C5: (0.0, 3.0),
        FormulaId.C6: (0.0, 1.0),
        FormulaId.C7: (0.0, C10_HIGH),
        FormulaId.C8: (-1.0 / 12.0, _LN2 / 2.0 + 5.0 / 12.0),
        FormulaId.C9: (0.0, third_hi),
        FormulaId.C10: (C10_LOW, C10_HIGH),
        FormulaId.C11: (0.0, 1.0),
        FormulaId.C12: (0.0, third_hi),
        FormulaId.C13: (0.0, 1.0),
        FormulaId.C14: (0.0, 1.0),
        FormulaId.C10R: (1.0, 1.0 + 10.0 * C10_HIGH),
    }
    return table[fid]


def rescale_c10(v: float) -> float:
    """Linear rescaling of C10 onto [1, ~9.47]: 1 + 10*v."""
    if not (C10_LOW - 1e-9 <= v <= C10_HIGH + 1e-9):
        raise OutOfBound(f"C10 value {v} outside [0, {C10_HIGH:.6f}]")
    return 1.0 + 10.0 * v


def _require(bundle: MetricsBundle, fid: FormulaId) -> dict[str, float]:
    vals = {}
    for name in _FIELDS[fid]:
        v = getattr(bundle, name)
        if v is None:
            raise MissingField(f"{fid.value} needs bundle field {name!r}")
        vals[name] = v
    return vals


def evaluate(fid: FormulaId, inp: FormulaInput) -> FormulaValue:
    """Evaluate one index; records warnings instead of failing on the
    avg > m premise violation and the C0 modularity-zero singularity."""
    b = inp.bundle
    m = inp.m
    f = _require(b, fid)
    warnings: list[str] = []

    avg = f.get("avg_collaborations")
    if avg is not None and avg > m:
        warnings.append(f"avg_collaborations {avg} exceeds m={m}; value may leave its bound")

    efi = f.get("global_efficiency")
    trans = f.get("transitivity")
    clus = f.get("clustering")
    mod = f.get("modularity")
    exc = f.get("avg_eccentricity")
    core = f.get("core_ratio")
    rcc = f.get("rich_club")
    cpd = f.get("central_point_dominance")

    q_ln = None if avg is None else math.log(1.0 + avg / m)
    q_sqrt = None if avg is None else math.sqrt(avg / m)
    cos_half = None if mod is None else 0.5 * (1.0 + math.cos(math.pi * mod))

    if fid is FormulaId.C0:
        mod_eff = mod
        if abs(mod_eff) < MOD_EPSILON:
            mod_eff = MOD_EPSILON if mod_eff >= 0 else -MOD_EPSILON
            warnings.append(
                f"modularity {mod} too close to 0 for log10(mod^2); clamped to {mod_eff}"
            )
        value = avg * (clus - math.log10(mod_eff**2))
    elif fid is FormulaId.C1:
        value = efi + trans + (1.0 - (mod + core) / 2.0)
    elif fid is FormulaId.C2:
        value = efi + trans + 1.0 / exc - mod
    elif fid is FormulaId.C3:
        value = (efi * clus * cos_half) ** (1.0 / 3.0)
    elif fid is FormulaId.C4:
        value = (efi * trans * cos_half) ** (1.0 / 3.0)
    elif fid is FormulaId.C5:
        value = efi + trans + (1.0 - core)
    elif fid is FormulaId.C6:
        value = (efi * trans * math.sin(math.pi / exc)) ** (1.0 / 3.0)
    elif fid is FormulaId.C7:
        value = 0.5 * (q_ln + (efi + trans + 1.0 / exc) / 3.0)
    elif fid is FormulaId.C8:
        # third subcomponent is cos(pi*mod)/2 with no +1, unlike C3/C4
        value = 0.5 * (q_ln + (efi + trans + 0.5 * math.cos(math.pi * mod)) / 3.0)
    elif fid is FormulaId.C9:
        value = 0.25 * (q_ln + efi + trans + 1.0 / exc)
    elif fid in (FormulaId.C10, FormulaId.C10R):
        value = 0.5 * (q_ln + (efi * trans * math.sin(math.pi / exc)) ** (1.0 / 3.0))
        if fid is FormulaId.C10R:
            value = rescale_c10(value)
    elif fid is FormulaId.C11:
        value = 0.25 * (q_sqrt + efi + trans + (rcc * core) / exc)
    elif fid is FormulaId.C12:
        value = 0.25 * (q_ln + efi + math.sqrt(trans * (1.0 - cpd)) + 1.0 / exc)
    elif fid is FormulaId.C13:
        value = 0.25 * (q_sqrt + efi + math.sqrt(trans * (1.0 - cpd)) + 1.0 / exc)
    elif fid is FormulaId.C14:
        value = 0.25 * (
            q_sqrt
            + math.sqrt(efi / exc)
            + math.sqrt(trans * (1.0 - cpd))
            + rcc * core
        )
    else:  # pragma: no cover
        raise AssertionError(fid)

    lo, hi = bounds(fid, m)
    return FormulaValue(value=value, bound_low=lo, bound_high=hi, warnings=tuple(warnings))


def evaluate_all(inp: FormulaInput) -> dict[FormulaId, FormulaValue]:
    """Evaluate every index; per-id errors are captured, never propagated."""
    out: dict[FormulaId, FormulaValue] = {}
    for fid in FormulaId:
        lo, hi = bounds(fid, inp.m)
        try:
            out[fid] = evaluate(fid, inp)
        except (MissingField, OutOfBound) as exc:
            out[fid] = FormulaValue(
                value=math.nan, bound_low=lo, bound_high=hi, error=str(exc)
            )
    return out


def result_to_json_dict(fid: FormulaId, fv: FormulaValue) -> dict:
    """Wire form: {"formula", "value", "rescaled", "warnings"}."""
    rescaled = None
    if fid is FormulaId.C10 and fv.error is None and not math.isnan(fv.value):
        try:
            rescaled = rescale_c10(fv.value)
        except OutOfBound:
            rescaled = None
    return {
        "formula": fid.value,
        "value": None if fv.error is not None or math.isnan(fv.value) else fv.value,
        "rescaled": rescaled,
        "warnings": list(fv.warnings) + ([fv.error] if fv.error else []),
    }
