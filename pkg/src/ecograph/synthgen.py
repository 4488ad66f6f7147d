"""Snowball-survey simulation producing the four 200-graph sweep corpora.

One seed respondent starts each simulation. Respondents are processed FIFO;
every reported collaboration either recruits a brand-new organization
(probability prob_new) or links to a uniformly random existing one. New
organizations join the respondent pool with probability prob_resp until the
cap is reached; the rest, once at creation, report 1..6 extra links with
probability 0.25.

Determinism: every graph's RNG seed is derived from (master seed, family, k)
by SHA-256 mixing, so corpora are reproducible regardless of generation
order. Size bounds are enforced by stopping growth at the upper bound and
re-running from a derived seed (up to 50 attempts) when the lower bound is
missed.
"""

from __future__ import annotations

import enum
import hashlib
import json
import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import BadK, MissingFamily, RetryExhausted
from .graph import Graph, read_edge_list_csv, write_edge_list_csv
from .metrics import SurveyMeta

MAX_ATTEMPTS = 50
EDGE_RETRIES = 10

# k = 100 center values shared by the non-varied parameters of every sweep
CENTER_PROB_NEW = 0.55
CENTER_CONNECTIONS = (15, 24)
CENTER_RESPONDENT_CAP = 35
CENTER_PROB_RESP = 0.40  # printed as .04 in the source schedule; see README
LITERAL_PROB_RESP = 0.04

PROB_CLAMP = (0.01, 0.99)


class SweepFamily(enum.Enum):
    NEW_CONNECTIONS = "new-connections"
    NUM_RESPONSES = "num-responses"
    RESPONDENT_RANGE = "respondent-range"
    RESPONDENTS = "respondents"

    @classmethod
    def from_string(cls, s: str) -> "SweepFamily":
        try:
            return cls(s.lower())
        except ValueError:
            raise ValueError(f"unknown sweep family {s!r}") from None


@dataclass(frozen=True)
class GeneratorConfig:
    prob_new: float
    connections_range: tuple[int, int]
    respondent_cap: int
    prob_resp: float
    nonresp_prob: float = 0.25
    nonresp_edges: tuple[int, int] = (1, 6)
    size_bounds: tuple[int, int] | None = (120, 400)
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.prob_new <= 1.0 and 0.0 <= self.prob_resp <= 1.0):
            raise ValueError("probabilities must lie in [0, 1]")
        lo, hi = self.connections_range
        if lo > hi or lo < 0:
            raise ValueError(f"bad connections_range {self.connections_range}")
        if self.respondent_cap < 1:
            raise ValueError("respondent_cap must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "prob_new": self.prob_new,
            "connections_range": list(self.connections_range),
            "respondent_cap": self.respondent_cap,
            "prob_resp": self.prob_resp,
            "nonresp_prob": self.nonresp_prob,
            "nonresp_edges": list(self.nonresp_edges),
            "size_bounds": None if self.size_bounds is None else list(self.size_bounds),
            "seed": self.seed,
        }


@dataclass(frozen=True)
class SyntheticGraph:
    graph: Graph
    survey: SurveyMeta
    family: SweepFamily | None = None
    k: int | None = None
    seed: int = 0
    attempts: int = 1
    config: GeneratorConfig | None = field(default=None, compare=False)


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from arbitrary labelled parts."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _clamp_prob(p: float) -> float:
    lo, hi = PROB_CLAMP
    return min(hi, max(lo, p))


def sweep_params(
    family: SweepFamily, k: int, literal_prob_resp: bool = False
) -> GeneratorConfig:
    """Config for graph k of a sweep; only the family's parameter varies."""
    if not 1 <= k <= 200:
        raise BadK(f"k must be in [1, 200], got {k}")
    offset = (100 - k) if k <= 100 else -(k - 100)  # positive on the low half

    prob_new = CENTER_PROB_NEW
    connections = CENTER_CONNECTIONS
    cap = CENTER_RESPONDENT_CAP
    prob_resp = LITERAL_PROB_RESP if literal_prob_resp else CENTER_PROB_RESP

    if family is SweepFamily.NEW_CONNECTIONS:
        prob_new = _clamp_prob(CENTER_PROB_NEW + offset / 400.0)
    elif family is SweepFamily.NUM_RESPONSES:
        lo = round(CENTER_CONNECTIONS[0] - offset / 10.0)
        hi = round(CENTER_CONNECTIONS[1] - offset / 10.0)
        connections = (max(0, lo), max(0, hi))
    elif family is SweepFamily.RESPONDENT_RANGE:
        cap = max(1, round(CENTER_RESPONDENT_CAP - offset / 4.0))
    elif family is SweepFamily.RESPONDENTS:
        prob_resp = _clamp_prob(prob_resp - offset / 400.0)
    else:  # pragma: no cover
        raise AssertionError(family)

    return GeneratorConfig(
        prob_new=prob_new,
        connections_range=connections,
        respondent_cap=cap,
        prob_resp=_clamp_prob(prob_resp),
    )


def _node_name(i: int) -> str:
    return f"n{i:04d}"


def _simulate(cfg: GeneratorConfig, rng: random.Random):
    """One survey run. Returns (node count, edges, respondents, reported counts)."""
    n = 1  # the seed respondent
    queue = [0]
    head = 0
    respondents = 1
    reported: list[int] = []
    edges: set[tuple[int, int]] = set()
    ceiling = None if cfg.size_bounds is None else cfg.size_bounds[1]
    lo_c, hi_c = cfg.connections_range
    stop = False

    def add_edge(a: int, b: int) -> bool:
        e = (a, b) if a < b else (b, a)
        if a == b or e in edges:
            return False
        edges.add(e)
        return True

    while head < len(queue) and not stop:
        resp = queue[head]
        head += 1
        c = rng.randint(lo_c, hi_c)
        reported.append(c)
        for _ in range(c):
            if ceiling is not None and n >= ceiling:
                stop = True
                break
            if rng.random() < cfg.prob_new:
                new = n
                n += 1
                add_edge(resp, new)
                if respondents < cfg.respondent_cap and rng.random() < cfg.prob_resp:
                    queue.append(new)
                    respondents += 1
                elif rng.random() < cfg.nonresp_prob:
                    extra = rng.randint(*cfg.nonresp_edges)
                    for _ in range(extra):
                        for _ in range(EDGE_RETRIES):
                            target = rng.randrange(n)
                            if target != new and add_edge(new, target):
                                break
            else:
                for _ in range(EDGE_RETRIES):
                    target = rng.randrange(n)
                    if target != resp and add_edge(resp, target):
                        break
    return n, edges, respondents, reported


def generate_graph(
    cfg: GeneratorConfig,
    family: SweepFamily | None = None,
    k: int | None = None,
) -> SyntheticGraph:
    """Run the simulation, retrying with derived seeds until size bounds hold."""
    last_n = 0
    for attempt in range(1, MAX_ATTEMPTS + 1):
        rng = random.Random(derive_seed("graph", cfg.seed, attempt))
        n, int_edges, respondents, reported = _simulate(cfg, rng)
        last_n = n
        if cfg.size_bounds is not None:
            lo, hi = cfg.size_bounds
            if not (lo <= n <= hi):
                continue
        names = [_node_name(i + 1) for i in range(n)]
        edge_pairs = set()
        for a, b in int_edges:
            u, v = names[a], names[b]
            edge_pairs.add((u, v) if u <= v else (v, u))
        graph = Graph(frozenset(names), frozenset(edge_pairs))
        avg = sum(reported) / len(reported) if reported else 0.0
        survey = SurveyMeta(
            respondents=respondents,
            max_reportable=cfg.connections_range[1],
            avg_collaborations=avg,
        )
        return SyntheticGraph(
            graph=graph,
            survey=survey,
            family=family,
            k=k,
            seed=cfg.seed,
            attempts=attempt,
            config=cfg,
        )
    raise RetryExhausted(
        f"no run hit size bounds {cfg.size_bounds} in {MAX_ATTEMPTS} attempts"
        f" (last node count {last_n})"
    )


def generate_corpus(
    family: SweepFamily,
    master_seed: int,
    literal_prob_resp: bool = False,
) -> list[SyntheticGraph]:
    """The 200 graphs of one sweep family, k = 1..200."""
    out = []
    for k in range(1, 201):
        cfg = sweep_params(family, k, literal_prob_resp=literal_prob_resp)
        cfg = replace(cfg, seed=derive_seed(master_seed, family.value, k))
        try:
            out.append(generate_graph(cfg, family=family, k=k))
        except RetryExhausted as exc:
            raise RetryExhausted(f"{family.value} k={k}: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# corpus persistence: one edge-list CSV per graph plus a manifest

MANIFEST_NAME = "manifest.json"


def _graph_filename(family: SweepFamily, k: int) -> str:
    return f"{family.value}_{k:03d}.csv"


def write_corpus(
    corpora: dict[SweepFamily, list[SyntheticGraph]],
    out_dir: str | Path,
    master_seed: int | None = None,
) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest: dict = {"master_seed": master_seed, "families": {}}
    for family, graphs in corpora.items():
        entries = []
        for sg in graphs:
            fname = _graph_filename(family, sg.k)
            write_edge_list_csv(sg.graph, out_dir / fname)
            entries.append(
                {
                    "k": sg.k,
                    "seed": sg.seed,
                    "attempts": sg.attempts,
                    "nodes": sg.graph.n_nodes,
                    "edges": sg.graph.n_edges,
                    "file": fname,
                    "config": None if sg.config is None else sg.config.to_json_dict(),
                    "survey": sg.survey.to_json_dict(),
                }
            )
        manifest["families"][family.value] = entries
    path = out_dir / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def read_corpus(
    corpus_dir: str | Path,
    families: list[SweepFamily] | None = None,
) -> dict[SweepFamily, list[SyntheticGraph]]:
    corpus_dir = Path(corpus_dir)
    manifest_path = corpus_dir / MANIFEST_NAME
    if not manifest_path.is_file():
        raise MissingFamily(f"no {MANIFEST_NAME} in {corpus_dir}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    available = manifest.get("families", {})
    wanted = families if families is not None else [
        SweepFamily.from_string(name) for name in available
    ]
    out: dict[SweepFamily, list[SyntheticGraph]] = {}
    for family in wanted:
        if family.value not in available:
            raise MissingFamily(f"family {family.value!r} not in corpus manifest")
        graphs = []
        for entry in available[family.value]:
            g, _ = read_edge_list_csv(corpus_dir / entry["file"])
            survey = SurveyMeta(
                respondents=int(entry["survey"]["respondents"]),
                max_reportable=int(entry["survey"]["max_reportable"]),
                avg_collaborations=float(entry["survey"]["avg_collaborations"]),
            )
            cfg_dict = entry.get("config")
            cfg = None
            if cfg_dict:
                cfg = GeneratorConfig(
                    prob_new=cfg_dict["prob_new"],
                    connections_range=tuple(cfg_dict["connections_range"]),
                    respondent_cap=cfg_dict["respondent_cap"],
                    prob_resp=cfg_dict["prob_resp"],
                    nonresp_prob=cfg_dict["nonresp_prob"],
                    nonresp_edges=tuple(cfg_dict["nonresp_edges"]),
                    size_bounds=None
                    if cfg_dict["size_bounds"] is None
                    else tuple(cfg_dict["size_bounds"]),
                    seed=cfg_dict["seed"],
                )
            graphs.append(
                SyntheticGraph(
                    graph=g,
                    survey=survey,
                    family=family,
                    k=int(entry["k"]),
                    seed=int(entry["seed"]),
                    attempts=int(entry["attempts"]),
                    config=cfg,
                )
            )
        graphs.sort(key=lambda sg: sg.k)
        out[family] = graphs
    return out
