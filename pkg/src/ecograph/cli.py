"""Command-line surface.

Subcommands: metrics, index, synth, sweep, evaluate.
Exit codes: 0 ok, 1 usage, 2 parse error, 3 metric precondition,
4 generator retry exhausted, 5 corpus/family missing.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .errors import (
    EcographError,
    MissingFamily,
    NoEdges,
    ParseError,
    RetryExhausted,
    TooSmall,
)
from .evaluation import (
    FAMILY_ORDER,
    TOURNAMENT_FORMULAS,
    evaluate_corpus,
    write_score_sidecar,
    write_score_table,
    write_series,
)
from .formulas import FormulaId, FormulaInput, evaluate_all, result_to_json_dict
from .graph import read_edge_list_csv
from .metrics import MetricsBundle, SurveyMeta, compute_bundle
from .report import config_hash, write_report
from .synthgen import (
    SweepFamily,
    derive_seed,
    generate_corpus,
    generate_graph,
    sweep_params,
    write_corpus,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_GENERATOR = 4
EXIT_CORPUS = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()[:16]


def _bundle_from_json(path: Path) -> MetricsBundle:
    data = json.loads(path.read_text(encoding="utf-8"))
    fields = (
        "avg_shortest_path", "central_point_dominance", "clustering", "density",
        "global_efficiency", "avg_eccentricity", "avg_degree", "modularity",
        "avg_edge_weight", "transitivity", "rich_club", "core_ratio",
        "avg_collaborations",
    )
    kwargs = {name: data.get(name) for name in fields}
    bundle = MetricsBundle(
        n_nodes=int(data.get("n_nodes", 0)),
        n_edges=int(data.get("n_edges", 0)),
        rich_club_k=data.get("rich_club_k"),
        collaborations_from_degree=bool(data.get("collaborations_from_degree", False)),
        **kwargs,
    )
    bundle.validate()
    return bundle


def _emit(data: dict, out: str | None) -> None:
    if out:
        write_report(data, out)
    else:
        from .report import canonical_json

        print(canonical_json(data))


def _indices_json(bundle: MetricsBundle, m: int) -> list[dict]:
    results = evaluate_all(FormulaInput(bundle=bundle, m=m))
    return [result_to_json_dict(fid, results[fid]) for fid in FormulaId]


def cmd_metrics(args) -> int:
    input_path = Path(args.input)
    graph, simplification = read_edge_list_csv(input_path, node_list=args.nodes)
    survey = SurveyMeta.from_json(args.survey) if args.survey else None
    bundle = compute_bundle(graph, survey=survey)
    provenance_inputs = {
        "input_digest": _file_digest(input_path),
        "nodes_digest": _file_digest(Path(args.nodes)) if args.nodes else None,
        "survey_digest": _file_digest(Path(args.survey)) if args.survey else None,
        "m": args.m,
    }
    report = {
        "provenance": {
            "input": str(args.input),
            "m": args.m,
            "tool_version": __version__,
            "config_hash": config_hash(provenance_inputs),
        },
        "simplification": {
            "loops_dropped": simplification.loops_dropped,
            "duplicates_merged": simplification.duplicates_merged,
        },
        "bundle": bundle.to_json_dict(),
        "indices": _indices_json(bundle, args.m),
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_index(args) -> int:
    if bool(args.bundle) == bool(args.input):
        print("index: give exactly one of --bundle or --input", file=sys.stderr)
        return EXIT_USAGE
    if args.bundle:
        bundle = _bundle_from_json(Path(args.bundle))
        source = str(args.bundle)
    else:
        graph, _ = read_edge_list_csv(Path(args.input), node_list=args.nodes)
        survey = SurveyMeta.from_json(args.survey) if args.survey else None
        bundle = compute_bundle(graph, survey=survey)
        source = str(args.input)
    report = {
        "provenance": {
            "input": source,
            "m": args.m,
            "tool_version": __version__,
            "config_hash": config_hash({"m": args.m, "source": source}),
        },
        "indices": _indices_json(bundle, args.m),
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    family = SweepFamily.from_string(args.family)
    cfg = sweep_params(family, args.k, literal_prob_resp=args.literal_prob_resp)
    from dataclasses import replace

    cfg = replace(cfg, seed=derive_seed(args.seed, family.value, args.k))
    sg = generate_graph(cfg, family=family, k=args.k)
    out_dir = Path(args.out)
    write_corpus({family: [sg]}, out_dir, master_seed=args.seed)
    print(f"wrote {family.value} k={args.k} ({sg.graph.n_nodes} nodes, "
          f"{sg.graph.n_edges} edges) to {out_dir}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    families = (
        list(FAMILY_ORDER)
        if args.family == "all"
        else [SweepFamily.from_string(args.family)]
    )
    corpora = {}
    for family in families:
        corpora[family] = generate_corpus(
            family, args.seed, literal_prob_resp=args.literal_prob_resp
        )
        print(f"generated {family.value}: 200 graphs")
    write_corpus(corpora, Path(args.out), master_seed=args.seed)
    print(f"wrote corpus to {args.out}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    from .synthgen import read_corpus

    families = (
        None
        if not args.families
        else [SweepFamily.from_string(f) for f in args.families]
    )
    corpora = read_corpus(Path(args.corpus_dir), families=families)
    if not corpora:
        raise MissingFamily(f"no families found in {args.corpus_dir}")
    formulas = (
        TOURNAMENT_FORMULAS
        if not args.formulas
        else tuple(FormulaId.from_string(f) for f in args.formulas)
    )
    evaluation, series = evaluate_corpus(corpora, formulas=formulas, m=args.m)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ordered_families = [f for f in FAMILY_ORDER if f in corpora] + [
        f for f in corpora if f not in FAMILY_ORDER
    ]
    write_score_table(evaluation, out_dir / "table2.csv", ordered_families)
    write_score_sidecar(evaluation, out_dir / "table2.json", ordered_families)
    write_series(series, out_dir)
    if args.plots:
        from .plotting import plot_effectiveness, plot_series

        plot_effectiveness(evaluation, ordered_families, out_dir / "effectiveness.png")
        for family in ordered_families:
            key = (evaluation.winner, family)
            if key in series:
                plot_series(
                    series[key],
                    evaluation.winner,
                    family,
                    out_dir / f"series_{evaluation.winner.value}_{family.value}.png",
                )
    print(f"winner: {evaluation.winner.value} "
          f"(mean auc {evaluation.mean_auc[evaluation.winner]:.4f})")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="ecograph", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="compute the metric bundle and all indices")
    p.add_argument("input", help="edge-list CSV (source,target[,weight])")
    p.add_argument("--format", choices=["edgelist"], default="edgelist")
    p.add_argument("--nodes", help="companion node-list file for isolated nodes")
    p.add_argument("--survey", help="survey metadata JSON")
    p.add_argument("--m", type=int, default=24, help="max reportable collaborations")
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("index", help="evaluate the collaboration indices")
    p.add_argument("--input", help="edge-list CSV")
    p.add_argument("--bundle", help="precomputed metric bundle JSON")
    p.add_argument("--nodes")
    p.add_argument("--survey")
    p.add_argument("--m", type=int, default=24)
    p.add_argument("--out")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("synth", help="generate one synthetic survey graph")
    p.add_argument("--family", required=True,
                   choices=[f.value for f in SweepFamily])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=54)
    p.add_argument("--literal-prob-resp", action="store_true")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sweep", help="generate a 200-graph sweep corpus")
    p.add_argument("--family", default="all",
                   choices=["all", *(f.value for f in SweepFamily)])
    p.add_argument("--seed", type=int, default=54)
    p.add_argument("--literal-prob-resp", action="store_true")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evaluate", help="run the effectiveness tournament")
    p.add_argument("corpus_dir", help="directory with corpus CSVs and manifest.json")
    p.add_argument("--families", nargs="*",
                   help="subset of families (default: all in the manifest)")
    p.add_argument("--formulas", nargs="*", help="subset of formula ids, e.g. C10")
    p.add_argument("--m", type=int, default=None,
                   help="reportable cap (default: per-family corpus maximum)")
    p.add_argument("--plots", action="store_true", help="render figures as PNGs")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) is not None and not 1 <= args.k <= 200:
        print(f"ecograph: error: --k must be in [1, 200], got {args.k}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"ecograph: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (TooSmall, NoEdges) as exc:
        print(f"ecograph: precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except RetryExhausted as exc:
        print(f"ecograph: generator failed: {exc}", file=sys.stderr)
        return EXIT_GENERATOR
    except MissingFamily as exc:
        print(f"ecograph: corpus error: {exc}", file=sys.stderr)
        return EXIT_CORPUS
    except EcographError as exc:
        print(f"ecograph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
