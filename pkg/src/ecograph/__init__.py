"""Collaboration-structure analysis for economic ecosystem graphs.

Library layout:
  graph      immutable simple undirected graphs and edge-list I/O
  metrics    network metrics and the MetricsBundle
  community  deterministic greedy modularity maximization
  formulas   the C0..C14 collaboration indices and the rescaled C10
  synthgen   snowball-survey simulation and sweep corpora
  evaluation formula-effectiveness tournament
  fixtures   published city metric bundles
  cli        command-line entry points
"""

__version__ = "0.1.0"

from .graph import (  # noqa: F401
    ComponentPartition,
    Graph,
    SimplificationReport,
    connected_components,
    from_edge_list,
    permute_labels,
)
from .metrics import MetricsBundle, SurveyMeta, compute_bundle  # noqa: F401
from .community import CommunityPartition, detect_communities, modularity_of  # noqa: F401
from .formulas import (  # noqa: F401
    FormulaId,
    FormulaInput,
    FormulaValue,
    evaluate,
    evaluate_all,
    rescale_c10,
)
from .synthgen import (  # noqa: F401
    GeneratorConfig,
    SweepFamily,
    SyntheticGraph,
    generate_corpus,
    generate_graph,
    sweep_params,
)
from .evaluation import (  # noqa: F401
    CorpusEvaluation,
    EffectivenessScore,
    effectiveness,
    evaluate_corpus,
    rank_by_formula,
)
