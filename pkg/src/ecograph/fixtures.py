"""Published metric bundles for three surveyed innovation ecosystems.

These are shipped as fixtures: the underlying survey graphs are not
redistributable, so the bundles cannot be recomputed from raw data. The
core ratio was never published for these cities and stays None; formulas
that need it report a missing-field error instead of guessing.
"""

from __future__ import annotations

from .metrics import MetricsBundle, SurveyMeta

SAO_PAULO = MetricsBundle(
    n_nodes=216,
    n_edges=360,
    avg_shortest_path=4.32,
    central_point_dominance=0.24,
    clustering=0.30,
    density=0.015,
    global_efficiency=0.27,
    avg_eccentricity=6.73,
    avg_degree=3.37,
    modularity=0.68,
    avg_edge_weight=3.43,
    transitivity=0.08,
    rich_club=0.25,
    core_ratio=None,
    avg_collaborations=10.38,
)

MEXICO_CITY = MetricsBundle(
    n_nodes=299,
    n_edges=542,
    avg_shortest_path=3.82,
    central_point_dominance=0.20,
    clustering=0.18,
    density=0.012,
    global_efficiency=0.29,
    avg_eccentricity=5.62,
    avg_degree=3.66,
    modularity=0.62,
    avg_edge_weight=3.48,
    transitivity=0.05,
    rich_club=0.20,
    core_ratio=None,
    avg_collaborations=12.33,
)

VALENCIA = MetricsBundle(
    n_nodes=180,
    n_edges=623,
    avg_shortest_path=3.01,
    central_point_dominance=0.12,
    clustering=0.38,
    density=0.037,
    global_efficiency=0.37,
    avg_eccentricity=4.23,
    avg_degree=6.99,
    modularity=0.37,
    avg_edge_weight=3.54,
    transitivity=0.25,
    rich_club=0.56,
    core_ratio=None,
    avg_collaborations=15.05,
)

CITY_BUNDLES: dict[str, MetricsBundle] = {
    "sao-paulo": SAO_PAULO,
    "mexico-city": MEXICO_CITY,
    "valencia": VALENCIA,
}

#: survey metadata matching the bundles; the reportable cap was never
#: published, so the default instrument cap of 24 is used.
CITY_SURVEYS: dict[str, SurveyMeta] = {
    name: SurveyMeta(
        respondents=bundle.n_nodes,
        max_reportable=24,
        avg_collaborations=bundle.avg_collaborations,
    )
    for name, bundle in CITY_BUNDLES.items()
}
