import random

import pytest

from ecograph.errors import EmptyInput, InvalidBijection, ParseError
from ecograph.graph import (
    connected_components,
    from_edge_list,
    permute_labels,
    read_edge_list_csv,
    write_edge_list_csv,
)

from oracles import random_graph


def path3():
    g, _ = from_edge_list([("a", "b"), ("b", "c")])
    return g


def test_simplification_counts():
    g, rep = from_edge_list([("a", "b"), ("b", "a"), ("a", "a")])
    assert g.nodes == frozenset({"a", "b"})
    assert g.n_edges == 1
    assert rep.loops_dropped == 1
    assert rep.duplicates_merged == 1


def test_path_construction():
    g = path3()
    assert g.n_nodes == 3
    assert g.n_edges == 2


def test_first_weight_wins():
    g, rep = from_edge_list([("a", "b", 3), ("a", "b", 5)])
    assert g.edge_weight("a", "b") == 3
    assert rep.duplicates_merged == 1


def test_empty_input_raises():
    with pytest.raises(EmptyInput):
        from_edge_list([])


def test_declared_isolated_nodes():
    g, _ = from_edge_list([("a", "b")], declared_nodes=["z"])
    assert "z" in g.nodes
    assert g.degree("z") == 0


def test_components_path_plus_isolated():
    g, _ = from_edge_list([("a", "b"), ("b", "c")], declared_nodes=["d"])
    parts = connected_components(g)
    assert len(parts) == 2
    assert sorted(len(c) for c in parts.components) == [1, 3]
    assert parts.largest() == frozenset({"a", "b", "c"})


def test_components_complete_graph():
    g, _ = from_edge_list(
        [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]
    )
    assert len(connected_components(g)) == 1


def test_components_empty_graph():
    from ecograph.graph import Graph, ComponentPartition

    g = Graph(frozenset(), frozenset())
    assert connected_components(g) == ComponentPartition(())


def test_permute_swap_triangle():
    g, _ = from_edge_list([("a", "b"), ("b", "c"), ("a", "c")])
    h = permute_labels(g, {"a": "b", "b": "a", "c": "c"})
    assert sorted(h.degrees().values()) == sorted(g.degrees().values())
    assert h.edges == g.edges


def test_permute_identity():
    g = path3()
    assert permute_labels(g, {v: v for v in g.nodes}) == g


def test_permute_path_reversal():
    g = path3()
    h = permute_labels(g, {"a": "c", "b": "b", "c": "a"})
    assert h.has_edge("c", "b") and h.has_edge("b", "a")


def test_permute_invalid_maps():
    g = path3()
    with pytest.raises(InvalidBijection):
        permute_labels(g, {"a": "x", "b": "y"})  # not total
    with pytest.raises(InvalidBijection):
        permute_labels(g, {"a": "x", "b": "x", "c": "y"})  # not injective


def test_degree_sum_identity_and_idempotence():
    rng = random.Random(1234)
    for _ in range(100):
        names, edges = random_graph(rng)
        g, _ = from_edge_list(sorted(edges))
        assert sum(g.degrees().values()) == 2 * g.n_edges
        rebuilt, rep = from_edge_list(sorted(g.edges))
        assert rebuilt == g
        assert rep.loops_dropped == 0 and rep.duplicates_merged == 0


def test_components_partition_property():
    rng = random.Random(99)
    for _ in range(100):
        names, edges = random_graph(rng)
        g, _ = from_edge_list(sorted(edges), declared_nodes=names)
        parts = connected_components(g)
        union = set()
        for comp in parts.components:
            assert not (union & comp)
            union |= comp
        assert union == g.nodes
        for u, v in g.edges:
            assert sum(1 for c in parts.components if u in c and v in c) == 1


def test_permutation_degree_multiset_property():
    rng = random.Random(5)
    for _ in range(30):
        names, edges = random_graph(rng)
        g, _ = from_edge_list(sorted(edges))
        shuffled = sorted(g.nodes)
        rng.shuffle(shuffled)
        mapping = dict(zip(sorted(g.nodes), shuffled))
        h = permute_labels(g, mapping)
        assert sorted(h.degrees().values()) == sorted(g.degrees().values())


def test_csv_round_trip(tmp_path):
    g, _ = from_edge_list([("a", "b", 2.5), ("b", "c", 1.25)])
    path = tmp_path / "g.csv"
    write_edge_list_csv(g, path)
    g2, rep = read_edge_list_csv(path)
    assert g2 == g
    assert rep.loops_dropped == 0


def test_csv_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a;b\n")
    with pytest.raises(ParseError) as exc:
        read_edge_list_csv(path)
    assert exc.value.line == 1


def test_csv_bad_weight(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("source,target,weight\na,b,zero\n")
    with pytest.raises(ParseError) as exc:
        read_edge_list_csv(path)
    assert exc.value.line == 2


def test_csv_node_list(tmp_path):
    edge = tmp_path / "g.csv"
    edge.write_text("source,target\na,b\n")
    nodes = tmp_path / "nodes.txt"
    nodes.write_text("a\nb\nz\n")
    g, _ = read_edge_list_csv(edge, node_list=nodes)
    assert g.nodes == frozenset({"a", "b", "z"})
