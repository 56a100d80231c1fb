import io

import networkx as nx
import pytest

from services.errors import CanonicalFormError, EnumerationBudgetError, Graph6DecodeError, GraphError
from services.generators import random_graph, random_permutation
from services.graph_core import (
    Graph,
    canonical_form,
    canonical_graph,
    disjoint_union,
    enumerate_graphs,
    enumerate_graphs_on,
    format_edge_list,
    graph6_decode,
    graph6_encode,
    is_isomorphic,
    load_graph,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_empty,
    make_path,
    make_petersen,
    make_star,
    parse_edge_list,
)


def test_graph_rejects_loops_and_repeats():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_degrees_and_components():
    g = disjoint_union(make_star(3), make_complete(3), make_empty(2))
    assert g.vertex_count == 9
    assert g.edge_count == 6
    assert g.degree_sequence() == (3, 2, 2, 2, 1, 1, 1, 0, 0)
    assert [len(c) for c in g.components()] == [4, 3, 1, 1]
    stripped, kept = g.without_isolated()
    assert stripped.vertex_count == 7
    assert kept == list(range(7))


def test_petersen_is_cubic():
    p = make_petersen()
    assert p.vertex_count == 10
    assert p.edge_count == 15
    assert p.is_regular(3)
    assert nx.is_isomorphic(p.to_networkx(), nx.petersen_graph())


def test_graph6_known_codes():
    assert graph6_encode(make_complete(3)) == "Bw"
    assert graph6_encode(make_empty(0)) == "?"
    assert graph6_decode("Bw") == make_complete(3)
    assert graph6_decode(">>graph6<<Bw\n") == make_complete(3)


def test_graph6_matches_networkx(rng):
    for n in (1, 2, 5, 9, 17, 63, 70):
        g = random_graph(n, 0.4, seed=rng)
        expected = nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()
        assert graph6_encode(g) == expected
        assert graph6_decode(expected) == g


@pytest.mark.parametrize("text, offset", [
    ("B\x7f", 1),
    ("B", 1),
    ("Bww", 2),
    ("Bx", 1),
])
def test_graph6_decode_errors_carry_offsets(text, offset):
    with pytest.raises(Graph6DecodeError) as excinfo:
        graph6_decode(text)
    assert excinfo.value.offset == offset


def test_edge_list_round_trip_and_errors():
    g = make_cycle(5)
    text = format_edge_list(g)
    assert text.splitlines()[0] == "5 5"
    assert parse_edge_list(text) == g
    with pytest.raises(GraphError, match="line 2"):
        parse_edge_list("3 1\n0 x\n")
    with pytest.raises(GraphError, match="announces 2"):
        parse_edge_list("3 2\n0 1\n")


def test_load_graph_sources(tmp_path, monkeypatch):
    assert load_graph("g6:Bw") == make_complete(3)
    path = tmp_path / "p4.txt"
    path.write_text(format_edge_list(make_path(4)))
    assert load_graph(f"edgelist:{path}") == make_path(4)
    monkeypatch.setattr("sys.stdin", io.StringIO("2 1\n0 1\n"))
    assert load_graph("edgelist:-") == make_complete(2)
    assert load_graph("random:8:0.5", seed=3) == load_graph("random:8:0.5", seed=3)
    with pytest.raises(GraphError):
        load_graph("adjacency:foo")


def test_canonical_form_is_label_invariant(rng):
    for _ in range(60):
        g = random_graph(int(rng.integers(2, 11)), 0.35, seed=rng)
        h = g.relabel(random_permutation(g.vertex_count, seed=rng))
        assert canonical_form(g) == canonical_form(h)
        assert canonical_graph(g) == canonical_graph(h)


def test_canonical_form_separates_non_isomorphic(rng):
    graphs = [random_graph(7, 0.4, seed=rng) for _ in range(40)]
    for a in graphs[:20]:
        for b in graphs[20:]:
            assert is_isomorphic(a, b) == nx.is_isomorphic(a.to_networkx(), b.to_networkx())


def test_canonical_form_handles_regular_graphs():
    # same degree sequence, not isomorphic
    assert not is_isomorphic(make_cycle(6), disjoint_union(make_cycle(3), make_cycle(3)))
    k33 = make_complete_bipartite(3, 3)
    assert not is_isomorphic(k33, Graph.from_networkx(nx.circular_ladder_graph(3)))
    assert is_isomorphic(k33, Graph.from_networkx(nx.circulant_graph(6, [1, 3])))


def test_canonical_form_cap():
    with pytest.raises(CanonicalFormError):
        canonical_form(make_empty(200))


@pytest.mark.parametrize("edges, count", [(1, 1), (2, 2), (3, 5), (4, 11), (5, 26), (6, 68)])
def test_enumeration_counts(edges, count):
    graphs = enumerate_graphs(edges)
    assert len(graphs) == count
    assert all(g.edge_count == edges and g.min_degree() >= 1 for g in graphs)


def test_enumeration_classes_are_distinct_and_canonical():
    graphs = enumerate_graphs(4)
    for i, a in enumerate(graphs):
        assert canonical_graph(a) == a
        for b in graphs[i + 1:]:
            assert not nx.is_isomorphic(a.to_networkx(), b.to_networkx())


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetError):
        enumerate_graphs(9, budget=8)
    with pytest.raises(GraphError):
        enumerate_graphs(0)


@pytest.mark.parametrize("vertices, count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_enumeration_by_vertex_count(vertices, count):
    graphs = enumerate_graphs_on(vertices)
    assert len(graphs) == count
    assert all(g.vertex_count == vertices for g in graphs)
    assert len({canonical_form(g) for g in graphs}) == count


def test_vertex_enumeration_agrees_with_atlas():
    atlas = {}
    for nxg in nx.graph_atlas_g()[1:]:
        atlas[nxg.number_of_nodes()] = atlas.get(nxg.number_of_nodes(), 0) + 1
    for n in range(1, 7):
        assert len(enumerate_graphs_on(n)) == atlas[n]


def test_vertex_enumeration_budget():
    with pytest.raises(EnumerationBudgetError):
        enumerate_graphs_on(9, budget=8)
    with pytest.raises(GraphError):
        enumerate_graphs_on(-1)
