"""Seeded random graphs for the property harness and the ``random:`` source."""
import itertools

import networkx as nx
import numpy as np

from services.graph_core import Graph


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_graph(n, p, seed=None):
    """G(n, p) drawn with numpy."""
    rng = _rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    if not pairs:
        return Graph.from_edges(n, [])
    keep = rng.random(len(pairs)) < p
    return Graph.from_edges(n, [pair for pair, chosen in zip(pairs, keep) if chosen])


def random_graph_max_degree(n, p, degree_cap, seed=None):
    """G(n, p), then edges are dropped in random order until no degree exceeds the cap."""
    rng = _rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    degrees = np.zeros(n, dtype=np.int64)
    edges = []
    for index in rng.permutation(len(pairs)):
        u, v = pairs[index]
        if rng.random() >= p:
            continue
        if degrees[u] < degree_cap and degrees[v] < degree_cap:
            degrees[u] += 1
            degrees[v] += 1
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_bipartite(a, b, p, seed=None):
    rng = _rng(seed)
    mask = rng.random((a, b)) < p
    return Graph.from_edges(a + b, [(int(i), a + int(j)) for i, j in zip(*np.nonzero(mask))])


def random_regular(degree, n, seed=None):
    """Random ``degree``-regular simple graph on ``n`` vertices (networkx pairing model)."""
    rng = _rng(seed)
    nxg = nx.random_regular_graph(degree, n, seed=int(rng.integers(0, 2**31 - 1)))
    return Graph.from_edges(n, [(int(u), int(v)) for u, v in nxg.edges()])


def random_graph_with_max_degree(n, degree, seed=None):
    """Graph with maximum degree exactly ``degree``: a random regular graph
    thinned at random, except that one anchor vertex keeps all its edges.
    """
    rng = _rng(seed)
    edges = random_regular(degree, n, seed=rng).edges()
    keep = rng.random(len(edges)) < rng.uniform(0.5, 1.0)
    anchor = int(rng.integers(0, n))
    return Graph.from_edges(n, [e for e, k in zip(edges, keep) if k or anchor in e])


def random_permutation(n, seed=None):
    return [int(v) for v in _rng(seed).permutation(n)]
