"""Star-free edge colorings.

``lemma_free_coloring`` realises the decomposition lemma for a pair of single
stars: a graph with Delta <= n+m-3, or with Delta <= n+m-2 and n, m both odd,
has a 2-coloring whose color-0 (red) subgraph has maximum degree at most n-1
and whose color-1 (blue) subgraph has maximum degree at most m-1.
"""
import logging
from dataclasses import dataclass

from services.edge_coloring import embed_regular, proper_edge_coloring, two_factorize
from services.errors import ArityError, ColorIndexError, DecompositionHypothesisError, GraphError
from services.star_forest import color_class_rows, rows_contain_forest

logger = logging.getLogger(__name__)

RED, BLUE = 0, 1


@dataclass(frozen=True)
class EdgeColoring:
    """Total assignment of colors 0..q-1 to the edges of a graph.

    ``edges`` and ``colors`` are parallel tuples; edges are ``(u, v)`` with
    ``u < v``.
    """

    edges: tuple
    colors: tuple
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ColorIndexError(f"a coloring needs at least one color, got q={self.q}")
        if len(self.edges) != len(self.colors):
            raise GraphError("edges and colors differ in length")
        for color in self.colors:
            if not 0 <= color < self.q:
                raise ColorIndexError(f"color {color} outside 0..{self.q - 1}")

    @classmethod
    def from_mapping(cls, mapping, q):
        items = sorted(mapping.items())
        return cls(tuple(edge for edge, _ in items), tuple(color for _, color in items), q)

    def color_of(self, u, v):
        return dict(zip(self.edges, self.colors))[(min(u, v), max(u, v))]

    def color_class(self, color):
        return [edge for edge, c in zip(self.edges, self.colors) if c == color]

    def class_max_degree(self, color):
        degree = {}
        for u, v in self.color_class(color):
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        return max(degree.values(), default=0)

    def covers(self, g):
        return sorted(self.edges) == g.edges()

    def to_records(self):
        return [{"edge": [u, v], "color": c} for (u, v), c in sorted(zip(self.edges, self.colors))]


def lemma_branch(g, n, m):
    """1 or 2 for the branch of the decomposition lemma that applies, else None."""
    delta = g.max_degree()
    if delta <= n + m - 3:
        return 1
    if delta <= n + m - 2 and n % 2 == 1 and m % 2 == 1:
        return 2
    return None


def _split_classes(g, budgets):
    """Hand proper color classes to colors in order, ``budgets[i]`` classes each."""
    classes = proper_edge_coloring(g).classes()
    mapping = {}
    color = 0
    taken = 0
    for bucket in classes:
        while color < len(budgets) - 1 and taken >= budgets[color]:
            color += 1
            taken = 0
        for edge in bucket:
            mapping[edge] = color
        taken += 1
    return mapping


def lemma_free_coloring(g, n, m):
    """A (K_{1,n}, K_{1,m})-free 2-coloring with red degree <= n-1, blue <= m-1."""
    branch = lemma_branch(g, n, m)
    if branch is None:
        raise DecompositionHypothesisError(
            f"hypotheses of the decomposition lemma not met: Delta={g.max_degree()}, "
            f"n={n}, m={m} (need Delta <= {n + m - 3}, or Delta <= {n + m - 2} with n, m odd)"
        )
    if g.edge_count == 0:
        return EdgeColoring((), (), 2)

    if branch == 1:
        mapping = _split_classes(g, [n - 1, m - 1])
    else:
        core, kept = g.without_isolated()
        h, embedding = embed_regular(core)
        factors = two_factorize(h).factors
        red_factors = (n - 1) // 2
        back = {embedding[i]: kept[i] for i in range(core.vertex_count)}
        mapping = {}
        for index, factor in enumerate(factors):
            color = RED if index < red_factors else BLUE
            for a, b in factor:
                if a in back and b in back:
                    u, v = back[a], back[b]
                    if g.has_edge(u, v):
                        mapping[(min(u, v), max(u, v))] = color
    coloring = EdgeColoring.from_mapping(mapping, 2)
    logger.debug("branch %d coloring: red max degree %d, blue max degree %d",
                 branch, coloring.class_max_degree(RED), coloring.class_max_degree(BLUE))
    return coloring


def multicolor_free_coloring(g, sizes):
    """q-color generalisation of the first branch.

    Needs Delta + 1 <= sum(n_i - 1); color i then has maximum degree <= n_i - 1.
    """
    budgets = [size - 1 for size in sizes]
    if len(sizes) < 1:
        raise ArityError("at least one star size is required")
    if g.max_degree() + 1 > sum(budgets):
        raise DecompositionHypothesisError(
            f"hypotheses of the decomposition lemma not met: Delta + 1 = {g.max_degree() + 1} "
            f"exceeds sum(n_i - 1) = {sum(budgets)}"
        )
    if g.edge_count == 0:
        return EdgeColoring((), (), len(sizes))
    return EdgeColoring.from_mapping(_split_classes(g, budgets), len(sizes))


def verify_free(g, coloring, forests):
    """True iff no color class i contains forests[i]."""
    if len(forests) != coloring.q:
        raise ArityError(f"{len(forests)} forests given for a {coloring.q}-coloring")
    if not coloring.covers(g):
        raise GraphError("coloring does not cover exactly the edges of the graph")
    return not any(
        rows_contain_forest(color_class_rows(g, coloring, i), forest.sizes)
        for i, forest in enumerate(forests)
    )
