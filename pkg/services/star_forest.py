"""Star forests and exact containment testing.

A star forest is kept as its non-increasing list of star sizes. Containment
asks for pairwise vertex-disjoint stars K_{1,n_1}, ..., K_{1,n_s} inside a
graph (not necessarily induced). The test is exact: centers of the stars with
two or more edges are enumerated by backtracking and, for a fixed set of
centers, the leaves are assigned by a b-matching augmenting search. Single-edge
stars are then one maximum matching over the split graph.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING

import networkx as nx

from services.errors import ColorIndexError, ForestSpecError
from services.graph_core import disjoint_union, iter_bits, make_star, popcount

if TYPE_CHECKING:
    from services.free_coloring import EdgeColoring


@dataclass(frozen=True)
class StarForest:
    sizes: tuple

    def __post_init__(self):
        if not self.sizes:
            raise ForestSpecError("a star forest needs at least one star")
        for size in self.sizes:
            if not isinstance(size, int) or isinstance(size, bool) or size < 1:
                raise ForestSpecError(f"star sizes must be positive integers, got {size!r}")
        if any(a < b for a, b in zip(self.sizes, self.sizes[1:])):
            raise ForestSpecError(f"star sizes must be non-increasing, got {list(self.sizes)}")

    @property
    def total_edges(self):
        return sum(self.sizes)

    @property
    def component_count(self):
        return len(self.sizes)

    @property
    def vertex_count(self):
        return self.total_edges + self.component_count

    @property
    def min_size(self):
        return self.sizes[-1]

    def is_uniform(self):
        return self.sizes[0] == self.sizes[-1]

    def all_odd(self):
        return all(size % 2 == 1 for size in self.sizes)

    def as_graph(self):
        return disjoint_union(*(make_star(size) for size in self.sizes))

    def __str__(self):
        return ",".join(str(size) for size in self.sizes)


def normalize(sizes):
    sizes = list(sizes)
    if not sizes:
        raise ForestSpecError("a star forest needs at least one star")
    for size in sizes:
        if not isinstance(size, int) or isinstance(size, bool) or size < 1:
            raise ForestSpecError(f"star sizes must be positive integers, got {size!r}")
    return StarForest(tuple(sorted(sizes, reverse=True)))


def parse_forest(text):
    """Parse the comma form, e.g. ``"3,2,2"``."""
    parts = [part.strip() for part in text.split(",")]
    if not text.strip() or any(not part for part in parts):
        raise ForestSpecError(f"malformed forest spec {text!r}; expected e.g. 3,2,2")
    try:
        sizes = [int(part) for part in parts]
    except ValueError:
        raise ForestSpecError(f"malformed forest spec {text!r}; sizes must be integers")
    return normalize(sizes)


def _leaves_assignable(rows, sizes, centers, center_mask):
    """Can every placed center get its full set of private leaves? Leaves exclude all centers."""
    candidates = [rows[v] & ~center_mask for v in centers]

    owner = {}
    held = [0] * len(centers)

    def augment(i, visited):
        for w in iter_bits(candidates[i] & ~held[i]):
            bit = 1 << w
            if visited[0] & bit:
                continue
            visited[0] |= bit
            j = owner.get(w)
            if j is None or augment(j, visited):
                if j is not None:
                    held[j] &= ~bit
                owner[w] = i
                held[i] |= bit
                return True
        return False

    for i in range(len(centers)):
        for _ in range(sizes[i]):
            if not augment(i, [0]):
                return False
    return True


def _room_for_edges(rows, sizes, centers, center_mask, edges):
    """Can ``edges`` disjoint single edges sit beside the placed stars?

    Each center is split into one copy per leaf it needs. Once some matching
    saturates the copies, a maximum matching of the split graph saturating
    them exists too, and its edges between non-centers are the single edges.
    """
    split = nx.Graph()
    for i, (v, size) in enumerate(zip(centers, sizes)):
        for w in iter_bits(rows[v] & ~center_mask):
            split.add_edges_from(((("center", i, copy), w) for copy in range(size)))
    for u, row in enumerate(rows):
        if (center_mask >> u) & 1:
            continue
        split.add_edges_from((u, w) for w in iter_bits(row & ~center_mask) if w > u)
    matching = nx.max_weight_matching(split, maxcardinality=True)
    return len(matching) >= sum(sizes) + edges


def _place(rows, sizes, edges, order, degrees, i, centers, center_mask, start):
    if i == len(sizes):
        return _room_for_edges(rows, sizes, centers, center_mask, edges) if edges else True
    size = sizes[i]
    for pos in range(start, len(order)):
        v = order[pos]
        if degrees[v] < size:
            break
        bit = 1 << v
        if center_mask & bit:
            continue
        mask = center_mask | bit
        if popcount(rows[v] & ~mask) < size:
            continue
        centers.append(v)
        if _leaves_assignable(rows, sizes, centers, mask):
            # equal-size stars are interchangeable: keep their centers in order
            following = pos + 1 if i + 1 < len(sizes) and sizes[i + 1] == size else 0
            if _place(rows, sizes, edges, order, degrees, i + 1, centers, mask, following):
                return True
        centers.pop()
    return False


def rows_contain_forest(rows, sizes):
    """Containment on raw adjacency rows; ``sizes`` must be non-increasing.

    Stars with two or more edges get their centers by backtracking; the
    single-edge stars are found afterwards by one maximum matching.
    """
    degrees = [popcount(row) for row in rows]
    if sum(degrees) // 2 < sum(sizes):
        return False
    if sum(1 for d in degrees if d) < sum(sizes) + len(sizes):
        return False
    ranked = sorted(degrees, reverse=True)
    for i, size in enumerate(sizes):
        if ranked[i] < size:
            return False
    stars = tuple(size for size in sizes if size > 1)
    edges = len(sizes) - len(stars)
    if not stars:
        return _room_for_edges(rows, (), [], 0, edges)
    order = sorted((v for v, d in enumerate(degrees) if d >= stars[-1]),
                   key=lambda v: (-degrees[v], v))
    return _place(rows, stars, edges, order, degrees, 0, [], 0, 0)


def contains_star_forest(g, forest):
    return rows_contain_forest(g.rows, forest.sizes)


def color_class_rows(g, coloring, color):
    if not 0 <= color < coloring.q:
        raise ColorIndexError(f"color {color} outside 0..{coloring.q - 1}")
    rows = [0] * g.vertex_count
    for (u, v), c in zip(coloring.edges, coloring.colors):
        if c == color:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows


def contains_in_color(g, coloring: "EdgeColoring", color, forest):
    """Containment inside the spanning subgraph of edges with the given color."""
    return rows_contain_forest(color_class_rows(g, coloring, color), forest.sizes)
