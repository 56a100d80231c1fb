"""Simple undirected graphs stored as adjacency bit rows.

Vertices are labelled 0..n-1 and row ``v`` is an int whose bit ``w`` is set
when ``v`` and ``w`` are adjacent. Besides the value type this module holds
the small-graph plumbing the searches rely on: standard generators,
canonical codes, isomorphism-free enumeration by edge or vertex count, and the
graph6 and edge-list text formats.
"""
import logging
import sys
from dataclasses import dataclass
from functools import cached_property, lru_cache

import networkx as nx

from config import Config
from services.errors import (
    CanonicalFormError,
    EnumerationBudgetError,
    Graph6DecodeError,
    GraphError,
)

logger = logging.getLogger(__name__)

CanonicalCode = bytes

GRAPH6_HEADER = ">>graph6<<"


def iter_bits(mask):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    rows: tuple

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise GraphError(f"vertex_count must be non-negative, got {n}")
        if len(self.rows) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(self.rows)}")
        full = (1 << n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if (row >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not (self.rows[w] >> v) & 1:
                    raise GraphError(f"adjacency not symmetric between {v} and {w}")

    @classmethod
    def from_edges(cls, vertex_count, edges):
        rows = [0] * vertex_count
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if (rows[u] >> v) & 1:
                raise GraphError(f"repeated edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(vertex_count, tuple(rows))

    @cached_property
    def _edge_list(self):
        return tuple(
            (u, v)
            for u, row in enumerate(self.rows)
            for v in iter_bits(row >> (u + 1) << (u + 1))
        )

    def edges(self):
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        return list(self._edge_list)

    @property
    def edge_count(self):
        return len(self._edge_list)

    def degree(self, v):
        return popcount(self.rows[v])

    @cached_property
    def degrees(self):
        return tuple(popcount(row) for row in self.rows)

    def max_degree(self):
        return max(self.degrees, default=0)

    def min_degree(self):
        return min(self.degrees, default=0)

    def degree_sequence(self):
        return tuple(sorted(self.degrees, reverse=True))

    def neighbors(self, v):
        return list(iter_bits(self.rows[v]))

    def has_edge(self, u, v):
        return bool((self.rows[u] >> v) & 1)

    def is_regular(self, degree=None):
        if self.vertex_count == 0:
            return True
        target = self.degrees[0] if degree is None else degree
        return all(d == target for d in self.degrees)

    def components(self):
        """Vertex sets of the connected components, isolated vertices included."""
        seen = 0
        parts = []
        for start in range(self.vertex_count):
            if (seen >> start) & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self.rows[v]
                frontier = reach & ~comp
                comp |= frontier
            seen |= comp
            parts.append(list(iter_bits(comp)))
        return parts

    def induced(self, vertices):
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in iter_bits(self.rows[v]):
                if w in index:
                    row |= 1 << index[w]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def without_isolated(self):
        """Drop isolated vertices. Returns the graph and the kept original labels."""
        kept = [v for v, d in enumerate(self.degrees) if d > 0]
        return self.induced(kept), kept

    def relabel(self, permutation):
        """Vertex ``v`` becomes ``permutation[v]``."""
        n = self.vertex_count
        if sorted(permutation) != list(range(n)):
            raise GraphError("relabelling is not a permutation of the vertices")
        rows = [0] * n
        for v, row in enumerate(self.rows):
            new_row = 0
            for w in iter_bits(row):
                new_row |= 1 << permutation[w]
            rows[permutation[v]] = new_row
        return Graph(n, tuple(rows))

    def with_edge(self, u, v):
        """Copy with edge ``uv`` added; a label equal to vertex_count adds a vertex."""
        n = max(self.vertex_count, u + 1, v + 1)
        rows = list(self.rows) + [0] * (n - self.vertex_count)
        if (rows[u] >> v) & 1:
            raise GraphError(f"repeated edge ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def to_networkx(self):
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.vertex_count))
        nxg.add_edges_from(self._edge_list)
        return nxg

    @classmethod
    def from_networkx(cls, nxg):
        labels = {node: i for i, node in enumerate(sorted(nxg.nodes()))}
        return cls.from_edges(len(labels), [(labels[a], labels[b]) for a, b in nxg.edges()])

    def __str__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count}, g6={graph6_encode(self)})"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def make_empty(n):
    return Graph(n, (0,) * n)


def make_star(n):
    if n < 1:
        raise GraphError(f"a star needs at least one leaf, got {n}")
    return Graph.from_edges(n + 1, [(0, leaf) for leaf in range(1, n + 1)])


def make_path(n):
    """Path on ``n`` vertices (n - 1 edges)."""
    if n < 1:
        raise GraphError(f"a path needs at least one vertex, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n):
    if n < 3:
        raise GraphError(f"a cycle needs at least three vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete(n):
    if n < 1:
        raise GraphError(f"a complete graph needs at least one vertex, got {n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def make_complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def make_petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs):
    """Disjoint union; each graph's labels are shifted past the previous ones."""
    rows = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.rows)
        offset += g.vertex_count
    return Graph(offset, tuple(rows))


def max_degree(g):
    return g.max_degree()


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def _refine(rows, colors):
    """Colour refinement until the partition is equitable.

    Cells keep their relative order, and the order of new cells depends only
    on colour signatures, so the result is invariant under relabelling.
    """
    n = len(rows)
    cells = len(set(colors))
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in iter_bits(rows[v]))))
            for v in range(n)
        ]
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        refined = [ranking[sig] for sig in signatures]
        if len(ranking) == cells:
            return refined
        colors, cells = refined, len(ranking)


def _individualize(colors, v):
    own = colors[v]
    return [2 * c + (1 if c == own and w != v else 0) for w, c in enumerate(colors)]


def _ordered_code(rows, order):
    n = len(order)
    position_rows = [rows[v] for v in order]
    code = 0
    for j in range(1, n):
        target = order[j]
        for i in range(j):
            code = (code << 1) | ((position_rows[i] >> target) & 1)
    return code


def _connected_canonical(rows):
    """Minimum adjacency code of a connected graph over refinement-consistent orders."""
    n = len(rows)
    if n == 1:
        return 0, [0]

    def twins(u, v):
        return rows[u] & ~(1 << v) == rows[v] & ~(1 << u)

    best = [None, None]

    def search(colors):
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            code = _ordered_code(rows, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        tried = []
        for v in target:
            # swapping twins is an automorphism fixing every other vertex
            if any(twins(v, r) for r in tried):
                continue
            tried.append(v)
            search(_refine(rows, _individualize(colors, v)))

    search(_refine(rows, [0] * n))
    return best[0], best[1]


def _code_bytes(n, code):
    width = (n * (n - 1) // 2 + 7) // 8
    return n.to_bytes(2, "big") + code.to_bytes(width, "big")


def canonical_labeling(g):
    """Return ``(code, order)`` where ``order[i]`` is the vertex placed at position i.

    Components are canonised separately and laid out in code order, so the
    search tree stays small on forests of stars and matchings.
    """
    if g.vertex_count > Config.CANON_MAX_VERTICES:
        raise CanonicalFormError(
            f"canonical form supports at most {Config.CANON_MAX_VERTICES} vertices, "
            f"got {g.vertex_count}"
        )
    parts = []
    for comp in g.components():
        sub = g.induced(comp)
        code, order = _connected_canonical(list(sub.rows))
        parts.append((len(comp), code, [comp[i] for i in order]))
    parts.sort(key=lambda part: (part[0], part[1]))
    blob = g.vertex_count.to_bytes(2, "big") + b"".join(
        _code_bytes(size, code) for size, code, _ in parts
    )
    order = [v for _, _, verts in parts for v in verts]
    return blob, order


def canonical_form(g):
    return canonical_labeling(g)[0]


def canonical_graph(g):
    """Relabel ``g`` into its canonical vertex order."""
    return _placed_in_order(g, canonical_labeling(g)[1])


def _placed_in_order(g, order):
    permutation = [0] * g.vertex_count
    for position, v in enumerate(order):
        permutation[v] = position
    return g.relabel(permutation)


def is_isomorphic(a, b):
    if a.vertex_count != b.vertex_count or a.edge_count != b.edge_count:
        return False
    if a.degree_sequence() != b.degree_sequence():
        return False
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_graphs(edge_count, budget=None):
    """One representative per isomorphism class of graphs with ``edge_count``
    edges and no isolated vertices, ordered by (vertex count, canonical code).
    """
    limit = Config.ENUM_MAX_EDGES if budget is None else budget
    if edge_count < 1:
        raise GraphError(f"edge_count must be positive, got {edge_count}")
    if edge_count > limit:
        raise EnumerationBudgetError(
            f"enumeration of {edge_count}-edge graphs exceeds the budget of {limit} edges"
        )
    return [graph for _, graph in _enumeration_layer(edge_count)]


@lru_cache(maxsize=None)
def _enumeration_layer(edge_count):
    if edge_count == 1:
        k2 = make_complete(2)
        return ((canonical_form(k2), k2),)
    seen = {}
    for _, g in _enumeration_layer(edge_count - 1):
        n = g.vertex_count
        candidates = [g.with_edge(u, v) for u in range(n) for v in range(u + 1, n)
                      if not g.has_edge(u, v)]
        candidates.extend(g.with_edge(u, n) for u in range(n))
        candidates.append(disjoint_union(g, make_complete(2)))
        for candidate in candidates:
            code, order = canonical_labeling(candidate)
            if code not in seen:
                seen[code] = _placed_in_order(candidate, order)
    layer = tuple(sorted(seen.items(), key=lambda item: (item[1].vertex_count, item[0])))
    logger.debug("enumerated %d classes with %d edges", len(layer), edge_count)
    return layer


def enumerate_graphs_on(vertex_count, budget=None):
    """One representative per isomorphism class of graphs on exactly
    ``vertex_count`` vertices, isolated vertices allowed, in canonical code order.
    """
    limit = Config.ENUM_MAX_VERTICES if budget is None else budget
    if vertex_count < 0:
        raise GraphError(f"vertex_count must be non-negative, got {vertex_count}")
    if vertex_count > limit:
        raise EnumerationBudgetError(
            f"enumeration of {vertex_count}-vertex graphs exceeds the budget of {limit} vertices"
        )
    return [graph for _, graph in _vertex_layer(vertex_count)]


@lru_cache(maxsize=None)
def _vertex_layer(vertex_count):
    if vertex_count == 0:
        empty = make_empty(0)
        return ((canonical_form(empty), empty),)
    n = vertex_count - 1
    seen = {}
    for _, g in _vertex_layer(n):
        # the new vertex n joins every subset of the old vertices
        for neighbours in range(1 << n):
            rows = [row | (((neighbours >> v) & 1) << n) for v, row in enumerate(g.rows)]
            candidate = Graph(vertex_count, tuple(rows) + (neighbours,))
            code, order = canonical_labeling(candidate)
            if code not in seen:
                seen[code] = _placed_in_order(candidate, order)
    layer = tuple(sorted(seen.items()))
    logger.debug("enumerated %d classes on %d vertices", len(layer), vertex_count)
    return layer


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _graph6_size(n):
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> shift) & 63 for shift in range(30, -1, -6)]


def graph6_encode(g):
    n = g.vertex_count
    bits = [(g.rows[i] >> j) & 1 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    groups = [
        sum(bit << (5 - k) for k, bit in enumerate(bits[start:start + 6]))
        for start in range(0, len(bits), 6)
    ]
    return "".join(chr(63 + value) for value in _graph6_size(n) + groups)


def graph6_decode(text):
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    base = 0
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    text = text.rstrip("\n")
    if not text:
        raise Graph6DecodeError("empty graph6 string", base)
    values = []
    for offset, char in enumerate(text):
        value = ord(char) - 63
        if not 0 <= value <= 63:
            raise Graph6DecodeError(f"invalid graph6 character {char!r}", base + offset)
        values.append(value)

    if values[0] < 63:
        n, pos = values[0], 1
    elif len(values) >= 2 and values[1] == 63:
        if len(values) < 8:
            raise Graph6DecodeError("truncated vertex count", base + len(values))
        n = 0
        for value in values[2:8]:
            n = (n << 6) | value
        pos = 8
    else:
        if len(values) < 4:
            raise Graph6DecodeError("truncated vertex count", base + len(values))
        n = (values[1] << 12) | (values[2] << 6) | values[3]
        pos = 4

    pair_count = n * (n - 1) // 2
    needed = (pair_count + 5) // 6
    body = values[pos:]
    if len(body) < needed:
        raise Graph6DecodeError(
            f"expected {needed} adjacency bytes, found {len(body)}", base + len(values)
        )
    if len(body) > needed:
        raise Graph6DecodeError("trailing data after adjacency bytes", base + pos + needed)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if needed and body[-1] & ((1 << (needed * 6 - pair_count)) - 1):
        raise Graph6DecodeError("non-zero padding bits", base + pos + needed - 1)
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def format_edge_list(g):
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text):
    lines = [(number, line.split()) for number, line in enumerate(text.splitlines(), start=1)]
    lines = [(number, fields) for number, fields in lines if fields]
    if not lines:
        raise GraphError("edge list is empty")
    number, header = lines[0]
    if len(header) != 2:
        raise GraphError(f"line {number}: expected 'n m', got {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphError(f"line {number}: 'n m' must be integers")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for number, fields in body:
        if len(fields) != 2:
            raise GraphError(f"line {number}: expected 'u v', got {' '.join(fields)!r}")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise GraphError(f"line {number}: vertex labels must be integers")
    return Graph.from_edges(n, edges)


def load_graph(source, seed=None):
    """Resolve a graph source string.

    Accepted forms: ``g6:<code>``, ``edgelist:<path>``, ``edgelist:-`` (stdin)
    and ``random:<n>:<p>`` (seeded G(n, p)).
    """
    kind, _, rest = source.partition(":")
    if kind == "g6":
        return graph6_decode(rest)
    if kind == "edgelist":
        if rest == "-":
            return parse_edge_list(sys.stdin.read())
        try:
            with open(rest, encoding="utf-8") as handle:
                return parse_edge_list(handle.read())
        except OSError as exc:
            raise GraphError(f"cannot read edge list {rest!r}: {exc}")
    if kind == "random":
        from services.generators import random_graph

        try:
            n_text, p_text = rest.split(":")
            n, p = int(n_text), float(p_text)
        except ValueError:
            raise GraphError(f"random source must look like random:<n>:<p>, got {source!r}")
        return random_graph(n, p, seed=Config.SEED if seed is None else seed)
    raise GraphError(f"unknown graph source {source!r}; use g6:, edgelist: or random:")
