"""Constructive edge decompositions.

Proper edge colorings (Misra-Gries fan recoloring for Vizing's bound,
alternating-path recoloring for bipartite graphs), Euler circuits, the
doubling embedding into a regular graph and Petersen's 2-factorization of
even-regular graphs through an Euler orientation and bipartite perfect
matchings.
"""
import logging
from dataclasses import dataclass

from services.errors import GraphError, NotBipartiteError, NotRegularError, OddDegreeError
from services.graph_core import Graph, iter_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProperEdgeColoring:
    coloring: dict
    color_count: int

    def classes(self):
        """Edge lists per color index."""
        buckets = [[] for _ in range(self.color_count)]
        for edge, color in sorted(self.coloring.items()):
            buckets[color].append(edge)
        return buckets

    def to_json(self):
        return {
            "color_count": self.color_count,
            "classes": [[list(edge) for edge in bucket] for bucket in self.classes()],
        }


@dataclass(frozen=True)
class TwoFactorization:
    factors: tuple

    def to_json(self):
        return {
            "factor_count": len(self.factors),
            "factors": [[list(edge) for edge in factor] for factor in self.factors],
        }


def bipartition(g):
    """Side (0/1) per vertex, or None when ``g`` has an odd cycle."""
    sides = [None] * g.vertex_count
    for start in range(g.vertex_count):
        if sides[start] is not None:
            continue
        sides[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in iter_bits(g.rows[v]):
                if sides[w] is None:
                    sides[w] = 1 - sides[v]
                    queue.append(w)
                elif sides[w] == sides[v]:
                    return None
    return sides


def is_proper(g, coloring):
    if set(coloring) != set(g.edges()):
        return False
    seen = {}
    for (u, v), color in coloring.items():
        for x in (u, v):
            if (x, color) in seen:
                return False
            seen[(x, color)] = (u, v)
    return True


class _PartialColoring:
    """Per-vertex maps color -> neighbour, kept in step with an edge map."""

    def __init__(self, n):
        self.at = [{} for _ in range(n)]
        self.edge = {}

    def set(self, u, v, color):
        self.at[u][color] = v
        self.at[v][color] = u
        self.edge[(min(u, v), max(u, v))] = color

    def clear(self, u, v):
        color = self.edge.pop((min(u, v), max(u, v)))
        del self.at[u][color]
        del self.at[v][color]
        return color

    def color(self, u, v):
        return self.edge.get((min(u, v), max(u, v)))

    def free(self, v, palette):
        return next(c for c in range(palette) if c not in self.at[v])

    def flip_path(self, start, first, second):
        """Swap ``first``/``second`` along the alternating path leaving ``start``
        on a ``first`` edge. ``start`` must miss ``second``.
        """
        path = []
        x, color = start, first
        while color in self.at[x]:
            y = self.at[x][color]
            path.append((x, y, color))
            x, color = y, (second if color == first else first)
        for x, y, _ in path:
            self.clear(x, y)
        for x, y, color in path:
            self.set(x, y, second if color == first else first)


def _maximal_fan(pc, u, v):
    fan = [v]
    members = {v}
    while True:
        last = fan[-1]
        step = next(
            (w for c, w in sorted(pc.at[u].items()) if w not in members and c not in pc.at[last]),
            None,
        )
        if step is None:
            return fan
        fan.append(step)
        members.add(step)


def _is_fan(pc, u, fan):
    for previous, w in zip(fan, fan[1:]):
        color = pc.color(u, w)
        if color is None or color in pc.at[previous]:
            return False
    return True


def _misra_gries(g):
    palette = g.max_degree() + 1
    pc = _PartialColoring(g.vertex_count)
    for u, v in g.edges():
        fan = _maximal_fan(pc, u, v)
        c = pc.free(u, palette)
        d = pc.free(fan[-1], palette)
        pc.flip_path(u, d, c)
        cut = next(
            (i for i, w in enumerate(fan) if d not in pc.at[w] and _is_fan(pc, u, fan[:i + 1])),
            None,
        )
        if cut is None:
            raise RuntimeError(f"fan recoloring failed on edge ({u}, {v})")
        prefix = fan[:cut + 1]
        for here, following in zip(prefix, prefix[1:]):
            pc.set(u, here, pc.clear(u, following))
        pc.set(u, prefix[-1], d)
    return pc.edge


def _alternating_bipartite(g):
    palette = g.max_degree()
    pc = _PartialColoring(g.vertex_count)
    for u, v in g.edges():
        a = pc.free(u, palette)
        b = pc.free(v, palette)
        if a in pc.at[v]:
            # the a/b path from v cannot reach u in a bipartite graph
            pc.flip_path(v, a, b)
        pc.set(u, v, a)
    return pc.edge


def proper_edge_coloring(g):
    """Proper edge coloring with at most Delta + 1 colors, Delta when bipartite."""
    if g.edge_count == 0:
        return ProperEdgeColoring({}, 0)
    if bipartition(g) is not None:
        raw = _alternating_bipartite(g)
    else:
        raw = _misra_gries(g)
    used = {color: index for index, color in enumerate(sorted(set(raw.values())))}
    coloring = {edge: used[color] for edge, color in sorted(raw.items())}
    logger.debug("colored %d edges with %d colors (Delta=%d)",
                 g.edge_count, len(used), g.max_degree())
    return ProperEdgeColoring(coloring, len(used))


def euler_circuit(g):
    """One closed walk per component with edges, as oriented edge lists."""
    odd = [v for v, d in enumerate(g.degrees) if d % 2]
    if odd:
        raise OddDegreeError(f"vertex {odd[0]} has odd degree {g.degrees[odd[0]]}")
    remaining = list(g.rows)
    circuits = []
    for comp in g.components():
        start = comp[0]
        if not remaining[start]:
            continue
        stack = [start]
        walk = []
        while stack:
            v = stack[-1]
            if remaining[v]:
                w = (remaining[v] & -remaining[v]).bit_length() - 1
                remaining[v] &= ~(1 << w)
                remaining[w] &= ~(1 << v)
                stack.append(w)
            else:
                walk.append(stack.pop())
        walk.reverse()
        circuits.append(list(zip(walk, walk[1:])))
    return circuits


def embed_regular(g):
    """Embed ``g`` in a simple Delta(g)-regular graph by repeated doubling.

    Each round takes two copies and joins every deficient vertex to its twin,
    so the minimum degree rises by one per round. Returns the regular graph and
    the vertex map (``g``'s vertices keep their labels).
    """
    delta = g.max_degree()
    if delta < 1:
        raise GraphError("embedding into a regular graph needs at least one edge")
    h = g
    rounds = 0
    while not h.is_regular(delta):
        n = h.vertex_count
        rows = list(h.rows) + [row << n for row in h.rows]
        for v, d in enumerate(h.degrees):
            if d < delta:
                rows[v] |= 1 << (v + n)
                rows[v + n] |= 1 << v
        h = Graph(2 * n, tuple(rows))
        rounds += 1
    logger.debug("embedded %d vertices into a %d-regular graph on %d after %d rounds",
                 g.vertex_count, delta, h.vertex_count, rounds)
    return h, list(range(g.vertex_count))


def _maximum_matching(rows, left):
    """Augmenting-path bipartite matching; returns left -> right."""
    mate = {}
    owner = {}
    for root in left:
        visited = 0
        stack = [(root, iter_bits(rows[root]))]
        path = []
        found = False
        while stack and not found:
            u, candidates = stack[-1]
            for w in candidates:
                if (visited >> w) & 1:
                    continue
                visited |= 1 << w
                path.append((u, w))
                if w not in owner:
                    found = True
                else:
                    stack.append((owner[w], iter_bits(rows[owner[w]])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
        if found:
            for u, w in path:
                mate[u] = w
                owner[w] = u
    return mate


def decompose_regular_bipartite(b, k):
    """Split a k-regular bipartite graph into k perfect matchings."""
    sides = bipartition(b)
    if sides is None:
        raise NotBipartiteError("graph has an odd cycle")
    if k < 1 or not b.is_regular(k):
        raise NotRegularError(f"graph is not {k}-regular")
    left = [v for v in range(b.vertex_count) if sides[v] == 0]
    rows = list(b.rows)
    matchings = []
    for _ in range(k):
        mate = _maximum_matching(rows, left)
        if len(mate) != len(left):
            raise RuntimeError("regular bipartite graph without a perfect matching")
        matching = sorted((min(u, w), max(u, w)) for u, w in mate.items())
        for u, w in matching:
            rows[u] &= ~(1 << w)
            rows[w] &= ~(1 << u)
        matchings.append(matching)
    return matchings


def two_factorize(h):
    """Petersen: partition a 2k-regular graph into k spanning 2-regular factors.

    Per component: orient along an Euler circuit, split the out/in double
    graph (k-regular bipartite) into perfect matchings and read each matching
    back as one 2-factor. Factors of different components are merged by index.
    """
    if h.edge_count == 0 or not h.is_regular():
        raise NotRegularError("2-factorization needs a regular graph with edges")
    degree = h.degrees[0]
    if degree % 2:
        raise OddDegreeError(f"graph is {degree}-regular; an even degree is required")
    k = degree // 2
    factors = [[] for _ in range(k)]
    for comp in h.components():
        sub = h.induced(comp)
        size = len(comp)
        circuit = euler_circuit(sub)[0]
        double = Graph.from_edges(2 * size, [(a, size + b) for a, b in circuit])
        for index, matching in enumerate(decompose_regular_bipartite(double, k)):
            for out_side, in_side in matching:
                a, b = comp[out_side], comp[in_side - size]
                factors[index].append((min(a, b), max(a, b)))
    return TwoFactorization(tuple(tuple(sorted(factor)) for factor in factors))
