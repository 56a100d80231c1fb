"""Exact arrowing decisions.

``arrows(g, forests)`` decides whether every q-coloring of E(g) puts a copy of
``forests[i]`` in some color class i. The search is a depth-first assignment
of colors to edges in a fixed order; a branch dies as soon as some color class
already contains its forest, since classes only grow along a branch. A leaf
reached alive is a free coloring, and because colors are tried in increasing
order the first one found is the lexicographically least in the edge order.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool, Value

from config import Config
from services.errors import ArityError, InconsistentVerdictError, SearchBudgetError
from services.free_coloring import EdgeColoring, verify_free
from services.graph_core import iter_bits
from services.star_forest import contains_star_forest, rows_contain_forest

logger = logging.getLogger(__name__)

_CLOCK_STRIDE = 1024
_RESERVE_CHUNK = 256


class Outcome(str, Enum):
    ARROWS = "arrows"
    NOT_ARROWS = "not-arrows"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class SearchBudget:
    max_colorings: int = field(default_factory=lambda: Config.MAX_COLORINGS)
    max_seconds: float = field(default_factory=lambda: Config.TIMEOUT)
    threads: int = field(default_factory=lambda: Config.THREADS)
    symmetry_breaking: bool = field(default_factory=lambda: Config.SYMMETRY_BREAKING)

    def __post_init__(self):
        if self.max_colorings < 1:
            raise SearchBudgetError(f"max_colorings must be positive, got {self.max_colorings}")
        if self.max_seconds <= 0:
            raise SearchBudgetError(f"max_seconds must be positive, got {self.max_seconds}")
        if self.threads < 1:
            raise SearchBudgetError(f"threads must be positive, got {self.threads}")


@dataclass(frozen=True)
class ArrowVerdict:
    outcome: Outcome
    counterexample: EdgeColoring = None
    colorings_explored: int = 0
    elapsed: float = 0.0

    @property
    def arrows(self):
        """True / False, or None when the search ran out of budget."""
        if self.outcome is Outcome.UNDECIDED:
            return None
        return self.outcome is Outcome.ARROWS

    def to_json(self, timing=False):
        report = {
            "outcome": self.outcome.value,
            "arrows": self.arrows,
            "colorings_explored": self.colorings_explored,
            "counterexample": self.counterexample.to_records() if self.counterexample else None,
        }
        if timing:
            report["elapsed"] = round(self.elapsed, 6)
        return report


class _BudgetExhausted(Exception):
    pass


def edge_search_order(g):
    """Edges in BFS order, each component rooted at its first max-degree vertex."""
    degrees = g.degrees
    visited = 0
    listed = set()
    order = []
    remaining = sorted(range(g.vertex_count), key=lambda v: (-degrees[v], v))
    for root in remaining:
        if (visited >> root) & 1 or degrees[root] == 0:
            continue
        visited |= 1 << root
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for w in iter_bits(g.rows[v]):
                edge = (min(v, w), max(v, w))
                if edge not in listed:
                    listed.add(edge)
                    order.append(edge)
                if not (visited >> w) & 1:
                    visited |= 1 << w
                    queue.append(w)
    return order


def _symmetry_links(forests, enabled):
    """For each color, the previous color carrying an identical forest (or None)."""
    links = [None] * len(forests)
    if not enabled:
        return links
    for c in range(len(forests)):
        for d in range(c - 1, -1, -1):
            if forests[d].sizes == forests[c].sizes:
                links[c] = d
                break
    return links


class _Search:
    """Mutable DFS state; one instance per (sub)search.

    ``nodes`` may not pass ``allowance``; ``refill`` asks for more and returns
    how many nodes were granted.
    """

    def __init__(self, vertex_count, order, sizes, links, allowance, deadline, refill=None):
        self.order = order
        self.sizes = sizes
        self.links = links
        self.q = len(sizes)
        self.totals = [sum(s) for s in sizes]
        self.smallest = [s[-1] for s in sizes]
        self.rows = [[0] * vertex_count for _ in range(self.q)]
        self.degree = [[0] * vertex_count for _ in range(self.q)]
        self.count = [0] * self.q
        self.colors = []
        self.nodes = 0
        self.allowance = allowance
        self.deadline = deadline
        self.refill = refill

    def assign(self, u, v, c):
        """Color edge uv with c; False when class c now contains its forest."""
        self.rows[c][u] |= 1 << v
        self.rows[c][v] |= 1 << u
        self.degree[c][u] += 1
        self.degree[c][v] += 1
        self.count[c] += 1
        self.colors.append(c)
        # a new copy must use uv, so some star of it is centered at u or v
        if self.count[c] < self.totals[c]:
            return True
        if max(self.degree[c][u], self.degree[c][v]) < self.smallest[c]:
            return True
        return not rows_contain_forest(self.rows[c], self.sizes[c])

    def undo(self, u, v):
        c = self.colors.pop()
        self.rows[c][u] &= ~(1 << v)
        self.rows[c][v] &= ~(1 << u)
        self.degree[c][u] -= 1
        self.degree[c][v] -= 1
        self.count[c] -= 1

    def allowed(self, c):
        link = self.links[c]
        return link is None or self.count[link] > 0

    def tick(self):
        if self.nodes >= self.allowance:
            if self.refill is not None:
                self.allowance += self.refill()
            if self.nodes >= self.allowance:
                raise _BudgetExhausted()
        self.nodes += 1
        if self.nodes % _CLOCK_STRIDE == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted()

    def unused(self):
        return max(self.allowance - self.nodes, 0)

    def replay(self, prefix):
        for (u, v), c in zip(self.order, prefix):
            if not self.assign(u, v, c):
                return False
        return True

    def run(self, depth):
        if depth == len(self.order):
            return True
        u, v = self.order[depth]
        for c in range(self.q):
            if not self.allowed(c):
                continue
            self.tick()
            if self.assign(u, v, c) and self.run(depth + 1):
                return True
            self.undo(u, v)
        return False

    def prefixes(self, depth, target, out):
        """Live partial colorings of the first ``target`` edges, in lex order."""
        if depth == target:
            out.append(tuple(self.colors))
            return
        u, v = self.order[depth]
        for c in range(self.q):
            if not self.allowed(c):
                continue
            self.tick()
            if self.assign(u, v, c):
                self.prefixes(depth + 1, target, out)
            self.undo(u, v)


# Node budget shared by every worker of one parallel search.
_shared_budget = None


def _init_worker(remaining):
    global _shared_budget
    _shared_budget = remaining


def _reserve(amount=_RESERVE_CHUNK):
    with _shared_budget.get_lock():
        granted = min(amount, _shared_budget.value)
        _shared_budget.value -= granted
    return granted


def _release(amount):
    if amount:
        with _shared_budget.get_lock():
            _shared_budget.value += amount


def _explore(task):
    """Worker body: finish one prefix subtree. Returns (colors or None, nodes, undecided)."""
    vertex_count, order, sizes, links, deadline, prefix = task
    search = _Search(vertex_count, order, sizes, links, 0, deadline, refill=_reserve)
    if not search.replay(prefix):
        return None, 0, False
    try:
        found = search.run(len(prefix))
    except _BudgetExhausted:
        return None, search.nodes, True
    finally:
        _release(search.unused())
    return (tuple(search.colors) if found else None), search.nodes, False


def _split_depth(search, threads):
    """Smallest prefix depth giving several subtrees per worker."""
    target = 4 * threads
    depth = 0
    prefixes = [()]
    while prefixes and depth < len(search.order) and len(prefixes) < target:
        depth += 1
        prefixes = []
        search.prefixes(0, depth, prefixes)
    return depth, prefixes


def _parallel(g, order, sizes, links, budget, deadline):
    # splitting visits nodes too and is charged to the same budget
    search = _Search(g.vertex_count, order, sizes, links, budget.max_colorings, deadline)
    try:
        depth, prefixes = _split_depth(search, budget.threads)
    except _BudgetExhausted:
        return None, search.nodes, True
    logger.debug("split search at depth %d into %d subtrees over %d workers",
                 depth, len(prefixes), budget.threads)
    remaining = Value("q", search.unused())
    tasks = [(g.vertex_count, order, sizes, links, deadline, p) for p in prefixes]
    nodes = search.nodes
    undecided = False
    with Pool(processes=budget.threads, initializer=_init_worker, initargs=(remaining,)) as pool:
        # imap keeps prefix order, so the first hit is the least counterexample
        for colors, explored, ran_out in pool.imap(_explore, tasks):
            nodes += explored
            undecided = undecided or ran_out
            if colors is not None:
                if undecided:
                    logger.warning("counterexample found after an undecided subtree; "
                                   "it need not be the least one")
                pool.terminate()
                return colors, nodes, False
    return None, nodes, undecided


def _sequential(g, order, sizes, links, budget, deadline):
    search = _Search(g.vertex_count, order, sizes, links, budget.max_colorings, deadline)
    try:
        found = search.run(0)
    except _BudgetExhausted:
        return None, search.nodes, True
    return (tuple(search.colors) if found else None), search.nodes, False


def arrows(g, forests, budget=None):
    """Decide g -> (forests[0], ..., forests[q-1]) exactly.

    Never guesses: when the node or time budget runs out the verdict is
    ``Outcome.UNDECIDED``. Worker processes draw on one shared node budget
    and one deadline. Any counterexample is re-checked with
    ``verify_free`` before it is returned.
    """
    if not forests:
        raise ArityError("arrowing needs at least one forest")
    budget = budget or SearchBudget()
    started = time.monotonic()
    deadline = started + budget.max_seconds
    q = len(forests)
    order = edge_search_order(g)
    sizes = tuple(forest.sizes for forest in forests)

    if not contains_star_forest(g, forests[0]):
        # everything in color 0 is free and is the least coloring of all
        colors, nodes, undecided = (0,) * len(order), 0, False
    else:
        links = _symmetry_links(forests, budget.symmetry_breaking)
        if budget.threads > 1 and len(order) > 1:
            colors, nodes, undecided = _parallel(g, order, sizes, links, budget, deadline)
        else:
            colors, nodes, undecided = _sequential(g, order, sizes, links, budget, deadline)
    elapsed = time.monotonic() - started

    if colors is not None:
        coloring = EdgeColoring.from_mapping(dict(zip(order, colors)), q)
        if not verify_free(g, coloring, forests):
            raise InconsistentVerdictError(
                f"search produced a coloring that is not free for {[str(f) for f in forests]}")
        verdict = ArrowVerdict(Outcome.NOT_ARROWS, coloring, nodes, elapsed)
    elif undecided:
        logger.warning("⚠️ arrowing undecided after %d nodes (%.2fs)", nodes, elapsed)
        verdict = ArrowVerdict(Outcome.UNDECIDED, None, nodes, elapsed)
    else:
        verdict = ArrowVerdict(Outcome.ARROWS, None, nodes, elapsed)
    logger.info("%s -> (%s): %s after %d nodes", g, "; ".join(str(f) for f in forests),
                verdict.outcome.value, nodes)
    return verdict


def arrows_with_certificate_check(g, forests, budget=None):
    """``arrows`` plus a second, independent audit of the verdict's shape."""
    verdict = arrows(g, forests, budget)
    if verdict.outcome is Outcome.NOT_ARROWS:
        if verdict.counterexample is None:
            raise InconsistentVerdictError("negative verdict without a counterexample")
        if not verdict.counterexample.covers(g) or not verify_free(g, verdict.counterexample, forests):
            raise InconsistentVerdictError("counterexample failed re-validation")
    elif verdict.counterexample is not None:
        raise InconsistentVerdictError(f"{verdict.outcome.value} verdict carries a counterexample")
    return verdict

