"""Size Ramsey numbers of star forests.

Formula side: the l-sequence whose sum is the conjectured value, the proved
closed forms and the classifier that says which proved case covers an
instance. Search side: exhaustive computation of the size Ramsey number and of
every Ramsey-minimal graph over the enumerated graph classes, and the
cross-check of the predicted extremal families against it.
"""
import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from multiprocessing import Pool

from tqdm import tqdm

from config import Config
from services.arrowing import Outcome, SearchBudget, arrows
from services.errors import (
    ArityError,
    EnumerationBudgetError,
    InconsistentVerdictError,
    NoCharacterizationError,
)
from services.graph_core import (
    canonical_form,
    canonical_graph,
    disjoint_union,
    enumerate_graphs,
    graph6_encode,
    make_complete,
    make_cycle,
    make_star,
)
from services.knowledge_base import TheoremCatalogue
from services.star_forest import StarForest, contains_star_forest

logger = logging.getLogger(__name__)

catalogue = TheoremCatalogue()


@dataclass(frozen=True)
class LSequence:
    """l_q, ..., l_p for forests with p stars in total over q colors."""

    values: tuple
    q: int

    @property
    def total(self):
        return sum(self.values)

    @property
    def p(self):
        return len(self.values) + self.q - 1

    def to_json(self):
        return {"l_sequence": list(self.values), "total": self.total}


@dataclass(frozen=True)
class InstanceClass:
    covering_result: str
    details: dict = field(default_factory=dict)
    mirrored: bool = False

    @property
    def provenance(self):
        return catalogue.provenance(self.covering_result)

    def to_json(self):
        return {
            "covering_result": self.covering_result,
            "provenance": self.provenance,
            "mirrored": self.mirrored,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# l-sequence
# ---------------------------------------------------------------------------

def _l_dynamic(size_lists):
    """best[k] = max over index tuples with sum k of sum(n_{i,j_i} - 1)."""
    best = {0: 0}
    for sizes in size_lists:
        merged = {}
        for k, value in best.items():
            for j, size in enumerate(sizes, start=1):
                candidate = value + size - 1
                if candidate > merged.get(k + j, -1):
                    merged[k + j] = candidate
        best = merged
    q = len(size_lists)
    p = sum(len(sizes) for sizes in size_lists)
    return tuple(best[k] + 1 for k in range(q, p + 1))


def _l_brute_force(size_lists):
    q = len(size_lists)
    p = sum(len(sizes) for sizes in size_lists)
    values = {}
    for tuple_ in itertools.product(*(range(1, len(sizes) + 1) for sizes in size_lists)):
        k = sum(tuple_)
        value = sum(sizes[j - 1] - 1 for sizes, j in zip(size_lists, tuple_)) + 1
        values[k] = max(values.get(k, 0), value)
    return tuple(values[k] for k in range(q, p + 1))


def l_sequence(forests):
    """l_k for k = q..p, the per-index maxima whose sum is the conjectured value."""
    if not forests:
        raise ArityError("at least one forest is required")
    size_lists = [forest.sizes for forest in forests]
    values = _l_dynamic(size_lists)
    if Config.L_CROSS_CHECK and len(forests) <= 4:
        checked = _l_brute_force(size_lists)
        if checked != values:
            raise InconsistentVerdictError(
                f"l-sequence mismatch for {[str(f) for f in forests]}: {values} vs {checked}")
    return LSequence(values, len(forests))


def conjectured_size_ramsey(forests):
    return l_sequence(forests).total


def witness_graph(forests):
    """Disjoint union of the stars K_{1,l_k}; it always arrows the forests."""
    return disjoint_union(*(make_star(value) for value in l_sequence(forests).values))


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def same_size_value(s, t, n, m):
    return (s + t - 1) * (n + m - 1)


def star_vs_forest_value(n, ms):
    return sum(n + m - 1 for m in ms)


def two_stars_vs_forest_value(n, ms):
    return n + ms[0] - 1 + star_vs_forest_value(n, ms)


def odd_stars_vs_forest_value(s, n, ms):
    return (s - 1) * (n + ms[0] - 1) + star_vs_forest_value(n, ms)


def gyori_schelp_holds(lseq):
    values = lseq.values
    return all(comb(value, 2) > sum(values[k:]) for k, value in enumerate(values))


def _star_vs_forest_case(first, second, lseq):
    ns, ms = first.sizes, second.sizes
    if len(ns) == 1 and ms[-1] >= 2:
        return {"n": ns[0], "m": list(ms), "closed_form": star_vs_forest_value(ns[0], ms)}
    return None


def _same_size_case(first, second, lseq):
    ns, ms = first.sizes, second.sizes
    if first.is_uniform() and second.is_uniform():
        s, t, n, m = len(ns), len(ms), ns[0], ms[0]
        return {"s": s, "t": t, "n": n, "m": m, "closed_form": same_size_value(s, t, n, m)}
    return None


def _odd_stars_case(first, second, lseq):
    ns, ms = first.sizes, second.sizes
    if first.is_uniform() and ns[0] % 2 == 1 and ms[0] % 2 == 1 and ms[-1] >= 2:
        return {"s": len(ns), "n": ns[0], "m": list(ms),
                "closed_form": odd_stars_vs_forest_value(len(ns), ns[0], ms)}
    return None


def _two_stars_case(first, second, lseq):
    ns, ms = first.sizes, second.sizes
    if len(ns) == 2 and ns[0] == ns[1] and ms[-1] >= 2:
        return {"n": ns[0], "m": list(ms), "closed_form": two_stars_vs_forest_value(ns[0], ms)}
    return None


def _all_odd_case(first, second, lseq):
    if first.all_odd() and second.all_odd():
        return {"closed_form": lseq.total}
    return None


def _gyori_schelp_case(first, second, lseq):
    if gyori_schelp_holds(lseq):
        return {"closed_form": lseq.total}
    return None


# Hypothesis checks of the proved cases; the catalogue fixes their priority.
_CASE_CHECKS = {
    "star-vs-forest": _star_vs_forest_case,
    "same-size-stars": _same_size_case,
    "odd-stars-vs-forest": _odd_stars_case,
    "two-stars-vs-forest": _two_stars_case,
    "all-odd": _all_odd_case,
    "gyori-schelp-condition": _gyori_schelp_case,
}


def _matching_cases(first, second, lseq):
    """Every proved case whose hypotheses hold, in priority order, with details."""
    matches = []
    for name in catalogue.ORDER:
        check = _CASE_CHECKS.get(name)
        details = check(first, second, lseq) if check else None
        if details is None:
            continue
        if details["closed_form"] != lseq.total:
            raise InconsistentVerdictError(
                f"{name} closed form {details['closed_form']} disagrees with l-sequence total "
                f"{lseq.total} for ({first}; {second})")
        matches.append((name, details))
    return matches


def classify_instance(forests, all_matches=False):
    """The first proved case covering the pair, or every match when asked.

    When no case applies as given but one does once the two forests are
    exchanged, that case is returned flagged ``mirrored``: exchanging the
    forests exchanges the colors and leaves the size Ramsey number alone.
    With ``all_matches`` the result is a list of direct matches followed by
    mirrored ones.
    """
    lseq = l_sequence(forests)
    if len(forests) != 2:
        fallback = InstanceClass("conjecture-only", {"q": len(forests)})
        return [fallback] if all_matches else fallback
    first, second = forests
    direct = [InstanceClass(name, details) for name, details in _matching_cases(first, second, lseq)]
    mirrored = [InstanceClass(name, details, mirrored=True)
                for name, details in _matching_cases(second, first, lseq)]
    if not all_matches:
        found = direct or mirrored
        return found[0] if found else InstanceClass("conjecture-only", {})
    found = direct + mirrored
    return found or [InstanceClass("conjecture-only", {})]


# ---------------------------------------------------------------------------
# Extremal families
# ---------------------------------------------------------------------------

def _unique_graphs(graphs):
    by_code = {}
    for g in graphs:
        by_code.setdefault(canonical_form(g), canonical_graph(g))
    return [by_code[code] for code in sorted(by_code)]


def _same_size_family(forests):
    first, second = forests
    s, n = first.component_count, first.sizes[0]
    t, m = second.component_count, second.sizes[0]
    if n < m:
        s, n, t, m = t, m, s, n
    count = s + t - 1
    family = [disjoint_union(*[make_star(n + m - 1)] * count)]
    if n == m == 2:
        for l_count in range(0, count + 1):
            parts = [make_complete(3)] * l_count + [make_star(3)] * (count - l_count)
            family.append(disjoint_union(*parts))
    if s == 1 and m == 1 and n == 2:
        for l_count in range(0, t // 2 + 1):
            parts = [make_cycle(4)] * l_count + [make_star(2)] * (t - 2 * l_count)
            family.append(disjoint_union(*parts))
    return family


def _star_vs_forest_family(forests):
    n = forests[0].sizes[0]
    options = []
    for m in forests[1].sizes:
        choice = [make_star(n + m - 1)]
        if n == m == 2:
            choice.append(make_complete(3))
        options.append(choice)
    return [disjoint_union(*combo) for combo in itertools.product(*options)]


def _odd_stars_family(forests):
    s, n = forests[0].component_count, forests[0].sizes[0]
    ms = forests[1].sizes
    parts = [make_star(n + ms[0] - 1)] * (s - 1) + [make_star(n + m - 1) for m in ms]
    return [disjoint_union(*parts)]


_FAMILIES = {
    "same-size-stars": _same_size_family,
    "star-vs-forest": _star_vs_forest_family,
    "odd-stars-vs-forest": _odd_stars_family,
}


def extremal_family(instance_class, forests):
    """Predicted Ramsey-minimal graphs, one per isomorphism class, in code order."""
    builder = _FAMILIES.get(instance_class.covering_result)
    if builder is None or not catalogue.has_characterization(instance_class.covering_result):
        raise NoCharacterizationError(
            f"no characterisation of minimal graphs for {instance_class.covering_result}")
    if instance_class.mirrored:
        forests = [forests[1], forests[0]]
    return _unique_graphs(builder(forests))


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SizeRamseyResult:
    """Outcome of the exhaustive search.

    ``status`` is ``exact`` when every candidate below and at ``value`` was
    decided, ``partial`` when an undecided candidate leaves it unproven, and
    ``not-found`` when no graph up to the edge limit arrows.
    """

    value: int
    minimal_graphs: tuple
    status: str
    undecided: tuple = ()
    max_edges: int = 0

    @property
    def codes(self):
        return [canonical_form(g) for g in self.minimal_graphs]

    @property
    def lower_bound(self):
        """Every graph with fewer edges than this was decided and does not arrow."""
        bound = self.value if self.value is not None else self.max_edges + 1
        return min([bound] + [g.edge_count for g in self.undecided])

    def to_json(self):
        return {
            "value": self.value,
            "minimal_graphs": [graph6_encode(g) for g in self.minimal_graphs],
            "status": self.status,
            "undecided": [graph6_encode(g) for g in self.undecided],
            "max_edges": self.max_edges,
        }


def _decide(task):
    g, forests, budget = task
    return arrows(g, forests, budget).outcome


def _outcomes(candidates, forests, budget, threads, progress, edge_count):
    # each graph gets a sequential search; the fan-out happens over graphs
    inner = SearchBudget(budget.max_colorings, budget.max_seconds, 1, budget.symmetry_breaking)
    tasks = [(g, forests, inner) for g in candidates]
    bar = dict(total=len(tasks), desc=f"{edge_count} edges", disable=not progress, leave=False)
    if threads > 1 and len(tasks) > 1:
        with Pool(processes=threads) as pool:
            return list(tqdm(pool.imap(_decide, tasks), **bar))
    return [_decide(task) for task in tqdm(tasks, **bar)]


def size_ramsey_exhaustive(forests, max_edges, budget=None, progress=False):
    """Smallest e <= max_edges with an e-edge graph arrowing the forests, and
    every arrowing isomorphism class at that e.
    """
    if not forests:
        raise ArityError("at least one forest is required")
    if max_edges > Config.ENUM_MAX_EDGES:
        raise EnumerationBudgetError(
            f"max_edges={max_edges} exceeds the enumeration budget of {Config.ENUM_MAX_EDGES} edges")
    budget = budget or SearchBudget()
    undecided_below = []
    # a graph with fewer edges than some F_i misses it, so coloring all in i is free
    start = max(forest.total_edges for forest in forests)
    for e in range(start, max_edges + 1):
        candidates = [g for g in enumerate_graphs(e)
                      if all(contains_star_forest(g, f) for f in forests)]
        outcomes = _outcomes(candidates, forests, budget, budget.threads, progress, e)
        arrowing = [g for g, o in zip(candidates, outcomes) if o is Outcome.ARROWS]
        undecided = [g for g, o in zip(candidates, outcomes) if o is Outcome.UNDECIDED]
        logger.info("%d edges: %d candidates, %d arrow, %d undecided",
                    e, len(candidates), len(arrowing), len(undecided))
        if arrowing:
            pending = undecided_below + undecided
            status = "exact" if not pending else "partial"
            if pending:
                logger.warning("⚠️ %d undecided candidates; minimal set may be incomplete",
                               len(pending))
            return SizeRamseyResult(e, tuple(arrowing), status, tuple(pending), max_edges)
        undecided_below.extend(undecided)
    status = "partial" if undecided_below else "not-found"
    return SizeRamseyResult(None, (), status, tuple(undecided_below), max_edges)


@dataclass(frozen=True)
class CharacterizationReport:
    forests: tuple
    instance_class: InstanceClass
    predicted_value: int
    predicted: tuple
    search: SizeRamseyResult

    @property
    def missing(self):
        found = {canonical_form(g) for g in self.search.minimal_graphs}
        return [g for g in self.predicted if canonical_form(g) not in found]

    @property
    def unexpected(self):
        expected = {canonical_form(g) for g in self.predicted}
        return [g for g in self.search.minimal_graphs if canonical_form(g) not in expected]

    @property
    def equal(self):
        return (self.search.value == self.predicted_value
                and not self.missing and not self.unexpected)

    @property
    def status(self):
        if self.search.status == "partial":
            return "partial"
        if self.search.value is None and self.search.max_edges < self.predicted_value:
            return "partial"
        return "equal" if self.equal else "different"

    def to_json(self):
        return {
            "forests": [str(f) for f in self.forests],
            "covered_by": self.instance_class.covering_result,
            "provenance": self.instance_class.provenance,
            "mirrored": self.instance_class.mirrored,
            "predicted_value": self.predicted_value,
            "value": self.search.value,
            "lower_bound": self.search.lower_bound,
            "max_edges": self.search.max_edges,
            "predicted": [graph6_encode(g) for g in self.predicted],
            "minimal_graphs": [graph6_encode(g) for g in self.search.minimal_graphs],
            "missing": [graph6_encode(g) for g in self.missing],
            "unexpected": [graph6_encode(g) for g in self.unexpected],
            "status": self.status,
        }


def _characterized_class(forests):
    for instance in classify_instance(forests, all_matches=True):
        if catalogue.has_characterization(instance.covering_result):
            return instance
    return None


def verify_characterization(forests, max_edges=None, budget=None, progress=False):
    """Compare the predicted extremal family with the exhaustively found minimal set.

    By default the search runs up to the predicted value, capped by the
    enumeration budget. A search that stops short of the prediction without
    finding an arrowing graph gives a ``partial`` report whose ``lower_bound``
    is the proven part.
    """
    instance = _characterized_class(forests)
    if instance is None:
        raise NoCharacterizationError(
            f"({'; '.join(str(f) for f in forests)}) has no proved characterisation; "
            f"characterised cases: {', '.join(catalogue.characterized_cases())}")
    predicted_value = conjectured_size_ramsey(forests)
    predicted = tuple(extremal_family(instance, forests))
    if max_edges is None:
        max_edges = min(predicted_value, Config.ENUM_MAX_EDGES)
        if max_edges < predicted_value:
            logger.warning("⚠️ predicted value %d is beyond the enumeration budget; "
                           "searching up to %d edges only", predicted_value, max_edges)
    search = size_ramsey_exhaustive(forests, max_edges, budget, progress)
    report = CharacterizationReport(tuple(forests), instance, predicted_value, predicted, search)
    if report.status == "different":
        logger.warning("⚠️ characterisation mismatch: missing %s, unexpected %s",
                       [graph6_encode(g) for g in report.missing],
                       [graph6_encode(g) for g in report.unexpected])
    return report


# ---------------------------------------------------------------------------
# Witness soundness
# ---------------------------------------------------------------------------

def forests_up_to(max_size, max_components):
    """Every star forest with star sizes <= max_size and <= max_components stars."""
    found = []
    for count in range(1, max_components + 1):
        for sizes in itertools.combinations_with_replacement(range(max_size, 0, -1), count):
            found.append(StarForest(tuple(sizes)))
    return found


@dataclass(frozen=True)
class SweepReport:
    checked: int
    failures: tuple
    undecided: tuple

    def to_json(self):
        return {
            "checked": self.checked,
            "failures": [[str(f) for f in pair] for pair in self.failures],
            "undecided": [[str(f) for f in pair] for pair in self.undecided],
        }


def witness_soundness_sweep(max_size=4, max_components=3, max_total=12, budget=None,
                            progress=False):
    """Check that the witness graph arrows every pair in range.

    Pairs are unordered: exchanging the forests exchanges the colors.
    """
    budget = budget or SearchBudget()
    forests = forests_up_to(max_size, max_components)
    pairs = [pair for pair in itertools.combinations_with_replacement(forests, 2)
             if conjectured_size_ramsey(list(pair)) <= max_total]
    failures, undecided = [], []
    for pair in tqdm(pairs, desc="witness sweep", disable=not progress):
        outcome = arrows(witness_graph(list(pair)), list(pair), budget).outcome
        if outcome is Outcome.NOT_ARROWS:
            failures.append(pair)
        elif outcome is Outcome.UNDECIDED:
            undecided.append(pair)
    logger.info("witness sweep: %d pairs, %d failures, %d undecided",
                len(pairs), len(failures), len(undecided))
    return SweepReport(len(pairs), tuple(failures), tuple(undecided))
