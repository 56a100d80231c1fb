import itertools

import pytest

from config import Config
from services.arrowing import SearchBudget, arrows
from services.errors import (
    ArityError,
    EnumerationBudgetError,
    InconsistentVerdictError,
    NoCharacterizationError,
)
from services.graph_core import (
    canonical_form,
    disjoint_union,
    is_isomorphic,
    make_complete,
    make_cycle,
    make_star,
)
from services.knowledge_base import TheoremCatalogue
from services.ramsey import (
    classify_instance,
    conjectured_size_ramsey,
    extremal_family,
    forests_up_to,
    l_sequence,
    odd_stars_vs_forest_value,
    same_size_value,
    size_ramsey_exhaustive,
    star_vs_forest_value,
    two_stars_vs_forest_value,
    verify_characterization,
    witness_graph,
    witness_soundness_sweep,
)
from services.report_validation import validate_report
from services.star_forest import StarForest


def pair(a, b):
    return [StarForest(tuple(a)), StarForest(tuple(b))]


def codes(graphs):
    return {canonical_form(g) for g in graphs}


def test_l_sequence_examples():
    lseq = l_sequence(pair([4, 2], [3, 3]))
    assert lseq.values == (6, 6, 4)
    assert lseq.total == 16
    assert lseq.p == 4
    assert l_sequence(pair([1], [1])).values == (1,)
    uniform = l_sequence(pair([3, 3], [2, 2, 2]))
    assert set(uniform.values) == {4}
    assert uniform.total == 16


def test_l_sequence_multicolor():
    lseq = l_sequence([StarForest((2,))] * 3)
    assert lseq.values == (4,)
    assert l_sequence([StarForest((3, 1))]).values == (3, 1)
    with pytest.raises(ArityError):
        l_sequence([])


def test_l_sequence_cross_check_catches_mismatch(monkeypatch):
    monkeypatch.setattr(Config, "L_CROSS_CHECK", True)
    monkeypatch.setattr("services.ramsey._l_brute_force", lambda size_lists: (0,))
    with pytest.raises(InconsistentVerdictError):
        l_sequence(pair([3], [2]))


@pytest.mark.parametrize("first", forests_up_to(3, 3), ids=str)
def test_l_sequence_ignores_forest_order(first):
    for second in forests_up_to(3, 3):
        forward = l_sequence([first, second])
        backward = l_sequence([second, first])
        assert forward.values == backward.values
        assert forward.total == backward.total


def test_l_sequence_ignores_color_permutation_for_three_colors():
    forests = [StarForest((3, 1)), StarForest((2, 2)), StarForest((1,))]
    expected = l_sequence(forests).values
    for order in itertools.permutations(forests):
        assert l_sequence(list(order)).values == expected


def test_conjectured_values():
    assert conjectured_size_ramsey(pair([3], [3, 2])) == 9
    assert conjectured_size_ramsey(pair([3, 3], [3, 2])) == 14
    assert conjectured_size_ramsey(pair([1], [1])) == 1


def test_witness_graphs():
    assert is_isomorphic(witness_graph(pair([2], [2])), make_star(3))
    assert is_isomorphic(witness_graph(pair([3], [2])), make_star(4))
    big = witness_graph(pair([3, 3], [3, 2]))
    assert big.edge_count == 14
    assert is_isomorphic(big, disjoint_union(make_star(5), make_star(5), make_star(4)))


@pytest.mark.parametrize("first, second, expected", [
    ([3], [2, 2], "star-vs-forest"),
    ([3, 1], [1], "all-odd"),
    ([4, 2], [3], "gyori-schelp-condition"),
    ([3, 3], [3, 2], "odd-stars-vs-forest"),
    ([2, 2], [3, 2], "two-stars-vs-forest"),
    ([3, 3], [2, 2], "same-size-stars"),
    ([2], [1, 1], "same-size-stars"),
    ([2, 1], [3], "conjecture-only"),
])
def test_classify_examples(first, second, expected):
    assert classify_instance(pair(first, second)).covering_result == expected


def test_classify_more_than_two_colors():
    found = classify_instance([StarForest((2,))] * 3)
    assert found.covering_result == "conjecture-only"
    assert found.details == {"q": 3}


def test_catalogue_order_sets_classification_priority(monkeypatch):
    assert TheoremCatalogue().characterized_cases() == [
        "star-vs-forest", "same-size-stars", "odd-stars-vs-forest"]
    forests = pair([3, 3], [3, 2])
    assert classify_instance(forests).covering_result == "odd-stars-vs-forest"
    monkeypatch.setattr(TheoremCatalogue, "ORDER", tuple(reversed(TheoremCatalogue.ORDER)))
    assert classify_instance(forests).covering_result == "two-stars-vs-forest"


def test_exchanged_forests_fall_back_to_mirrored_theorem():
    found = classify_instance(pair([3, 2], [2]))
    assert found.covering_result == "star-vs-forest"
    assert found.mirrored is True
    assert found.to_json()["provenance"] == "theorem"
    assert found.details["n"] == 2
    direct = classify_instance(pair([2], [3, 2]))
    assert direct.covering_result == "star-vs-forest"
    assert direct.mirrored is False


def test_all_matches_includes_mirrored_cases():
    matches = classify_instance(pair([3, 2], [2]), all_matches=True)
    assert all(m.mirrored for m in matches)
    mirrored = [m for m in matches if m.mirrored]
    assert [m.covering_result for m in mirrored] == ["star-vs-forest"]
    assert mirrored[0].to_json()["provenance"] == "theorem"
    everything = classify_instance(pair([3, 3], [3, 2]), all_matches=True)
    names = [m.covering_result for m in everything if not m.mirrored]
    assert names == ["odd-stars-vs-forest", "two-stars-vs-forest"]


def test_same_size_closed_form_identity():
    for s, t in itertools.product(range(1, 7), repeat=2):
        for m in range(1, 7):
            for n in range(m, 7):
                forests = pair([n] * s, [m] * t)
                assert l_sequence(forests).total == same_size_value(s, t, n, m)


def test_star_and_odd_forms_match_l_sequence():
    for count in range(1, 4):
        for ms in itertools.combinations_with_replacement(range(6, 1, -1), count):
            for n in range(1, 7):
                assert l_sequence(pair([n], ms)).total == star_vs_forest_value(n, ms)
                assert l_sequence(pair([n, n], ms)).total == two_stars_vs_forest_value(n, ms)
                if n % 2 and ms[0] % 2:
                    for s in range(1, 4):
                        assert (l_sequence(pair([n] * s, ms)).total
                                == odd_stars_vs_forest_value(s, n, ms))


def test_extremal_family_examples():
    small = classify_instance(pair([2], [2]))
    assert codes(extremal_family(small, pair([2], [2]))) == codes([make_star(3), make_complete(3)])
    forests = pair([2], [2, 2])
    family = extremal_family(classify_instance(forests), forests)
    k13, k3 = make_star(3), make_complete(3)
    assert codes(family) == codes([disjoint_union(k13, k13), disjoint_union(k13, k3),
                                   disjoint_union(k3, k3)])
    forests = pair([3, 3], [3, 2])
    family = extremal_family(classify_instance(forests), forests)
    assert len(family) == 1
    assert is_isomorphic(family[0], witness_graph(forests))


def test_extremal_family_same_size_with_cycles():
    forests = pair([2], [1, 1, 1, 1])
    family = extremal_family(classify_instance(forests), forests)
    p3 = make_star(2)
    c4 = make_cycle(4)
    assert codes(family) == codes([
        disjoint_union(p3, p3, p3, p3),
        disjoint_union(c4, p3, p3),
        disjoint_union(c4, c4),
    ])


def test_extremal_family_mirrored():
    forests = pair([3, 2], [2])
    mirrored = [m for m in classify_instance(forests, all_matches=True) if m.mirrored][0]
    family = extremal_family(mirrored, forests)
    assert codes(family) == codes([disjoint_union(make_star(4), make_star(3)),
                                   disjoint_union(make_star(4), make_complete(3))])


@pytest.mark.parametrize("first, second", [
    ([1], [1]),
    ([2], [2]),
    ([2], [1, 1]),
    ([3], [2]),
    ([2], [2, 2]),
    ([3], [3, 2]),
    ([2], [1, 1, 1, 1]),
    ([3, 2], [2]),
    ([3, 3], [3, 2]),
])
def test_extremal_family_graphs_arrow_at_conjectured_size(first, second):
    forests = pair(first, second)
    target = conjectured_size_ramsey(forests)
    characterized = TheoremCatalogue().characterized_cases()
    instance = next(m for m in classify_instance(forests, all_matches=True)
                    if m.covering_result in characterized)
    family = extremal_family(instance, forests)
    assert family
    for g in family:
        assert g.edge_count == target
        assert arrows(g, forests).arrows is True


def test_extremal_family_needs_characterization():
    forests = pair([2, 2], [3, 2])
    with pytest.raises(NoCharacterizationError):
        extremal_family(classify_instance(forests), forests)
    with pytest.raises(NoCharacterizationError):
        verify_characterization(forests)


@pytest.mark.parametrize("first, second, value, minimal", [
    ([2], [2], 3, [make_complete(3), make_star(3)]),
    ([2], [1, 1], 4, [make_cycle(4), disjoint_union(make_star(2), make_star(2))]),
    ([1], [1], 1, [make_star(1)]),
])
def test_size_ramsey_exhaustive_examples(first, second, value, minimal):
    result = size_ramsey_exhaustive(pair(first, second), max_edges=5)
    assert result.status == "exact"
    assert result.value == value
    assert codes(result.minimal_graphs) == codes(minimal)
    assert all(arrows(g, pair(first, second)).arrows for g in result.minimal_graphs)


def test_size_ramsey_not_found_and_budget():
    result = size_ramsey_exhaustive(pair([2], [2]), max_edges=2)
    assert result.status == "not-found"
    assert result.value is None
    assert result.to_json()["minimal_graphs"] == []
    with pytest.raises(EnumerationBudgetError):
        size_ramsey_exhaustive(pair([2], [2]), max_edges=Config.ENUM_MAX_EDGES + 1)


def test_size_ramsey_partial_when_undecided():
    result = size_ramsey_exhaustive(pair([2], [2]), max_edges=3,
                                    budget=SearchBudget(max_colorings=1))
    assert result.status == "partial"
    assert result.undecided


@pytest.mark.parametrize("first, second", [([2], [2]), ([2], [1, 1]), ([1], [1])])
def test_verify_characterization_small_cases(first, second):
    report = verify_characterization(pair(first, second))
    assert report.status == "equal"
    assert report.missing == []
    assert report.unexpected == []
    payload = report.to_json()
    assert payload["value"] == payload["predicted_value"]


def test_verify_characterization_beyond_budget_is_partial(monkeypatch):
    monkeypatch.setattr(Config, "ENUM_MAX_EDGES", 6)
    report = verify_characterization(pair([3, 3], [3, 2]))
    assert report.status == "partial"
    assert report.search.max_edges == 6
    payload = report.to_json()
    assert payload["value"] is None
    assert payload["predicted_value"] == 14
    assert payload["lower_bound"] == 7
    assert validate_report({"l_sequence": [5, 5, 4], **payload}, "verify")["valid"] is True


def test_verify_characterization_explicit_limit_still_checked():
    with pytest.raises(EnumerationBudgetError):
        verify_characterization(pair([2], [2]), max_edges=Config.ENUM_MAX_EDGES + 1)


def test_lower_bound_stops_at_first_undecided_graph():
    result = size_ramsey_exhaustive(pair([2], [2]), max_edges=3,
                                    budget=SearchBudget(max_colorings=1))
    assert result.lower_bound == min(g.edge_count for g in result.undecided)
    assert size_ramsey_exhaustive(pair([2], [2]), max_edges=2).lower_bound == 3
    assert size_ramsey_exhaustive(pair([2], [2]), max_edges=4).lower_bound == 3


def test_witness_soundness_sweep_small():
    assert len(forests_up_to(2, 2)) == 5
    report = witness_soundness_sweep(max_size=2, max_components=2, max_total=6)
    assert report.checked > 0
    assert report.failures == ()
    assert report.undecided == ()
