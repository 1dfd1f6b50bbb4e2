import random

import pytest

from aflens.classify import EdgeClass
from aflens.explain import (
    SearchBounds,
    SearchCancelled,
    build_overlay,
    candidate_edges,
    critical_attack_sets,
    explain_solution,
    explanation_document,
    merged_view_classes,
    what_if,
)
from aflens.grounded import Label, grounded
from aflens.model import Attack
from aflens.semantics import Semantics, enumerate_labellings

import oracles
from conftest import make_framework, random_framework


def stable(fw):
    return [dict(s) for s in enumerate_labellings(fw, Semantics.STABLE).solutions]


WIDE = SearchBounds(max_cardinality=20, max_tests=10**6, max_results=10**4)


def search(fw, index, **kwargs):
    base = grounded(fw)
    target = stable(fw)[index]
    return critical_attack_sets(fw, base, target, **kwargs)


def edge_lists(result):
    return [[(a.source, a.target) for a in cs.edges] for cs in result.sets]


# --- the running example ----------------------------------------------


def test_mutual_single_edge_deltas(mutual):
    first = search(mutual, 0)
    assert edge_lists(first) == [[("o", "m")]]
    assert not first.truncated
    second = search(mutual, 1)
    assert edge_lists(second) == [[("m", "o")]]
    for result, index in ((first, 0), (second, 1)):
        resolution = result.sets[0].resolution
        assert resolution.is_total()
        assert resolution.labelling == stable(mutual)[index]


def test_chain_needs_no_suspension(chain):
    result = search(chain, 0)
    assert edge_lists(result) == [[]]
    assert not result.truncated


def test_four_cycle_two_alternatives(cycle4):
    result = search(cycle4, 0)
    assert edge_lists(result) == [[("b", "c")], [("d", "a")]]
    assert not result.truncated


def test_candidate_modes(cycle4):
    base = grounded(cycle4)
    target = stable(cycle4)[0]
    failing = candidate_edges(cycle4, base, target, "failing")
    wide = candidate_edges(cycle4, base, target, "all-undec")
    assert failing == [Attack("b", "c"), Attack("d", "a")]
    assert set(failing) <= set(wide)
    assert len(wide) == 4
    with pytest.raises(ValueError, match="candidate mode"):
        candidate_edges(cycle4, base, target, "everything")


def test_all_undec_mode_agrees_on_cycle(cycle4):
    narrow = search(cycle4, 0, bounds=WIDE, candidates="failing")
    wide = search(cycle4, 0, bounds=WIDE, candidates="all-undec")
    assert edge_lists(narrow) == edge_lists(wide)


# --- bounds and truncation --------------------------------------------


def test_zero_cardinality_truncates(mutual):
    result = search(mutual, 0, bounds=SearchBounds(max_cardinality=0))
    assert result.sets == ()
    assert result.truncated


def test_test_budget_truncates(mutual):
    result = search(mutual, 0, bounds=SearchBounds(max_tests=1))
    assert result.truncated
    assert result.tests_run == 1


def test_result_cap_truncates(cycle4):
    result = search(cycle4, 0, bounds=SearchBounds(max_results=1))
    assert edge_lists(result) == [[("b", "c")]]
    assert result.truncated


def test_cancellation(mutual):
    with pytest.raises(SearchCancelled):
        search(mutual, 0, should_cancel=lambda: True)


def test_cancellation_after_some_tests(cycle4):
    calls = []

    def cancel():
        calls.append(None)
        return len(calls) > 2

    with pytest.raises(SearchCancelled):
        search(cycle4, 0, bounds=WIDE, should_cancel=cancel)
    assert len(calls) == 3


# --- validation --------------------------------------------------------


def test_rejects_partial_target(mutual):
    base = grounded(mutual)
    with pytest.raises(ValueError, match="not total"):
        critical_attack_sets(mutual, base, {"m": Label.IN})


def test_rejects_undecided_target(mutual):
    base = grounded(mutual)
    with pytest.raises(ValueError, match="undecided"):
        critical_attack_sets(mutual, base, dict(base.labelling))


def test_rejects_illegal_target(chain):
    base = grounded(chain)
    bogus = {"a": Label.IN, "b": Label.OUT, "c": Label.OUT}
    with pytest.raises(ValueError, match="not a stable labelling"):
        critical_attack_sets(chain, base, bogus)


def test_rejects_foreign_base(mutual, chain):
    with pytest.raises(ValueError, match="not the grounded result"):
        critical_attack_sets(
            mutual, grounded(chain), {"m": Label.IN, "o": Label.OUT}
        )


# --- brute-force equivalence ------------------------------------------


def test_antichain_matches_bruteforce():
    rng = random.Random(53)
    checked = 0
    while checked < 30:
        fw = random_framework(rng, max_args=8)
        base = grounded(fw)
        if not base.undec_set or len(base.undec_set) > 6:
            continue
        solutions = stable(fw)
        if not solutions:
            continue
        target = solutions[0]
        space = candidate_edges(fw, base, target)
        if len(space) > 10:
            continue
        checked += 1
        result = critical_attack_sets(fw, base, target, bounds=WIDE)
        assert not result.truncated
        got = [cs.edges for cs in result.sets]
        want = oracles.minimal_resolving_subsets(fw, target, space)
        assert sorted(map(frozenset, got)) == sorted(map(frozenset, want))
        for cs in result.sets:
            assert cs.resolution.is_total()
            assert cs.resolution.labelling == target


def test_returned_sets_form_an_antichain():
    rng = random.Random(59)
    checked = 0
    while checked < 20:
        fw = random_framework(rng, max_args=8)
        base = grounded(fw)
        solutions = stable(fw)
        if not base.undec_set or not solutions:
            continue
        checked += 1
        result = critical_attack_sets(fw, base, solutions[-1], bounds=WIDE)
        keys = [frozenset(cs.edges) for cs in result.sets]
        for i, a in enumerate(keys):
            for j, b in enumerate(keys):
                assert i == j or not a <= b


# --- overlays and what-if ---------------------------------------------


def test_build_overlay(mutual):
    base = grounded(mutual)
    target = stable(mutual)[0]
    overlay = build_overlay(base, target)
    assert overlay.resolved == ("m", "o")
    assert overlay.effective_labels == {"m": Label.IN, "o": Label.OUT}


def test_overlay_must_agree_on_decided(chain):
    base = grounded(chain)
    flipped = {"a": Label.OUT, "b": Label.IN, "c": Label.OUT}
    with pytest.raises(ValueError, match="disagrees"):
        build_overlay(base, flipped)


def test_what_if_resolves(mutual):
    outcome = what_if(mutual, [Attack("o", "m")])
    assert outcome.result.is_total()
    assert outcome.suspended == (Attack("o", "m"),)
    assert outcome.classification.classes == {Attack("m", "o"): EdgeClass.PRIMARY}


def test_what_if_unknown_edge(mutual):
    with pytest.raises(ValueError, match="unknown attack"):
        what_if(mutual, [Attack("m", "m")])


def test_merged_view_classes(mutual):
    base = grounded(mutual)
    outcome = what_if(mutual, [Attack("o", "m")])
    merged = merged_view_classes(mutual, base, outcome)
    assert merged == {
        Attack("m", "o"): EdgeClass.PRIMARY,
        Attack("o", "m"): EdgeClass.CONTESTED,
    }


def test_explanation_document(mutual):
    base = grounded(mutual)
    explanation = explain_solution(mutual, base, stable(mutual)[0], 0)
    assert explanation_document(explanation) == {
        "solution": 0,
        "overlay": {
            "resolved": ["m", "o"],
            "labels": {"m": "in", "o": "out"},
        },
        "critical_sets": [
            {
                "edges": [["o", "m"]],
                "resolution_labels": {"m": "in", "o": "out"},
            }
        ],
        "truncated": False,
    }
