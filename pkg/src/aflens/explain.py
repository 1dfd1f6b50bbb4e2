"""Explanations of credulous solutions via minimal critical attack sets.

A credulous (stable) solution decides every originally-undecided
argument. Each such choice can be explained by a minimal set of attacks
whose temporary suspension makes the grounded labelling itself total
and equal to the chosen solution: once those edges are out of the way,
every argument has a well-founded derivation again.

The search space is, by default, the set of *failing* attacks inside
the undecided region: edges whose attacker ends OUT and whose target
ends IN in the chosen solution. A wider mode considers every edge with
both endpoints undecided. Subsets are tested smallest-first with
supersets of known answers pruned, so the result is an antichain of
minimal sets, ordered by (cardinality, edge declaration order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .classify import EdgeClass, EdgeClassification, classify_edges
from .grounded import GroundedResult, Label, Labelling, grounded, grounded_after_suspension
from .model import Attack, Framework

CANDIDATE_MODES = ("failing", "all-undec")


@dataclass(frozen=True)
class SearchBounds:
    """Caps on the subset search; exceeding any of them flags truncation."""

    max_cardinality: int = 4
    max_tests: int = 50_000
    max_results: int = 100


class SearchCancelled(Exception):
    """Raised when a cancellation hook stops the subset search."""


@dataclass(frozen=True)
class Overlay:
    """A 2-valued solution drawn on top of the grounded base."""

    base: GroundedResult
    target: dict[str, Label]
    resolved: tuple[str, ...]
    effective_labels: dict[str, Label]


@dataclass(frozen=True)
class CriticalAttackSet:
    edges: tuple[Attack, ...]
    resolution: GroundedResult


@dataclass(frozen=True)
class SearchResult:
    sets: tuple[CriticalAttackSet, ...]
    truncated: bool
    tests_run: int


@dataclass(frozen=True)
class Explanation:
    solution_index: int
    overlay: Overlay
    critical_sets: tuple[CriticalAttackSet, ...]
    truncated: bool


@dataclass(frozen=True)
class WhatIfResult:
    result: GroundedResult
    classification: EdgeClassification
    suspended: tuple[Attack, ...]


def build_overlay(base: GroundedResult, target: Labelling) -> Overlay:
    """Overlay ``target`` on ``base``; they must agree outside the undecided set."""
    target = dict(target)
    if set(target) != set(base.labelling):
        raise ValueError("target labelling is not total over the framework's arguments")
    for name, label in base.labelling.items():
        if label is not Label.UNDEC and target[name] is not label:
            raise ValueError(
                f"target disagrees with the grounded base on decided argument: {name}"
            )
    resolved = tuple(x for x in base.labelling if x in base.undec_set)
    effective = {
        name: (target[name] if name in base.undec_set else label)
        for name, label in base.labelling.items()
    }
    return Overlay(base=base, target=target, resolved=resolved, effective_labels=effective)


def candidate_edges(
    framework: Framework,
    base: GroundedResult,
    target: Labelling,
    mode: str = "failing",
) -> list[Attack]:
    """Attacks eligible for suspension, in declaration order."""
    if mode not in CANDIDATE_MODES:
        raise ValueError(f"unknown candidate mode: {mode}")
    undec = base.undec_set
    picked = []
    for attack in framework.attacks:
        if attack.source not in undec or attack.target not in undec:
            continue
        if mode == "failing" and not (
            target[attack.source] is Label.OUT and target[attack.target] is Label.IN
        ):
            continue
        picked.append(attack)
    return picked


def critical_attack_sets(
    framework: Framework,
    base: GroundedResult,
    target: Labelling,
    bounds: SearchBounds = SearchBounds(),
    candidates: str = "failing",
    should_cancel: Optional[Callable[[], bool]] = None,
) -> SearchResult:
    """All minimal suspension sets that resolve the base into ``target``.

    ``target`` must be a stable labelling of the framework and ``base``
    its grounded result. Each returned set carries the grounded result
    obtained by suspending it, which is total and equals the target on
    every argument. Minimality is with respect to set inclusion within
    the candidate space; the returned sets are pairwise incomparable.
    """
    target = dict(target)
    _check_target(framework, base, target)
    space = candidate_edges(framework, base, target, candidates)
    found: list[CriticalAttackSet] = []
    found_keys: list[frozenset[Attack]] = []
    tests = 0
    truncated = False
    depth = min(bounds.max_cardinality, len(space))
    try:
        for size in range(depth + 1):
            for combo in itertools.combinations(space, size):
                edge_set = frozenset(combo)
                if any(key <= edge_set for key in found_keys):
                    continue
                if should_cancel is not None and should_cancel():
                    raise SearchCancelled
                if tests >= bounds.max_tests:
                    raise _BoundHit
                tests += 1
                resolution = grounded_after_suspension(framework, combo)
                if resolution.undec_set or resolution.labelling != target:
                    continue
                found.append(CriticalAttackSet(edges=tuple(combo), resolution=resolution))
                found_keys.append(edge_set)
                if len(found) >= bounds.max_results:
                    raise _BoundHit
    except _BoundHit:
        truncated = True
    if not truncated and bounds.max_cardinality < len(space):
        # Larger subsets were never visited; unless the empty set already
        # resolves (making everything else non-minimal), minimal sets
        # beyond the cardinality cap may have been missed.
        truncated = not any(not key for key in found_keys)
    return SearchResult(sets=tuple(found), truncated=truncated, tests_run=tests)


class _BoundHit(Exception):
    pass


def _check_target(framework: Framework, base: GroundedResult, target: dict[str, Label]) -> None:
    if grounded(framework).labelling != base.labelling:
        raise ValueError("base is not the grounded result of this framework")
    if set(target) != set(framework.arguments):
        raise ValueError("target labelling is not total over the framework's arguments")
    if any(label is Label.UNDEC for label in target.values()):
        raise ValueError("target is not a stable labelling: it has undecided arguments")
    from .grounded import is_legal

    if not is_legal(framework, target):
        raise ValueError("target is not a stable labelling of this framework")


def explain_solution(
    framework: Framework,
    base: GroundedResult,
    target: Labelling,
    solution_index: int,
    bounds: SearchBounds = SearchBounds(),
    candidates: str = "failing",
    should_cancel: Optional[Callable[[], bool]] = None,
) -> Explanation:
    """Overlay plus critical attack sets for one credulous solution."""
    overlay = build_overlay(base, target)
    search = critical_attack_sets(
        framework, base, target, bounds=bounds, candidates=candidates, should_cancel=should_cancel
    )
    return Explanation(
        solution_index=solution_index,
        overlay=overlay,
        critical_sets=search.sets,
        truncated=search.truncated,
    )


def what_if(framework: Framework, suspended: Iterable[Attack]) -> WhatIfResult:
    """Grounded result and edge classes after suspending the given attacks.

    The classification covers the surviving edges; the suspended ones
    are reported separately.
    """
    suspended = tuple(Attack(a, b) for a, b in suspended)
    reduced = framework.without_attacks(suspended)
    result = grounded(reduced)
    classification = classify_edges(reduced, result.labelling, result.lengths)
    return WhatIfResult(result=result, classification=classification, suspended=suspended)


def merged_view_classes(
    framework: Framework,
    base: GroundedResult,
    whatif: WhatIfResult,
) -> dict[Attack, EdgeClass]:
    """Edge classes for a suspension view, covering every framework edge.

    Surviving edges carry their class under the resolved labelling;
    suspended edges keep the class they had under the grounded base.
    """
    base_classes = classify_edges(framework, base.labelling, base.lengths).classes
    merged = dict(whatif.classification.classes)
    for att in whatif.suspended:
        merged[att] = base_classes[att]
    return merged


def explanation_document(explanation: Explanation) -> dict:
    return {
        "solution": explanation.solution_index,
        "overlay": {
            "resolved": list(explanation.overlay.resolved),
            "labels": {
                name: label.value
                for name, label in explanation.overlay.effective_labels.items()
            },
        },
        "critical_sets": [
            {
                "edges": [[att.source, att.target] for att in cs.edges],
                "resolution_labels": {
                    name: label.value for name, label in cs.resolution.labelling.items()
                },
            }
            for cs in explanation.critical_sets
        ],
        "truncated": explanation.truncated,
    }
