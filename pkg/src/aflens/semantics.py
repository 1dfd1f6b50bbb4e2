"""Enumeration of labellings under complete, stable, and preferred semantics.

Every complete labelling extends the grounded one, so the search fixes
the grounded IN/OUT part and backtracks only over the originally
undecided arguments, branching IN/OUT/UNDEC per argument with constraint
propagation in between. Stable labellings are the complete ones without
UNDEC; preferred labellings are the complete ones whose IN-set is
maximal under set inclusion.

Solution order is deterministic but carries no meaning: solutions are
sorted by their IN-sets, compared as tuples of declaration indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .grounded import Label, grounded, is_legal
from .model import Framework

DEFAULT_MAX_SOLUTIONS = 10_000


class Semantics(str, Enum):
    GROUNDED = "grounded"
    COMPLETE = "complete"
    STABLE = "stable"
    PREFERRED = "preferred"


@dataclass(frozen=True)
class SolutionSet:
    semantics: Semantics
    solutions: tuple[dict[str, Label], ...]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.solutions)


class _Conflict(Exception):
    pass


@dataclass
class _SearchState:
    labels: dict[str, Label | None]
    queue: list[str] = field(default_factory=list)

    def copy(self) -> "_SearchState":
        return _SearchState(labels=dict(self.labels))


class _CompleteSearch:
    """Backtracking enumeration of all complete labellings."""

    def __init__(self, framework: Framework, base_labels: dict[str, Label], allow_undec: bool):
        self.framework = framework
        self.attackers = framework.attackers
        self.targets = framework.targets
        self.base = base_labels
        self.allow_undec = allow_undec
        self.branch_order = [x for x in framework.arguments if base_labels[x] is Label.UNDEC]
        self.found: list[dict[str, Label]] = []
        self.hit_cap = False

    def run(self, max_solutions: int) -> None:
        labels: dict[str, Label | None] = {
            x: (lab if lab is not Label.UNDEC else None) for x, lab in self.base.items()
        }
        self._search(_SearchState(labels=labels), max_solutions)

    def _search(self, state: _SearchState, max_solutions: int) -> None:
        if self.hit_cap:
            return
        try:
            self._propagate(state)
        except _Conflict:
            return
        pick = next((x for x in self.branch_order if state.labels[x] is None), None)
        if pick is None:
            self._emit(state)
            if len(self.found) >= max_solutions:
                self.hit_cap = True
            return
        choices = (Label.IN, Label.OUT) if not self.allow_undec else (Label.IN, Label.OUT, Label.UNDEC)
        for choice in choices:
            branch = state.copy()
            try:
                self._assign(branch, pick, choice)
            except _Conflict:
                continue
            self._search(branch, max_solutions)
            if self.hit_cap:
                return

    def _assign(self, state: _SearchState, name: str, label: Label) -> None:
        current = state.labels[name]
        if current is not None:
            if current is not label:
                raise _Conflict
            return
        if not self.allow_undec and label is Label.UNDEC:
            raise _Conflict
        state.labels[name] = label
        state.queue.append(name)

    def _propagate(self, state: _SearchState) -> None:
        while state.queue:
            changed = state.queue.pop()
            self._examine(state, changed)
            for t in self.targets[changed]:
                self._examine(state, t)

    def _examine(self, state: _SearchState, name: str) -> None:
        labels = state.labels
        n_in = n_und = 0
        free: list[str] = []
        for a in self.attackers[name]:
            la = labels[a]
            if la is None:
                free.append(a)
            elif la is Label.IN:
                n_in += 1
            elif la is Label.UNDEC:
                n_und += 1
        label = labels[name]
        if label is None:
            if n_in > 0:
                self._assign(state, name, Label.OUT)
            elif not free and n_und == 0:
                self._assign(state, name, Label.IN)
            elif not free:
                self._assign(state, name, Label.UNDEC)
            return
        if label is Label.IN:
            if n_in or n_und:
                raise _Conflict
            for a in free:
                self._assign(state, name=a, label=Label.OUT)
        elif label is Label.OUT:
            if n_in == 0:
                if not free:
                    raise _Conflict
                if len(free) == 1:
                    self._assign(state, free[0], Label.IN)
        else:
            if n_in:
                raise _Conflict
            if not free and n_und == 0:
                raise _Conflict
            if n_und == 0 and len(free) == 1:
                self._assign(state, free[0], Label.UNDEC)

    def _emit(self, state: _SearchState) -> None:
        labelling = {x: lab for x, lab in state.labels.items() if lab is not None}
        # Propagation should only produce legal labellings; verify anyway.
        if not is_legal(self.framework, labelling):
            return
        self.found.append(labelling)


def _in_key(framework: Framework, labelling: dict[str, Label]) -> tuple:
    index = framework.argument_index
    in_part = tuple(sorted(index[x] for x, lab in labelling.items() if lab is Label.IN))
    out_part = tuple(sorted(index[x] for x, lab in labelling.items() if lab is Label.OUT))
    return (in_part, out_part)


def enumerate_labellings(
    framework: Framework,
    semantics: Semantics,
    max_solutions: int = DEFAULT_MAX_SOLUTIONS,
) -> SolutionSet:
    """All labellings of ``framework`` under ``semantics``, in stable order.

    A stable-semantics result may be empty; that is an answer, not an
    error. When more than ``max_solutions`` labellings exist the list is
    cut short and flagged truncated.
    """
    base = grounded(framework)
    if semantics is Semantics.GROUNDED:
        return SolutionSet(semantics, (dict(base.labelling),))
    search = _CompleteSearch(
        framework,
        base.labelling,
        allow_undec=semantics is not Semantics.STABLE,
    )
    search.run(max_solutions)
    found = search.found
    if semantics is Semantics.PREFERRED:
        found = _max_in_filter(found)
    found.sort(key=lambda lab: _in_key(framework, lab))
    return SolutionSet(semantics, tuple(found), truncated=search.hit_cap)


def _max_in_filter(labellings: list[dict[str, Label]]) -> list[dict[str, Label]]:
    in_sets = [frozenset(x for x, lab in m.items() if lab is Label.IN) for m in labellings]
    keep = []
    for i, m in enumerate(labellings):
        if not any(j != i and in_sets[i] < in_sets[j] for j in range(len(labellings))):
            keep.append(m)
    return keep


def solution(
    framework: Framework,
    semantics: Semantics,
    index: int,
    max_solutions: int = DEFAULT_MAX_SOLUTIONS,
) -> dict[str, Label]:
    """The ``index``-th labelling in the deterministic enumeration order."""
    solutions = enumerate_labellings(framework, semantics, max_solutions)
    if not 0 <= index < len(solutions.solutions):
        raise IndexError(
            f"solution index {index} out of range "
            f"({len(solutions.solutions)} {semantics.value} solution(s))"
        )
    return dict(solutions.solutions[index])


def solution_set_document(result: SolutionSet) -> dict:
    return {
        "semantics": result.semantics.value,
        "count": len(result.solutions),
        "truncated": result.truncated,
        "solutions": [
            {name: lab.value for name, lab in labelling.items()}
            for labelling in result.solutions
        ],
    }
