"""Grounded (skeptical) labelling and game-theoretic lengths.

The grounded labelling is the least fixpoint of the two labelling rules:
an argument is IN when every one of its attackers is OUT, and OUT when
some attacker is IN. Arguments forced by neither rule stay UNDEC.

Alongside the labels, every decided argument carries a *length*: the
number of discussion rounds needed to settle it. Unattacked arguments
are IN at length 0; an OUT argument is settled one round after its
earliest IN attacker (min); an attacked IN argument is settled one round
after its last attacker is defeated (max). UNDEC arguments sit at
infinity. IN lengths are always even, OUT lengths always odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .model import Attack, Framework

INFINITE = math.inf

Length = float  # a natural number, or INFINITE


class Label(str, Enum):
    IN = "in"
    OUT = "out"
    UNDEC = "undec"


Labelling = Mapping[str, Label]


@dataclass(frozen=True)
class GroundedResult:
    """Labels, lengths, and the set of arguments left undecided."""

    labelling: dict[str, Label]
    lengths: dict[str, Length]
    undec_set: frozenset[str]

    def is_total(self) -> bool:
        return not self.undec_set


def fixpoint_rounds(framework: Framework) -> list[tuple[frozenset[str], frozenset[str]]]:
    """Snapshots of the (IN, OUT) sets after each labelling round.

    Both sets grow monotonically; the fixpoint is reached in at most
    |arguments| rounds. The final snapshot defines the grounded labels.
    """
    attackers = framework.attackers
    in_set: set[str] = set()
    out_set: set[str] = set()
    rounds: list[tuple[frozenset[str], frozenset[str]]] = []
    undecided = list(framework.arguments)
    while True:
        newly_in = [x for x in undecided if all(a in out_set for a in attackers[x])]
        in_set.update(newly_in)
        undecided = [x for x in undecided if x not in in_set]
        newly_out = [x for x in undecided if any(a in in_set for a in attackers[x])]
        out_set.update(newly_out)
        undecided = [x for x in undecided if x not in out_set]
        if not newly_in and not newly_out:
            return rounds
        rounds.append((frozenset(in_set), frozenset(out_set)))


def grounded(framework: Framework) -> GroundedResult:
    """Compute the unique grounded labelling with per-argument lengths."""
    rounds = fixpoint_rounds(framework)
    in_set, out_set = rounds[-1] if rounds else (frozenset(), frozenset())
    labelling = {}
    for name in framework.arguments:
        if name in in_set:
            labelling[name] = Label.IN
        elif name in out_set:
            labelling[name] = Label.OUT
        else:
            labelling[name] = Label.UNDEC
    lengths = _lengths(framework, labelling)
    undec = frozenset(x for x, lab in labelling.items() if lab is Label.UNDEC)
    return GroundedResult(labelling=labelling, lengths=lengths, undec_set=undec)


def lengths(framework: Framework, labelling: Labelling) -> dict[str, Length]:
    """Lengths for the grounded labelling of ``framework``.

    The length recurrence is only well-founded for the grounded
    labelling itself, so anything else is rejected. (Lengths for a
    credulous solution come from suspension; see the explain module.)
    """
    expected = grounded(framework).labelling
    if dict(labelling) != expected:
        raise ValueError("labelling is not the grounded labelling of this framework")
    return _lengths(framework, labelling)


def _lengths(framework: Framework, labelling: Labelling) -> dict[str, Length]:
    # Relaxation to fixpoint. OUT values start from partially-known
    # minima and only decrease; IN values are set once every attacker is
    # known and likewise only decrease. Values are bounded by |V|.
    attackers = framework.attackers
    values: dict[str, Length] = {}
    for name in framework.arguments:
        if labelling[name] is Label.UNDEC:
            values[name] = INFINITE
        elif labelling[name] is Label.IN and not attackers[name]:
            values[name] = 0
    changed = True
    while changed:
        changed = False
        for name in framework.arguments:
            label = labelling[name]
            if label is Label.UNDEC or (label is Label.IN and not attackers[name]):
                continue
            if label is Label.OUT:
                known = [
                    values[a]
                    for a in attackers[name]
                    if labelling[a] is Label.IN and a in values
                ]
                candidate = 1 + min(known) if known else None
            else:
                if any(a not in values for a in attackers[name]):
                    candidate = None
                else:
                    candidate = 1 + max(values[a] for a in attackers[name])
            if candidate is not None and values.get(name) != candidate:
                values[name] = candidate
                changed = True
    missing = [x for x in framework.arguments if x not in values]
    if missing:
        raise ValueError(f"length recurrence does not ground out at: {missing[0]}")
    return values


def grounded_after_suspension(
    framework: Framework, suspended: Iterable[Attack]
) -> GroundedResult:
    """Grounded result of the framework with ``suspended`` edges removed.

    The framework itself is untouched; every suspended edge must exist.
    """
    reduced = framework.without_attacks(suspended)
    return grounded(reduced)


def is_legal(framework: Framework, labelling: Labelling) -> bool:
    """Both labelling rules hold as iff-conditions (complete labelling)."""
    attackers = framework.attackers
    if set(labelling) != set(framework.arguments):
        return False
    for name in framework.arguments:
        has_in = any(labelling[a] is Label.IN for a in attackers[name])
        all_out = all(labelling[a] is Label.OUT for a in attackers[name])
        label = labelling[name]
        if (label is Label.IN) != all_out:
            return False
        if (label is Label.OUT) != has_in:
            return False
    return True


def grounded_document(result: GroundedResult) -> dict:
    """JSON-ready dict: labels plus lengths, with infinity as "inf"."""
    return {
        "labels": {name: label.value for name, label in result.labelling.items()},
        "lengths": {name: length_json(v) for name, v in result.lengths.items()},
    }


def length_json(value: Length):
    return "inf" if value == INFINITE else int(value)
