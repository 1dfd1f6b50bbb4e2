"""Semantic roles of attack edges relative to a labelling with lengths.

An attack from an IN argument defeats its target; it is *primary* when
the target's defeat happens exactly one round later, and *secondary*
when the target was already defeated in an earlier round. Attacks from
OUT arguments are *blunders*: they carry no weight for any argument's
acceptance. Attacks inside the undecided region are *contested*, and
attacks from an undecided argument onto an already-defeated one are
*moot*.

The remaining three source/target label pairs (IN/IN, IN/UNDEC,
UNDEC/IN) cannot occur under a legal labelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .grounded import INFINITE, Label, Labelling, Length, is_legal
from .model import Attack, Framework


class EdgeClass(str, Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"
    BLUNDER = "blunder"
    CONTESTED = "contested"
    MOOT = "moot"


@dataclass(frozen=True)
class EdgeClassification:
    classes: dict[Attack, EdgeClass]


def classify_edges(
    framework: Framework,
    labelling: Labelling,
    lengths: dict[str, Length],
) -> EdgeClassification:
    """Assign every attack of ``framework`` its edge class.

    The labelling must be legal for the framework (the grounded result,
    possibly after suspension) and the lengths must satisfy the length
    recurrence for it.
    """
    _check_inputs(framework, labelling, lengths)
    classes: dict[Attack, EdgeClass] = {}
    for attack in framework.attacks:
        source_label = labelling[attack.source]
        target_label = labelling[attack.target]
        if source_label is Label.OUT:
            cls = EdgeClass.BLUNDER
        elif source_label is Label.IN:
            # Legality rules out IN and UNDEC targets of an IN attacker.
            assert target_label is Label.OUT, attack
            if lengths[attack.target] == lengths[attack.source] + 1:
                cls = EdgeClass.PRIMARY
            else:
                cls = EdgeClass.SECONDARY
        else:
            assert target_label is not Label.IN, attack
            cls = EdgeClass.CONTESTED if target_label is Label.UNDEC else EdgeClass.MOOT
        classes[attack] = cls
    return EdgeClassification(classes=classes)


def _check_inputs(framework: Framework, labelling: Labelling, lengths: dict[str, Length]) -> None:
    if not is_legal(framework, labelling):
        raise ValueError("labelling is not legal for this framework")
    attackers = framework.attackers
    for name in framework.arguments:
        label = labelling[name]
        value = lengths.get(name)
        if value is None:
            raise ValueError(f"no length for argument: {name}")
        if label is Label.UNDEC:
            ok = value == INFINITE
        elif label is Label.IN and not attackers[name]:
            ok = value == 0
        elif label is Label.IN:
            ok = value == 1 + max(lengths[a] for a in attackers[name])
        else:
            ins = [lengths[a] for a in attackers[name] if labelling[a] is Label.IN]
            ok = bool(ins) and value == 1 + min(ins)
        if not ok:
            raise ValueError(f"length of {name} violates the length recurrence")


def classification_document(classification: EdgeClassification) -> dict:
    return {
        "edges": [
            {"source": att.source, "target": att.target, "class": cls.value}
            for att, cls in classification.classes.items()
        ]
    }
