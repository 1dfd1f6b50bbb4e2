"""Core data model: arguments, attacks, and immutable frameworks.

A framework is a directed graph of named arguments and attack edges,
with optional per-argument annotations (a text gloss and/or a URL).
Frameworks are immutable after construction and safe to share across
threads; all downstream computations are pure functions of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional

# Argument names are bare tokens so they survive every supported text
# format: no whitespace, no "()," or ".", no "%" (APX comment), and not
# the literal "#" (TGF section separator).
_FORBIDDEN_CHARS = set("(),.%")

MAX_ARGUMENTS = 10_000
MAX_ATTACKS = 100_000


def is_valid_argument_id(name: str) -> bool:
    if not name or name == "#":
        return False
    return not any(c.isspace() or c in _FORBIDDEN_CHARS for c in name)


class Attack(NamedTuple):
    """A directed attack edge. Self-attacks are permitted."""

    source: str
    target: str


@dataclass(frozen=True)
class Annotation:
    """Free-text gloss for an argument, optionally linking to details."""

    text: str = ""
    url: Optional[str] = None

    def __post_init__(self):
        if not self.text and self.url is None:
            raise ValueError("annotation needs text or a url")


@dataclass(frozen=True)
class Framework:
    """An argumentation framework: ordered arguments plus attack edges.

    Declaration order of both arguments and attacks is preserved; all
    downstream enumeration and serialization orders derive from it.
    """

    arguments: tuple[str, ...]
    attacks: tuple[Attack, ...]
    annotations: Mapping[str, Annotation] = field(default_factory=dict)

    def __post_init__(self):
        seen: set[str] = set()
        for name in self.arguments:
            if not is_valid_argument_id(name):
                raise ValueError(f"invalid argument id: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate argument: {name}")
            seen.add(name)
        edges: set[Attack] = set()
        for att in self.attacks:
            if att.source not in seen:
                raise ValueError(f"attack references undeclared argument: {att.source}")
            if att.target not in seen:
                raise ValueError(f"attack references undeclared argument: {att.target}")
            if att in edges:
                raise ValueError(f"duplicate attack: ({att.source},{att.target})")
            edges.add(att)
        for name in self.annotations:
            if name not in seen:
                raise ValueError(f"annotation for undeclared argument: {name}")

    @classmethod
    def build(
        cls,
        arguments: Iterable[str],
        attacks: Iterable[tuple[str, str]] = (),
        annotations: Optional[Mapping[str, Annotation]] = None,
    ) -> "Framework":
        return cls(
            arguments=tuple(arguments),
            attacks=tuple(Attack(a, b) for a, b in attacks),
            annotations=dict(annotations or {}),
        )

    @cached_property
    def argument_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.arguments)}

    @cached_property
    def attackers(self) -> dict[str, tuple[str, ...]]:
        """Map from argument to its attackers, in declaration order."""
        acc: dict[str, list[str]] = {name: [] for name in self.arguments}
        for att in self.attacks:
            acc[att.target].append(att.source)
        return {name: tuple(lst) for name, lst in acc.items()}

    @cached_property
    def targets(self) -> dict[str, tuple[str, ...]]:
        """Map from argument to the arguments it attacks."""
        acc: dict[str, list[str]] = {name: [] for name in self.arguments}
        for att in self.attacks:
            acc[att.source].append(att.target)
        return {name: tuple(lst) for name, lst in acc.items()}

    @cached_property
    def attack_set(self) -> frozenset[Attack]:
        return frozenset(self.attacks)

    def has_attack(self, source: str, target: str) -> bool:
        return Attack(source, target) in self.attack_set

    def without_attacks(self, removed: Iterable[Attack]) -> "Framework":
        """Copy of this framework with the given edges removed.

        Every removed edge must exist; declaration order of the
        surviving edges is preserved.
        """
        gone = set(Attack(a, b) for a, b in removed)
        unknown = gone - self.attack_set
        if unknown:
            att = sorted(unknown)[0]
            raise ValueError(f"unknown attack: ({att.source},{att.target})")
        return Framework(
            arguments=self.arguments,
            attacks=tuple(a for a in self.attacks if a not in gone),
            annotations=self.annotations,
        )
