"""Engine and explorer for abstract argumentation frameworks.

Compute the grounded labelling with game-theoretic lengths, enumerate
complete/stable/preferred solutions, classify attacks, explain choices
via minimal critical attack sets, and render layered views.
"""

from .classify import EdgeClass, EdgeClassification, classify_edges
from .explain import (
    CriticalAttackSet,
    Explanation,
    SearchBounds,
    SearchCancelled,
    critical_attack_sets,
    explain_solution,
    what_if,
)
from .formats import FrameworkTooLarge, ParseError, parse, serialize
from .grounded import (
    INFINITE,
    GroundedResult,
    Label,
    grounded,
    grounded_after_suspension,
    is_legal,
)
from .layout import Layout, View, base_view, export_dot, export_layout_json, layered_layout
from .model import Annotation, Attack, Framework
from .semantics import Semantics, SolutionSet, enumerate_labellings

__all__ = [
    "Annotation",
    "Attack",
    "CriticalAttackSet",
    "EdgeClass",
    "EdgeClassification",
    "Explanation",
    "Framework",
    "FrameworkTooLarge",
    "GroundedResult",
    "INFINITE",
    "Label",
    "Layout",
    "ParseError",
    "SearchBounds",
    "SearchCancelled",
    "Semantics",
    "SolutionSet",
    "View",
    "base_view",
    "classify_edges",
    "critical_attack_sets",
    "enumerate_labellings",
    "explain_solution",
    "export_dot",
    "export_layout_json",
    "grounded",
    "grounded_after_suspension",
    "is_legal",
    "layered_layout",
    "parse",
    "serialize",
    "what_if",
]

__version__ = "0.1.0"
