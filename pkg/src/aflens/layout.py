"""Layered geometry and DOT / JSON rendering of a framework view.

Every finite-length argument sits on the layer equal to its length, so
the derivation structure of the grounded labelling reads bottom-up:
whatever justifies an argument lies strictly below it. Undecided
arguments have no layer; they go into a separate band drawn above the
layering. Within a layer, a single bottom-up barycenter sweep orders
the nodes; ties and nodes without placed neighbors fall back to
declaration order.

A :class:`View` bundles a framework with the labels, edge classes and
suspensions to draw. Overlay and what-if views keep the base geometry
(layers, band, display names) so alternate solutions stay visually
comparable, which is the point of sharing the layering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .classify import EdgeClass, classify_edges
from .explain import merged_view_classes, what_if
from .grounded import GroundedResult, Label, Labelling, length_json
from .model import Attack, Framework

NODE_FILL = {
    Label.IN: "#4C8BF5",
    Label.OUT: "#F5A94C",
    Label.UNDEC: "#F5E64C",
}
OVERLAY_ALPHA = "66"  # 40% opacity suffix for resolved-node fills
CRITICAL_COLOR = "#D62828"
NEUTRAL_EDGE = "#9E9E9E"
CONTESTED_EDGE = "#B59F00"

EDGE_STYLE: dict[EdgeClass, tuple[str, str]] = {
    EdgeClass.PRIMARY: ("solid", NODE_FILL[Label.IN]),
    EdgeClass.SECONDARY: ("dashed", NODE_FILL[Label.IN]),
    EdgeClass.BLUNDER: ("dotted", NEUTRAL_EDGE),
    EdgeClass.CONTESTED: ("solid", CONTESTED_EDGE),
    EdgeClass.MOOT: ("dashed", NEUTRAL_EDGE),
}


@dataclass(frozen=True)
class Layout:
    """Geometry only: who sits where, under what display name."""

    layers: dict[str, int]
    band: tuple[str, ...]
    order: tuple[tuple[str, ...], ...]
    display_names: dict[str, str]


@dataclass(frozen=True)
class View:
    """Everything a renderer needs for one picture of a framework."""

    framework: Framework
    base: GroundedResult
    layout: Layout
    labels: dict[str, Label]
    resolved: tuple[str, ...]
    edge_classes: dict[Attack, EdgeClass]
    suspended: frozenset[Attack]


def display_name(name: str, length: float) -> str:
    if length == float("inf"):
        return name
    return f"{name}.{int(length)}"


def layered_layout(framework: Framework, base: GroundedResult) -> Layout:
    layers = {
        name: int(base.lengths[name])
        for name in framework.arguments
        if name not in base.undec_set
    }
    band = tuple(name for name in framework.arguments if name in base.undec_set)
    names = {
        name: display_name(name, base.lengths[name]) for name in framework.arguments
    }

    depth = max(layers.values()) + 1 if layers else 0
    by_layer: list[list[str]] = [[] for _ in range(depth)]
    for name in framework.arguments:  # declaration order within each layer
        if name in layers:
            by_layer[layers[name]].append(name)

    # One bottom-up sweep: a node's sort key is the mean position of its
    # already-placed neighbors on lower layers, or -1.0 when it has none.
    index = framework.argument_index
    position: dict[str, float] = {}
    order: list[tuple[str, ...]] = []
    for members in by_layer:
        keyed = []
        for name in members:
            below = [
                position[other]
                for other in _neighbors(framework, name)
                if other in position
            ]
            bary = sum(below) / len(below) if below else -1.0
            keyed.append((bary, index[name], name))
        keyed.sort()
        placed = tuple(name for _, _, name in keyed)
        for pos, name in enumerate(placed):
            position[name] = float(pos)
        order.append(placed)
    return Layout(layers=layers, band=band, order=tuple(order), display_names=names)


def _neighbors(framework: Framework, name: str) -> Iterable[str]:
    seen = set()
    for other in framework.attackers[name]:
        if other not in seen:
            seen.add(other)
            yield other
    for other in framework.targets[name]:
        if other not in seen:
            seen.add(other)
            yield other


# --- view assembly -----------------------------------------------------


def base_view(framework: Framework, base: GroundedResult) -> View:
    classes = classify_edges(framework, base.labelling, base.lengths).classes
    return View(
        framework=framework,
        base=base,
        layout=layered_layout(framework, base),
        labels=dict(base.labelling),
        resolved=(),
        edge_classes=classes,
        suspended=frozenset(),
    )


def suspension_view(
    framework: Framework, base: GroundedResult, suspended: Iterable[Attack]
) -> View:
    """The picture after temporarily deleting some attacks.

    Geometry stays that of the base; labels come from the reduced
    framework's grounded result. Suspended edges keep the class they
    had in the base, surviving edges are reclassified.
    """
    outcome = what_if(framework, suspended)
    labels = dict(outcome.result.labelling)
    resolved = tuple(
        name
        for name in framework.arguments
        if name in base.undec_set and labels[name] is not Label.UNDEC
    )
    return View(
        framework=framework,
        base=base,
        layout=layered_layout(framework, base),
        labels=labels,
        resolved=resolved,
        edge_classes=merged_view_classes(framework, base, outcome),
        suspended=frozenset(outcome.suspended),
    )


def overlay_view(
    framework: Framework, base: GroundedResult, target: Labelling
) -> View:
    """A 2-valued solution drawn over the base, no suspensions applied."""
    labels = {
        name: (target[name] if name in base.undec_set else base.labelling[name])
        for name in framework.arguments
    }
    resolved = tuple(name for name in framework.arguments if name in base.undec_set)
    classes = classify_edges(framework, base.labelling, base.lengths).classes
    return View(
        framework=framework,
        base=base,
        layout=layered_layout(framework, base),
        labels=labels,
        resolved=resolved,
        edge_classes=classes,
        suspended=frozenset(),
    )


# --- JSON --------------------------------------------------------------


def layout_document(view: View) -> dict:
    fw = view.framework
    doc: dict = {
        "layers": dict(view.layout.layers),
        "band": list(view.layout.band),
        "order": [list(layer) for layer in view.layout.order],
        "display_names": dict(view.layout.display_names),
        "labels": {name: view.labels[name].value for name in fw.arguments},
        "lengths": {name: length_json(view.base.lengths[name]) for name in fw.arguments},
        "edges": [
            {
                "source": att.source,
                "target": att.target,
                "class": view.edge_classes[att].value,
                "suspended": att in view.suspended,
            }
            for att in fw.attacks
        ],
        "resolved": list(view.resolved),
    }
    annotations = {}
    for name in fw.arguments:
        ann = fw.annotations.get(name)
        if ann is None:
            continue
        entry: dict = {"text": ann.text}
        if ann.url is not None:
            entry["url"] = ann.url
        annotations[name] = entry
    doc["annotations"] = annotations
    return doc


def export_layout_json(view: View) -> str:
    return json.dumps(layout_document(view), indent=2, ensure_ascii=False) + "\n"


# --- DOT ---------------------------------------------------------------


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(view: View) -> str:
    """Deterministic DOT for the view; equal views give equal bytes.

    Ranks are pinned with an invisible spine through the layers and the
    band, and attack edges carry constraint=false, so the drawing always
    honors the computed layering regardless of edge directions.
    """
    fw = view.framework
    names = view.layout.display_names
    lines = [
        "digraph framework {",
        "  rankdir=BT;",
        "  node [shape=box, style=filled];",
    ]
    groups = [layer for layer in view.layout.order if layer]
    if view.layout.band:
        groups.append(view.layout.band)
    for group in groups:
        members = "; ".join(_q(names[name]) for name in group)
        lines.append(f"  {{ rank=same; {members}; }}")
    for below, above in zip(groups, groups[1:]):
        lines.append(
            f"  {_q(names[below[0]])} -> {_q(names[above[0]])} [style=invis];"
        )
    for name in fw.arguments:
        attrs = [f"fillcolor={_q(_fill(view, name))}"]
        if name in view.resolved:
            attrs.append('style="filled,dashed"')
        ann = fw.annotations.get(name)
        if ann is not None and ann.text:
            attrs.append(f"tooltip={_q(ann.text)}")
        if ann is not None and ann.url is not None:
            attrs.append(f"URL={_q(ann.url)}")
        lines.append(f"  {_q(names[name])} [{', '.join(attrs)}];")
    for att in fw.attacks:
        if att in view.suspended:
            style, color = "dashed", CRITICAL_COLOR
        else:
            style, color = EDGE_STYLE[view.edge_classes[att]]
        lines.append(
            f"  {_q(names[att.source])} -> {_q(names[att.target])}"
            f" [style={style}, color={_q(color)}, constraint=false];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fill(view: View, name: str) -> str:
    fill = NODE_FILL[view.labels[name]]
    if name in view.resolved:
        fill += OVERLAY_ALPHA
    return fill
