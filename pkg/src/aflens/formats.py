"""Parsers and serializers for the three supported framework formats.

Supported formats:

* APX: statements ``arg(<name>).`` and ``att(<a>,<b>).``, whitespace
  between tokens is free, ``%`` starts a comment running to end of line.
* TGF: node lines ``<id>`` or ``<id> <label>``, a lone ``#`` line, then
  edge lines ``<src> <dst>``. The label becomes the annotation text.
* JSON: ``{"arguments": [{"id": ..., "annotation": {...}?}, ...],
  "attacks": [[src, dst], ...]}``.

Lossiness on round-trip is by design: APX keeps no annotations at all;
TGF keeps annotation text but not URLs, flattens it to a single line,
and drops empty-text annotations. JSON is lossless.

Every malformed input raises :class:`ParseError` carrying a line number
where one is meaningful; inputs exceeding the desk-scale guardrail
(10k arguments / 100k attacks) raise :class:`FrameworkTooLarge`.
"""

from __future__ import annotations

import json
from typing import Optional

from .model import (
    MAX_ARGUMENTS,
    MAX_ATTACKS,
    Annotation,
    Attack,
    Framework,
    is_valid_argument_id,
)

FORMATS = ("apx", "tgf", "json")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FrameworkTooLarge(ParseError):
    pass


def _check_limits(n_args: int, n_attacks: int, line: Optional[int] = None) -> None:
    if n_args > MAX_ARGUMENTS:
        raise FrameworkTooLarge(f"too many arguments (limit {MAX_ARGUMENTS})", line)
    if n_attacks > MAX_ATTACKS:
        raise FrameworkTooLarge(f"too many attacks (limit {MAX_ATTACKS})", line)


class _Collector:
    """Accumulates declarations, enforcing uniqueness and referential integrity."""

    def __init__(self):
        self.arguments: list[str] = []
        self.seen: set[str] = set()
        self.attacks: list[Attack] = []
        self.attack_lines: list[Optional[int]] = []
        self.attack_set: set[Attack] = set()
        self.annotations: dict[str, Annotation] = {}

    def add_argument(self, name: str, line: Optional[int], annotation: Optional[Annotation] = None):
        if name in self.seen:
            raise ParseError(f"duplicate argument: {name}", line)
        self.seen.add(name)
        self.arguments.append(name)
        if annotation is not None:
            self.annotations[name] = annotation
        _check_limits(len(self.arguments), len(self.attacks), line)

    def add_attack(self, source: str, target: str, line: Optional[int]):
        att = Attack(source, target)
        if att in self.attack_set:
            raise ParseError(f"duplicate attack: ({source},{target})", line)
        self.attack_set.add(att)
        self.attacks.append(att)
        self.attack_lines.append(line)
        _check_limits(len(self.arguments), len(self.attacks), line)

    def finish(self) -> Framework:
        # Endpoints are checked at the end so declaration order of arg()
        # and att() statements is unconstrained.
        for att, line in zip(self.attacks, self.attack_lines):
            for endpoint in (att.source, att.target):
                if endpoint not in self.seen:
                    raise ParseError(f"undeclared argument: {endpoint}", line)
        return Framework(tuple(self.arguments), tuple(self.attacks), self.annotations)


# --- APX ---------------------------------------------------------------

class _ApxScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1

    def skip_blank(self):
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c == "\n":
                self.line += 1
                self.pos += 1
            elif c.isspace():
                self.pos += 1
            elif c == "%":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self.pos += 1
            else:
                return

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def expect(self, ch: str):
        self.skip_blank()
        if self.at_end() or self.text[self.pos] != ch:
            found = "end of input" if self.at_end() else repr(self.text[self.pos])
            raise ParseError(f"expected {ch!r}, found {found}", self.line)
        self.pos += 1

    def name(self) -> str:
        self.skip_blank()
        start = self.pos
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c.isspace() or c in "(),.%":
                break
            self.pos += 1
        token = text[start:self.pos]
        if not token:
            raise ParseError("expected an argument name", self.line)
        if not is_valid_argument_id(token):
            raise ParseError(f"invalid argument name: {token!r}", self.line)
        return token


def parse_apx(text: str) -> Framework:
    scanner = _ApxScanner(text)
    collector = _Collector()
    while True:
        scanner.skip_blank()
        if scanner.at_end():
            break
        stmt_line = scanner.line
        keyword = scanner.name()
        if keyword == "arg":
            scanner.expect("(")
            name = scanner.name()
            scanner.expect(")")
            scanner.expect(".")
            collector.add_argument(name, stmt_line)
        elif keyword == "att":
            scanner.expect("(")
            source = scanner.name()
            scanner.expect(",")
            target = scanner.name()
            scanner.expect(")")
            scanner.expect(".")
            collector.add_attack(source, target, stmt_line)
        else:
            raise ParseError(f"expected arg(...) or att(...), found {keyword!r}", stmt_line)
    return collector.finish()


# --- TGF ---------------------------------------------------------------

def parse_tgf(text: str) -> Framework:
    lines = text.split("\n")
    collector = _Collector()
    separator_seen = False
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped == "#":
            if separator_seen:
                raise ParseError("second '#' separator", lineno)
            separator_seen = True
            continue
        if not separator_seen:
            parts = stripped.split(None, 1)
            name = parts[0]
            if not is_valid_argument_id(name):
                raise ParseError(f"invalid argument name: {name!r}", lineno)
            label = parts[1] if len(parts) > 1 else ""
            annotation = Annotation(text=label) if label else None
            collector.add_argument(name, lineno, annotation)
        else:
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError("edge line must be '<src> <dst>'", lineno)
            collector.add_attack(parts[0], parts[1], lineno)
    if not separator_seen:
        raise ParseError("missing '#' separator", max(len(lines), 1))
    return collector.finish()


# --- JSON --------------------------------------------------------------

def parse_json(text: str) -> Framework:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - {"arguments", "attacks"}
    if unknown:
        raise ParseError(f"unknown key: {sorted(unknown)[0]}")
    for key in ("arguments", "attacks"):
        if key not in doc:
            raise ParseError(f"missing key: {key}")
        if not isinstance(doc[key], list):
            raise ParseError(f"{key} must be an array")

    collector = _Collector()
    for i, entry in enumerate(doc["arguments"]):
        where = f"arguments[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where} must be an object")
        if set(entry) - {"id", "annotation"}:
            raise ParseError(f"{where} has unknown keys")
        name = entry.get("id")
        if not isinstance(name, str):
            raise ParseError(f"{where}.id must be a string")
        if not is_valid_argument_id(name):
            raise ParseError(f"{where}.id is not a valid argument name: {name!r}")
        annotation = None
        if "annotation" in entry:
            ann = entry["annotation"]
            if not isinstance(ann, dict) or set(ann) - {"text", "url"}:
                raise ParseError(f"{where}.annotation must be {{text, url?}}")
            ann_text = ann.get("text")
            if not isinstance(ann_text, str):
                raise ParseError(f"{where}.annotation.text must be a string")
            url = ann.get("url")
            if url is not None and not isinstance(url, str):
                raise ParseError(f"{where}.annotation.url must be a string")
            if not ann_text and url is None:
                raise ParseError(f"{where}.annotation needs text or a url")
            annotation = Annotation(text=ann_text, url=url)
        collector.add_argument(name, None, annotation)

    for i, entry in enumerate(doc["attacks"]):
        where = f"attacks[{i}]"
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            raise ParseError(f"{where} must be a [source, target] pair of strings")
        collector.add_attack(entry[0], entry[1], None)
    return collector.finish()


# --- dispatch and serialization ---------------------------------------

_PARSERS = {"apx": parse_apx, "tgf": parse_tgf, "json": parse_json}


def parse(text: str, fmt: str) -> Framework:
    if fmt not in _PARSERS:
        raise ValueError(f"unknown format: {fmt}")
    return _PARSERS[fmt](text)


def serialize(framework: Framework, fmt: str) -> str:
    if fmt == "apx":
        lines = [f"arg({name}).\n" for name in framework.arguments]
        lines += [f"att({a.source},{a.target}).\n" for a in framework.attacks]
        return "".join(lines)
    if fmt == "tgf":
        lines = []
        for name in framework.arguments:
            ann = framework.annotations.get(name)
            text = " ".join(ann.text.split()) if ann else ""
            lines.append(f"{name} {text}\n" if text else f"{name}\n")
        lines.append("#\n")
        lines += [f"{a.source} {a.target}\n" for a in framework.attacks]
        return "".join(lines)
    if fmt == "json":
        return json.dumps(framework_document(framework), indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown format: {fmt}")


def framework_document(framework: Framework) -> dict:
    """The framework as a JSON-ready dict (the JSON format's schema)."""
    args = []
    for name in framework.arguments:
        entry: dict = {"id": name}
        ann = framework.annotations.get(name)
        if ann is not None:
            ann_doc: dict = {"text": ann.text}
            if ann.url is not None:
                ann_doc["url"] = ann.url
            entry["annotation"] = ann_doc
        args.append(entry)
    return {
        "arguments": args,
        "attacks": [[a.source, a.target] for a in framework.attacks],
    }


def format_for_path(path: str) -> Optional[str]:
    """Guess the format from a file extension, or None."""
    lowered = path.lower()
    for fmt in FORMATS:
        if lowered.endswith("." + fmt):
            return fmt
    return None
