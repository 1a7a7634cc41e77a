"""Plat presentations of knots: parsing, validation, normalization, built-ins.

A presentation is a number of caps (top maxima on strands (1,2), (3,4), ...)
followed by events read top to bottom: crossings of the strands at pos and
pos+1, and minima.  The engine consumes minima at strands (1,2) only;
``normalize`` rewrites a minimum at pos q into crossings that carry its cup
to the left edge, in front of the strands it passes.

Two input forms are accepted, JSON::

    {"format": "hfk-plat-v1", "caps": 2,
     "events": [{"crossing": {"pos": 2, "sign": -1}}, {"min": {}}, ...]}

and a terse text form mapped one-to-one onto it::

    caps 2; x2-; x2-; x2-; min; min

where ``min3`` stands for {"min": {"pos": 3}}.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Sequence

from .algebra import Matching, matching
from .kauffman import ClosedDiagram, closed_diagram

FORMAT = "hfk-plat-v1"


class PresentationSyntaxError(ValueError):
    """Input that cannot be read as a presentation."""


class ValidationError(ValueError):
    """A well-formed presentation that does not describe a knot in plat position."""


@dataclass(frozen=True)
class Crossing:
    pos: int
    sign: int

    def to_json(self) -> dict:
        return {"crossing": {"pos": self.pos, "sign": self.sign}}

    def text(self) -> str:
        return f"x{self.pos}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Min:
    pos: int = 1

    def to_json(self) -> dict:
        return {"min": {}} if self.pos == 1 else {"min": {"pos": self.pos}}

    def text(self) -> str:
        return "min" if self.pos == 1 else f"min{self.pos}"


@dataclass(frozen=True)
class SlicePresentation:
    caps: int
    events: tuple
    name: str | None = field(default=None, compare=False)
    expected_states: int | None = field(default=None, compare=False)

    @property
    def crossings(self) -> list[Crossing]:
        return [e for e in self.events if isinstance(e, Crossing)]

    @property
    def is_standard(self) -> bool:
        return all(e.pos == 1 for e in self.events if isinstance(e, Min))

    def strand_counts(self) -> list[int]:
        counts = [2 * self.caps]
        for e in self.events:
            counts.append(counts[-1] - 2 if isinstance(e, Min) else counts[-1])
        return counts

    def kauffman_events(self) -> tuple:
        """Events in the tuple form used by :mod:`kauffman` (standard presentations only)."""
        if not self.is_standard:
            raise ValidationError("normalize the presentation first")
        return tuple(("x", e.pos, e.sign) if isinstance(e, Crossing) else ("min",) for e in self.events)

    def to_json(self) -> dict:
        return {"format": FORMAT, "caps": self.caps, "events": [e.to_json() for e in self.events]}

    def text(self) -> str:
        return "; ".join([f"caps {self.caps}"] + [e.text() for e in self.events])


# -- validation ---------------------------------------------------------------------


@dataclass(frozen=True)
class MatchingTrace:
    """The matching induced by the strands above each level, top to bottom."""

    levels: tuple

    def __getitem__(self, k: int) -> Matching:
        return self.levels[k]

    def __len__(self) -> int:
        return len(self.levels)


def _trace(caps: int, events: Sequence) -> MatchingTrace:
    """Validate the event list and return its matching trace.

    Positions carry union-find labels of the arcs above them; a minimum
    joins two labels and must not join an arc to itself unless it is the
    very last event (the global minimum).
    """
    if not isinstance(caps, int) or isinstance(caps, bool) or caps < 1:
        raise ValidationError(f"caps: expected a positive integer, got {caps!r}")
    parent = list(range(2 * caps))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k in range(caps):
        parent[2 * k + 1] = 2 * k
    labels = list(range(2 * caps))

    def current_matching():
        m = len(labels)
        if m == 0:
            return None
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(find(lab), []).append(i + 1)
        return matching(m // 2, [tuple(g) for g in groups.values()])

    levels = [current_matching()]
    for idx, e in enumerate(events):
        m = len(labels)
        where = f"events[{idx}]"
        if m == 0:
            raise ValidationError(f"{where}: the diagram already closed up")
        if isinstance(e, Crossing):
            if e.sign not in (1, -1):
                raise ValidationError(f"{where}.crossing.sign: expected 1 or -1, got {e.sign!r}")
            if not 1 <= e.pos <= m - 1:
                raise ValidationError(f"{where}.crossing.pos: {e.pos} outside 1..{m - 1}")
            labels[e.pos - 1], labels[e.pos] = labels[e.pos], labels[e.pos - 1]
        elif isinstance(e, Min):
            if not 1 <= e.pos <= m - 1:
                raise ValidationError(f"{where}.min.pos: {e.pos} outside 1..{m - 1}")
            a, b = find(labels[e.pos - 1]), find(labels[e.pos])
            last = idx == len(events) - 1
            if a == b and not last:
                raise ValidationError(
                    f"{where}: minimum caps strands {e.pos},{e.pos + 1}, which are already joined above "
                    "(closes a component early)")
            parent[max(a, b)] = min(a, b)
            del labels[e.pos - 1:e.pos + 1]
        else:
            raise ValidationError(f"{where}: unknown event {e!r}")
        levels.append(current_matching())
    if labels:
        raise ValidationError(f"the diagram does not close up: {len(labels)} strands left after the last event")
    return MatchingTrace(tuple(levels))


def validate(p: SlicePresentation) -> SlicePresentation:
    _trace(p.caps, p.events)
    return p


def matching_trace(p: SlicePresentation) -> MatchingTrace:
    return _trace(p.caps, p.events)


# -- parsing ------------------------------------------------------------------------


def _as_int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise PresentationSyntaxError(f"{where}: expected an integer, got {value!r}")
    return value


def from_json(data: Any) -> SlicePresentation:
    if not isinstance(data, dict):
        raise PresentationSyntaxError("top level: expected a JSON object")
    fmt = data.get("format", FORMAT)
    if fmt != FORMAT:
        raise PresentationSyntaxError(f"format: expected {FORMAT!r}, got {fmt!r}")
    unknown = set(data) - {"format", "caps", "events"}
    if unknown:
        raise PresentationSyntaxError(f"top level: unknown keys {sorted(unknown)}")
    if "caps" not in data:
        raise PresentationSyntaxError("caps: missing")
    caps = _as_int(data["caps"], "caps")
    raw = data.get("events")
    if not isinstance(raw, list):
        raise PresentationSyntaxError("events: expected a list")
    events = []
    for i, ev in enumerate(raw):
        where = f"events[{i}]"
        if not isinstance(ev, dict) or len(ev) != 1:
            raise PresentationSyntaxError(f"{where}: expected an object with one key, crossing or min")
        (kind, body), = ev.items()
        if not isinstance(body, dict):
            raise PresentationSyntaxError(f"{where}.{kind}: expected an object")
        if kind == "crossing":
            if set(body) != {"pos", "sign"}:
                raise PresentationSyntaxError(f"{where}.crossing: expected keys pos and sign")
            events.append(Crossing(_as_int(body["pos"], f"{where}.crossing.pos"),
                                   _as_int(body["sign"], f"{where}.crossing.sign")))
        elif kind == "min":
            if set(body) - {"pos"}:
                raise PresentationSyntaxError(f"{where}.min: only the key pos is allowed")
            events.append(Min(_as_int(body.get("pos", 1), f"{where}.min.pos")))
        else:
            raise PresentationSyntaxError(f"{where}: unknown event kind {kind!r}")
    return validate(SlicePresentation(caps, tuple(events)))


_CROSS = re.compile(r"x(\d+)([+-])$")
_MIN = re.compile(r"min(\d*)$")
_CAPS = re.compile(r"caps\s+(\d+)$")


def from_text(text: str) -> SlicePresentation:
    items = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for tok in line.split(";"):
            tok = tok.strip()
            if tok:
                items.append((lineno, tok))
    if not items:
        raise PresentationSyntaxError("empty presentation")
    lineno, first = items[0]
    m = _CAPS.match(first)
    if not m:
        raise PresentationSyntaxError(f"line {lineno}: expected 'caps N', got {first!r}")
    caps = int(m.group(1))
    events = []
    for lineno, tok in items[1:]:
        if (m := _CROSS.match(tok)):
            events.append(Crossing(int(m.group(1)), 1 if m.group(2) == "+" else -1))
        elif (m := _MIN.match(tok)):
            events.append(Min(int(m.group(1)) if m.group(1) else 1))
        else:
            raise PresentationSyntaxError(f"line {lineno}: cannot read event {tok!r}")
    return validate(SlicePresentation(caps, tuple(events)))


def parse(source: str | dict) -> SlicePresentation:
    """Read a presentation from JSON text, a decoded JSON object, or the text form."""
    if isinstance(source, dict):
        return from_json(source)
    stripped = source.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise PresentationSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return from_json(data)
    return from_text(source)


def serialize(p: SlicePresentation) -> str:
    return json.dumps(p.to_json(), sort_keys=True)


# -- normalization ------------------------------------------------------------------

# Sign of the crossings used to slide a cup leftward in front of a strand.
SLIDE_SIGN = 1


def normalize(p: SlicePresentation) -> SlicePresentation:
    """Replace every minimum at pos q > 1 by 2(q-1) crossings and a minimum at pos 1.

    The cup's legs are carried left one strand at a time (left leg, then
    right leg), passing in front of each strand.  This is a planar isotopy
    in space, so the knot type and component structure are unchanged.
    """
    events = []
    for e in p.events:
        if isinstance(e, Min) and e.pos > 1:
            for j in range(e.pos - 1, 0, -1):
                events.append(Crossing(j, SLIDE_SIGN))
                events.append(Crossing(j + 1, SLIDE_SIGN))
            events.append(Min(1))
        else:
            events.append(e)
    return validate(SlicePresentation(p.caps, tuple(events), p.name, p.expected_states))


# -- conversions --------------------------------------------------------------------


def to_closed_diagram(p: SlicePresentation) -> ClosedDiagram:
    return closed_diagram(p.caps, normalize(p).kauffman_events())


def components(p: SlicePresentation) -> int:
    """Number of components of the closed-up diagram (validated presentations have 1)."""
    try:
        _trace(p.caps, p.events)
    except ValidationError:
        return _count_components(p)
    return 1


def _count_components(p: SlicePresentation) -> int:
    parent = list(range(2 * p.caps))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for k in range(p.caps):
        parent[2 * k + 1] = 2 * k
    labels = list(range(2 * p.caps))
    closed = 0
    for e in p.events:
        if isinstance(e, Crossing):
            labels[e.pos - 1], labels[e.pos] = labels[e.pos], labels[e.pos - 1]
        else:
            a, b = find(labels[e.pos - 1]), find(labels[e.pos])
            if a == b:
                closed += 1
            else:
                parent[max(a, b)] = min(a, b)
            del labels[e.pos - 1:e.pos + 1]
    return closed


# -- built-ins ----------------------------------------------------------------------

_BUILTINS = {
    "unknot": ("caps 1; min", 1),
    "unknot_r1_pos": ("caps 1; x1+; min", 1),
    "unknot_r1_neg": ("caps 1; x1-; min", 1),
    "trefoil_left": ("caps 2; x2-; x2-; x2-; min; min", 3),
    "trefoil_right": ("caps 2; x2+; x2+; x2+; min; min", 3),
    "figure8": ("caps 2; x2+; x2+; x1-; x2+; min; min", 5),
}


def builtin_names() -> list[str]:
    return list(_BUILTINS)


def builtin(name: str) -> SlicePresentation:
    try:
        text, count = _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown built-in {name!r}; choose from {', '.join(_BUILTINS)}") from None
    p = from_text(text)
    return SlicePresentation(p.caps, p.events, name, count)
