"""Kauffman states of closed, upper and partial diagrams.

Diagrams are described by slice events rather than planar geometry.  Level 0
is the slice just below the caps; event k sits between level k and level
k+1.  Each level with 2n strand endpoints has intervals 0..2n, of which
1..2n-1 are bounded.  Regions are unions of (level, interval) cells:

* a crossing at pos p joins every interval i != p straight through; its
  four corners are N = (k, p), S = (k+1, p), W = (k, p-1), E = (k, p+1);
* a minimum at strands 1, 2 closes cell (k, 1) from below, joins (k, 0),
  (k, 2) and (k+1, 0), and joins (k, j) to (k+1, j-2) for j >= 3;
* the caps join the even intervals of level 0 above the diagram (the
  unbounded region) and close each odd interval from above.

This is the independent combinatorial oracle the engine's generator counts
are checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Event = tuple  # ("x", pos, sign) or ("min",)

CORNERS = ("N", "S", "W", "E")


class DiagramError(ValueError):
    """Malformed slice data or a diagram that does not close up."""


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def strand_counts(caps: int, events: Sequence[Event]) -> list[int]:
    """Number of strand endpoints on each level, top to bottom."""
    counts = [2 * caps]
    for ev in events:
        m = counts[-1]
        if ev[0] == "x":
            if not 1 <= ev[1] <= m - 1:
                raise DiagramError(f"crossing at pos {ev[1]} needs 1 <= pos <= {m - 1}")
            counts.append(m)
        elif ev[0] == "min":
            if m < 2:
                raise DiagramError("minimum on a level without strands")
            counts.append(m - 2)
        else:
            raise DiagramError(f"unknown event {ev!r}")
    return counts


@dataclass
class SlicedRegions:
    """Regions of the part of a sliced diagram between two levels.

    ``top`` and ``bottom`` are level indices (top < bottom).  With
    ``with_caps`` the caps above level 0 are included (upper diagrams and
    closed diagrams).
    """

    caps: int
    events: tuple
    top: int
    bottom: int
    with_caps: bool = False
    counts: list = field(init=False)
    region_of: dict = field(init=False)
    regions: list = field(init=False)
    unbounded: set = field(init=False)
    crossings: list = field(init=False)

    def __post_init__(self):
        self.counts = strand_counts(self.caps, self.events)
        uf = _UnionFind()
        cells = [(lv, i) for lv in range(self.top, self.bottom + 1) for i in range(self.counts[lv] + 1)]
        for c in cells:
            uf.find(c)
        outer = set()
        crossings = []
        for k in range(self.top, self.bottom):
            ev = self.events[k]
            m = self.counts[k]
            if ev[0] == "x":
                p = ev[1]
                for i in range(m + 1):
                    if i != p:
                        uf.union((k, i), (k + 1, i))
                crossings.append((k, p, ev[2]))
            else:
                uf.union((k, 0), (k, 2))
                uf.union((k, 0), (k + 1, 0))
                for j in range(3, m + 1):
                    uf.union((k, j), (k + 1, j - 2))
        if self.with_caps and self.top == 0:
            for i in range(0, self.counts[0] + 1, 2):
                uf.union((0, 0), (0, i))
            outer.add((0, 0))
        for lv in range(self.top, self.bottom + 1):
            outer.add((lv, 0))
            outer.add((lv, self.counts[lv]))
        roots = sorted({uf.find(c) for c in cells})
        index = {r: i for i, r in enumerate(roots)}
        self.region_of = {c: index[uf.find(c)] for c in cells}
        self.regions = [[] for _ in roots]
        for c in cells:
            self.regions[self.region_of[c]].append(c)
        self.unbounded = {self.region_of[c] for c in outer}
        self.crossings = []
        for k, p, sign in crossings:
            corners = {
                "N": self.region_of[(k, p)],
                "S": self.region_of[(k + 1, p)],
                "W": self.region_of[(k, p - 1)],
                "E": self.region_of[(k, p + 1)],
            }
            self.crossings.append((k, p, sign, corners))

    def bounded_intervals(self, region: int, level: int) -> list[int]:
        """Bounded intervals of ``level`` lying on ``region``."""
        m = self.counts[level]
        return [i for (lv, i) in self.regions[region] if lv == level and 1 <= i <= m - 1]


# -- closed diagrams ----------------------------------------------------------------


@dataclass(frozen=True)
class ClosedDiagram:
    """A closed 4-valent diagram reduced to its state-counting data.

    ``corners[c]`` maps the corner names N, S, W, E of crossing c to region
    indices; ``marked`` holds the two regions adjacent to the marked edge.
    """

    n_regions: int
    corners: tuple
    signs: tuple
    marked: tuple

    def __post_init__(self):
        if self.n_regions != len(self.corners) + 2:
            raise DiagramError(
                f"region count {self.n_regions} does not match {len(self.corners)} crossings + 2")

    @property
    def n_crossings(self) -> int:
        return len(self.corners)

    def free_regions(self) -> list[int]:
        return [r for r in range(self.n_regions) if r not in self.marked]


def closed_diagram(caps: int, events: Sequence[Event]) -> ClosedDiagram:
    """Closed diagram of a plat presentation whose last event is the global minimum.

    The marked edge is the one entering the global minimum from the left, so
    the barred regions are the outer region and the one inside the final cup.
    """
    events = tuple(events)
    counts = strand_counts(caps, events)
    if counts[-1] != 0 or not events or events[-1][0] != "min":
        raise DiagramError("a closed diagram must end with its global minimum")
    if caps < 1:
        raise DiagramError("a closed diagram needs at least one cap")
    regs = SlicedRegions(caps, events, 0, len(events), with_caps=True)
    last = len(events) - 1
    outer = regs.region_of[(0, 0)]
    for r in regs.unbounded:
        if r != outer:
            raise DiagramError("diagram is not connected")
    inner = regs.region_of[(last, 1)]
    corners = tuple(tuple(c[3][k] for k in CORNERS) for c in regs.crossings)
    signs = tuple(c[2] for c in regs.crossings)
    return ClosedDiagram(len(regs.regions), corners, signs, (outer, inner))


@dataclass(frozen=True)
class ClosedKauffmanState:
    assignment: tuple  # region index for each crossing

    def to_json(self) -> dict:
        return {"regions": list(self.assignment)}


def enumerate_closed_states(d: ClosedDiagram) -> list[ClosedKauffmanState]:
    """All bijections from crossings to unmarked regions with each crossing on its region."""
    free = d.free_regions()
    if len(free) != d.n_crossings:
        raise DiagramError("diagram is not connected")
    options = [sorted({r for r in cs if r in free}) for cs in d.corners]
    out: list[ClosedKauffmanState] = []
    used: set = set()
    chosen: list = []

    def rec(c: int):
        if c == d.n_crossings:
            out.append(ClosedKauffmanState(tuple(chosen)))
            return
        for r in options[c]:
            if r not in used:
                used.add(r)
                chosen.append(r)
                rec(c + 1)
                chosen.pop()
                used.discard(r)

    rec(0)
    return out


# -- upper and partial states -------------------------------------------------------


@dataclass(frozen=True)
class UpperKauffmanState:
    """(kappa, x): a corner name for each crossing above the slice, and a local state."""

    kappa: tuple
    x: tuple

    def to_json(self) -> dict:
        return {"kappa": list(self.kappa), "x": list(self.x)}


@dataclass(frozen=True)
class PartialKauffmanState:
    """(kappa, x, y): corners of the crossings in a band, lower state x, upper state y."""

    kappa: tuple
    x: tuple
    y: tuple

    def to_json(self) -> dict:
        return {"kappa": list(self.kappa), "x": list(self.x), "y": list(self.y)}


def _corner_choices(regs: SlicedRegions, allow_unbounded: bool) -> list[list[tuple[str, int]]]:
    out = []
    for (_, _, _, corners) in regs.crossings:
        opts = []
        seen = set()
        for name in CORNERS:
            r = corners[name]
            if r in seen:
                continue
            seen.add(r)
            if allow_unbounded or r not in regs.unbounded:
                opts.append((name, r))
        out.append(opts)
    return out


def _injective_kappas(choices):
    """Corner assignments whose regions are pairwise distinct, in lexicographic order."""
    used: set = set()
    picked: list = []

    def rec(c):
        if c == len(choices):
            yield tuple(picked)
            return
        for name, r in choices[c]:
            if r not in used:
                used.add(r)
                picked.append((name, r))
                yield from rec(c + 1)
                picked.pop()
                used.discard(r)

    yield from rec(0)


def upper_state_ok(regs: SlicedRegions, kappa_regions: Iterable[int], x: Iterable[int]) -> bool:
    """The four defining conditions of an upper state (corner condition assumed)."""
    level = regs.bottom
    xs = set(x)
    occupied = list(kappa_regions)
    if len(set(occupied)) != len(occupied):
        return False
    if any(r in regs.unbounded for r in occupied):
        return False
    n = regs.counts[level] // 2
    if len(xs) != n or any(not 1 <= i <= 2 * n - 1 for i in xs):
        return False
    occ = set(occupied)
    for r in range(len(regs.regions)):
        hits = sum(1 for i in regs.bounded_intervals(r, level) if i in xs)
        if r in regs.unbounded:
            if hits:
                return False
        elif r not in occ and hits != 1:
            return False
    return True


def enumerate_upper_states(caps: int, events: Sequence[Event]) -> list[UpperKauffmanState]:
    """Upper states of the diagram formed by the caps and ``events`` (no global minimum)."""
    events = tuple(events)
    counts = strand_counts(caps, events)
    level = len(events)
    n = counts[level] // 2
    if n < 1:
        raise DiagramError("the slice below an upper diagram must meet the knot")
    regs = SlicedRegions(caps, events, 0, level, with_caps=True)
    out = []
    locals_ = list(itertools.combinations(range(1, 2 * n), n))
    for kap in _injective_kappas(_corner_choices(regs, allow_unbounded=False)):
        regions = [r for _, r in kap]
        for x in locals_:
            if upper_state_ok(regs, regions, x):
                out.append(UpperKauffmanState(tuple(name for name, _ in kap), x))
    return out


def partial_state_ok(regs: SlicedRegions, kappa_regions: Iterable[int], x: Iterable[int],
                     y: Iterable[int]) -> bool:
    """The defining conditions of a partial state (corner condition assumed).

    ``y`` lives on the upper slice, ``x`` on the lower one.  Only bounded
    regions are constrained.
    """
    xs, ys = set(x), set(y)
    occupied = list(kappa_regions)
    if len(set(occupied)) != len(occupied) or any(r in regs.unbounded for r in occupied):
        return False
    occ = set(occupied)
    for r in range(len(regs.regions)):
        if r in regs.unbounded:
            continue
        up = regs.bounded_intervals(r, regs.top)
        down = regs.bounded_intervals(r, regs.bottom)
        in_y = sum(1 for i in up if i in ys)
        in_x = sum(1 for i in down if i in xs)
        if r in occ:
            if in_y != len(up) or in_x != 0:
                return False
        else:
            a = in_y == len(up) - 1 and in_x == 0
            b = in_y == len(up) and in_x == 1
            if not (a or b):
                return False
    return True


def enumerate_partial_states(caps: int, events: Sequence[Event], top: int,
                             bottom: int) -> list[PartialKauffmanState]:
    """Partial states of the band of ``events`` between levels ``top`` and ``bottom``.

    ``caps`` only fixes the strand count of level 0.
    """
    events = tuple(events)
    regs = SlicedRegions(caps, events, top, bottom)
    n_up = regs.counts[top] // 2
    n_down = regs.counts[bottom] // 2
    if n_up < 1 or n_down < 1:
        raise DiagramError("partial diagrams must meet the knot on both slices")
    ups = list(itertools.combinations(range(1, 2 * n_up), n_up))
    downs = list(itertools.combinations(range(1, 2 * n_down), n_down))
    out = []
    for kap in _injective_kappas(_corner_choices(regs, allow_unbounded=False)):
        regions = [r for _, r in kap]
        names = tuple(name for name, _ in kap)
        for y in ups:
            for x in downs:
                if partial_state_ok(regs, regions, x, y):
                    out.append(PartialKauffmanState(names, x, y))
    return out


def glue_states(p: PartialKauffmanState, u: UpperKauffmanState) -> UpperKauffmanState | None:
    """Glue a partial state below an upper state; None if the boundary states differ."""
    if tuple(p.y) != tuple(u.x):
        return None
    return UpperKauffmanState(tuple(u.kappa) + tuple(p.kappa), tuple(p.x))


def upper_states_by_gluing(caps: int, events: Sequence[Event]) -> list[UpperKauffmanState]:
    """Upper states built one event at a time by gluing partial states."""
    events = tuple(events)
    states = enumerate_upper_states(caps, ())
    for k in range(len(events)):
        band = enumerate_partial_states(caps, events, k, k + 1)
        nxt = []
        for u in states:
            for p in band:
                g = glue_states(p, u)
                if g is not None:
                    nxt.append(g)
        states = nxt
    return states
