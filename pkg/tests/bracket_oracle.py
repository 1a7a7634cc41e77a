"""Kauffman bracket of a plat presentation, used as an independent knot-type check.

Convention: a crossing with sign +1 has the strand running from the upper
position pos+1 to the lower position pos passing over; its A-smoothing
joins each strand position straight through.
"""

from __future__ import annotations

import itertools
from collections import Counter

from bordered_hfk.knots import Crossing, SlicePresentation, normalize


def _loops(caps, events, choice):
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    m = 2 * caps
    level = [("L", 0, i) for i in range(m)]
    for k in range(caps):
        union(level[2 * k], level[2 * k + 1])
    ci = 0
    for li, e in enumerate(events, 1):
        nxt = []
        if isinstance(e, Crossing):
            new = [("L", li, i) for i in range(m)]
            p = e.pos - 1
            for i in range(m):
                if i not in (p, p + 1):
                    union(level[i], new[i])
            if choice[ci]:
                union(level[p], new[p])
                union(level[p + 1], new[p + 1])
            else:
                union(level[p], level[p + 1])
                union(new[p], new[p + 1])
            ci += 1
            nxt = new
        else:
            p = e.pos - 1
            union(level[p], level[p + 1])
            m -= 2
            nxt = [("L", li, i) for i in range(m)]
            rest = level[:p] + level[p + 2:]
            for a, b in zip(rest, nxt):
                union(a, b)
        level = nxt
    return len({find(a) for a in parent})


def bracket(p: SlicePresentation) -> dict:
    """The bracket as {exponent of A: coefficient}."""
    p = normalize(p)
    cr = p.crossings
    poly: Counter = Counter()
    for choice in itertools.product((True, False), repeat=len(cr)):
        # choice True = straight-through smoothing
        a = sum(1 for c, s in zip(cr, choice) if (s and c.sign > 0) or (not s and c.sign < 0))
        b = len(cr) - a
        loops = _loops(p.caps, p.events, choice)
        # (-A^2 - A^-2)^(loops-1)
        d: Counter = Counter({0: 1})
        for _ in range(loops - 1):
            nd: Counter = Counter()
            for e, c in d.items():
                nd[e + 2] -= c
                nd[e - 2] -= c
            d = nd
        for e, c in d.items():
            poly[e + a - b] += c
    return {e: c for e, c in sorted(poly.items()) if c}


def normalized_bracket(p: SlicePresentation) -> tuple:
    """Bracket up to multiplication by a unit -/+A^k: coefficients from the lowest term, sign-fixed."""
    br = bracket(p)
    lo = min(br)
    coeffs = tuple(br.get(e, 0) for e in range(lo, max(br) + 1))
    if coeffs[0] < 0:
        coeffs = tuple(-c for c in coeffs)
    return coeffs
