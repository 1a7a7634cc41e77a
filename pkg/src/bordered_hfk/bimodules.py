"""The elementary pieces: maxima, parallel strands, crossings, local minima.

Crossing bimodules are evaluated from weights.  Every output term b of the
positive crossing at position p satisfies

    w(b) = tau(w(a_1) + ... + w(a_j)) + phi(Y) - phi(X),

where tau swaps coordinates p and p+1 and phi(N) = 0, phi(E) = e_p / 2,
phi(W) = e_{p+1} / 2, phi(S) = (e_p + e_{p+1}) / 2.  So an output is fixed
by its endpoint generators and the inputs, and the tables only have to
decide which coefficients are 1.  Those decisions depend on the local
shape (e, k1, k2) of each input: e is the elementary factor among
1, L1, R1, L2, R2, L1L2, R2R1 and k1, k2 are the integer parts of the two
local weights.  Coordinates away from the crossing pass straight through
the weight formula, which is how far-field inputs are handled.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .algebra import (
    AlgebraElement,
    AlgebraError,
    Matching,
    algebra,
    local_state,
    matching as make_matching,
    plat_matching,
)
from .dstructures import DABimodule, DGenerator, DStructure


class InvalidContext(ValueError):
    """A minimum was requested where the capped endpoints are matched together."""


class CrossingGeneratorKind(str, enum.Enum):
    N = "N"
    S = "S"
    W = "W"
    E = "E"


# -- maxima and parallel strands ------------------------------------------------


def maxima_d_structure(n: int) -> DStructure:
    """The one-generator D-structure of n caps, occupying the odd intervals."""
    if n < 1:
        raise AlgebraError(f"n must be positive, got {n}")
    x = local_state(n, range(1, 2 * n, 2))
    return DStructure(n, plat_matching(n), [DGenerator("max", x)], {})


class TrivialBimodule(DABimodule):
    """Parallel strands: delta_2(I_x, a) = a ⊗ I_y and nothing else."""

    def __init__(self, n: int, matching: Matching | None = None):
        m = matching or plat_matching(n)
        super().__init__(n, n, m, m, arity_bound=2)
        self.name = f"trivial({n})"
        for i in range(len(self.alg_in.states)):
            self._register(i, i, i, "i")
        self._finish()

    def _action(self, desc, inputs):
        if len(inputs) != 1:
            return ()
        a = inputs[0]
        return ((a, a[1]),)


def trivial_bimodule(n: int, matching: Matching | None = None) -> TrivialBimodule:
    return TrivialBimodule(n, matching)


# -- crossings ----------------------------------------------------------------------

_O_PATTERN = {"1": "1", "L1": "R1", "R1": "L1", "L2": "R2", "R2": "L2", "L1L2": "R2R1", "R2R1": "L1L2"}


def _delta2_coefficient(src: str, dst: str, e: str, k1: int, k2: int) -> bool:
    """Whether delta_2(src, a) of the positive crossing has a term at dst.

    Read off the delta_2 display together with its extension rules; powers
    of U1 U2 pass through every generator.
    """
    if src == "N" or src == "S":
        return src == dst or (src == "N" and e in ("R2", "L1"))
    if src == "E":
        if dst == "E":
            return e == "1" and k1 <= k2
        if dst == "N":
            return e in ("L2", "R1") and k1 <= k2
        if dst == "W":
            return e == "1" and k1 < k2
        return False
    if src == "W":
        if dst == "W":
            return e == "1" and k2 <= k1
        if dst == "N":
            return e in ("R1", "L2") and k2 <= k1
        if dst == "E":
            return e == "1" and k2 < k1
        return False
    return False


# delta_3 of the positive crossing on S: (target, e1, e2, condition on (k1a, k2a, k1b, k2b)).
_Cond = Callable[[int, int, int, int], bool]
_DELTA3_TABLE: list[tuple[str, str, str, _Cond]] = [
    # R1 U1^t ⊗ E
    ("E", "R1", "R2", lambda a1, a2, b1, b2: a1 == 0 and a2 == 0 and b1 == 0),
    # L2 U1^t U2^n ⊗ E
    ("E", "1", "1", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and b2 >= 1 and a1 <= b2),
    ("E", "1", "1", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 < b1),
    ("E", "R1", "L1", lambda a1, a2, b1, b2: a2 == 0 and b1 == 0 and a1 < b2),
    ("E", "R1", "L1", lambda a1, a2, b1, b2: a1 == 0 and b2 == 0 and 1 <= a2 <= b1),
    ("E", "L2", "R2", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and a1 <= b2 + 1),
    ("E", "L2", "R2", lambda a1, a2, b1, b2: a1 == 0 and b2 == 0 and a2 + 2 <= b1),
    # L2 U2^n ⊗ W
    ("W", "L2", "L1", lambda a1, a2, b1, b2: a1 == 0 and a2 == 0 and b2 == 0),
    # R1 U1^t U2^n ⊗ W
    ("W", "1", "1", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 <= b1),
    ("W", "1", "1", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and a1 + 1 <= b2),
    ("W", "L2", "R2", lambda a1, a2, b1, b2: a1 == 0 and b2 == 0 and a2 < b1),
    ("W", "L2", "R2", lambda a1, a2, b1, b2: a2 == 0 and b1 == 0 and 1 <= a1 <= b2),
    ("W", "R1", "L1", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 <= b1 + 1),
    ("W", "R1", "L1", lambda a1, a2, b1, b2: a2 == 0 and b1 == 0 and a1 + 2 <= b2),
    # L2 U1^t U2^n ⊗ N
    ("N", "1", "L2", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and a1 <= b2),
    ("N", "R1", "L1L2", lambda a1, a2, b1, b2: a2 == 0 and b1 == 0 and a1 < b2),
    ("N", "L2", "1", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and a1 <= b2),
    ("N", "L2", "1", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 < b1),
    ("N", "1", "L2", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 < b1),
    ("N", "R1", "L1L2", lambda a1, a2, b1, b2: a1 == 0 and b2 == 0 and 1 <= a2 <= b1),
    ("N", "L2", "1", lambda a1, a2, b1, b2: a1 == 0 and a2 == 0 and b2 == 0 and b1 >= 1),
    # R1 U1^t U2^n ⊗ N
    ("N", "1", "R1", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 <= b1),
    ("N", "L2", "R2R1", lambda a1, a2, b1, b2: a1 == 0 and b2 == 0 and a2 < b1),
    ("N", "R1", "1", lambda a1, a2, b1, b2: a1 == 0 and a2 >= 1 and b2 == 0 and a2 <= b1),
    ("N", "R1", "1", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and a1 < b2),
    ("N", "1", "R1", lambda a1, a2, b1, b2: a2 == 0 and a1 >= 1 and b1 == 0 and b2 >= 1 and a1 < b2),
    ("N", "L2", "R2R1", lambda a1, a2, b1, b2: a2 == 0 and b1 == 0 and 1 <= a1 <= b2),
    ("N", "R1", "1", lambda a1, a2, b1, b2: a1 == 0 and a2 == 0 and b1 == 0 and b2 >= 1),
]


def delta3_targets(pat1: tuple, pat2: tuple) -> set[str]:
    """Types Y with a term in delta_3(S, a1, a2) of the positive crossing."""
    e1, k1a, k2a = pat1
    e2, k1b, k2b = pat2
    if (k1a and k2a) or (k1b and k2b):
        return set()
    out = set()
    for target, f1, f2, cond in _DELTA3_TABLE:
        if f1 == e1 and f2 == e2 and cond(k1a, k2a, k1b, k2b):
            out.add(target)
    return out


class CrossingBimodule(DABimodule):
    """Positive (sign=+1) or negative (sign=-1) crossing of strands pos, pos+1."""

    def __init__(self, n: int, pos: int, sign: int, matching_in: Matching | None = None,
                 matching_out: Matching | None = None):
        if not 1 <= pos <= 2 * n - 1:
            raise AlgebraError(f"crossing position {pos} out of range 1..{2 * n - 1}")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        m_in = matching_in or plat_matching(n)
        m_out = matching_out or crossing_matching(m_in, pos)
        super().__init__(n, n, m_out, m_in, arity_bound=3)
        self.pos = pos
        self.sign = sign
        self.name = f"crossing({'+' if sign > 0 else '-'}, n={n}, pos={pos})"
        alg = self.alg_in
        p = pos
        for yi, ys in enumerate(alg.state_sets):
            kinds = []
            if p in ys:
                kinds.append(("N", ys))
            else:
                kinds.append(("S", ys))
                if p - 1 in ys and p >= 2:
                    kinds.append(("W", (ys - {p - 1}) | {p}))
                if p + 1 in ys and p + 1 <= 2 * n - 1:
                    kinds.append(("E", (ys - {p + 1}) | {p}))
            for kind, xs in sorted(kinds, key=lambda kv: "NSWE".index(kv[0])):
                xi = alg.index[tuple(sorted(xs))]
                self._register((kind, yi), yi, xi, kind)
        self._finish()
        self._type_at = {(d[1], d[0]): d for d in self.descriptors}
        width = alg.width
        half = [0] * width
        self._phi = {}
        for kind, coords in (("N", ()), ("E", (p,)), ("W", (p + 1,)), ("S", (p, p + 1))):
            v = list(half)
            for c in coords:
                v[c - 1] = sign
            self._phi[kind] = tuple(v)
        self._w2: dict = {}
        self._pat: dict = {}

    def generator_kind(self, desc) -> CrossingGeneratorKind:
        return CrossingGeneratorKind(desc[0])

    def weight2(self, a) -> tuple:
        w = self._w2.get(a)
        if w is None:
            w = self.alg_in.weight2(a)
            self._w2[a] = w
        return w

    def pattern(self, a) -> tuple:
        """Local shape (e, k1, k2) of an input triple."""
        pat = self._pat.get(a)
        if pat is not None:
            return pat
        alg = self.alg_in
        w = self.weight2(a)
        p = self.pos
        d1, d2 = w[p - 1], w[p]
        h1, h2 = d1 & 1, d2 & 1
        ge_s, ge_t = alg._ge[a[0]], alg._ge[a[1]]
        if h1 and h2:
            e = "R2R1" if ge_t[p - 1] > ge_s[p - 1] else "L1L2"
        elif h1:
            e = "R1" if ge_t[p - 1] > ge_s[p - 1] else "L1"
        elif h2:
            e = "R2" if ge_t[p] > ge_s[p] else "L2"
        else:
            e = "1"
        pat = (e, d1 >> 1, d2 >> 1)
        self._pat[a] = pat
        return pat

    def _output(self, src, dst, total):
        """The output triple with weight tau(total) + phi(dst) - phi(src)."""
        p = self.pos
        t = list(total)
        t[p - 1], t[p] = t[p], t[p - 1]
        ps, pd = self._phi[src[0]], self._phi[dst[0]]
        doubled = [a + b - c for a, b, c in zip(t, pd, ps)]
        return self.alg_out.from_weight(self._out[src], self._out[dst], doubled)

    def _action(self, desc, inputs):
        k = len(inputs)
        kind, yi = desc
        zero = (0,) * self.alg_in.width
        out = []
        if k == 0:
            if self.sign > 0:
                targets = ("S",) if kind in ("E", "W") else ()
            else:
                targets = ("E", "W") if kind == "S" else ()
            for t in targets:
                d = self._type_at.get((yi, t))
                if d is not None:
                    b = self._output(desc, d, zero)
                    if b is not None:
                        out.append((b, d))
            return out
        if k == 1:
            a = inputs[0]
            e, k1, k2 = self.pattern(a)
            if self.sign < 0:
                e = _O_PATTERN[e]
            w = self.weight2(a)
            for d in self.by_in_state.get(a[1], ()):
                if self.sign > 0:
                    ok = _delta2_coefficient(kind, d[0], e, k1, k2)
                else:
                    ok = _delta2_coefficient(d[0], kind, e, k1, k2)
                if ok:
                    b = self._output(desc, d, w)
                    if b is not None:
                        out.append((b, d))
            return out
        if k == 2:
            a1, a2 = inputs
            w = tuple(x + y for x, y in zip(self.weight2(a1), self.weight2(a2)))
            if self.sign > 0:
                if kind != "S":
                    return out
                targets = delta3_targets(self.pattern(a1), self.pattern(a2))
                for d in self.by_in_state.get(a2[1], ()):
                    if d[0] in targets:
                        b = self._output(desc, d, w)
                        if b is not None:
                            out.append((b, d))
            else:
                if kind == "S":
                    return out
                e2, k1b, k2b = self.pattern(a2)
                e1, k1a, k2a = self.pattern(a1)
                targets = delta3_targets((_O_PATTERN[e2], k1b, k2b), (_O_PATTERN[e1], k1a, k2a))
                if kind in targets:
                    d = self._type_at.get((a2[1], "S"))
                    if d is not None:
                        b = self._output(desc, d, w)
                        if b is not None:
                            out.append((b, d))
            return out
        return out

    def extendable(self, desc, inputs):
        if len(inputs) >= 2:
            return False
        if len(inputs) == 1:
            return desc[0] == "S" if self.sign > 0 else desc[0] != "S"
        return True


def crossing_matching(m: Matching, pos: int) -> Matching:
    """Matching below a crossing of strands pos, pos+1 given the one above."""
    swap = {pos: pos + 1, pos + 1: pos}
    return make_matching(m.n, [(swap.get(a, a), swap.get(b, b)) for a, b in m.pairs])


def positive_crossing(n: int, pos: int, matching_in: Matching | None = None) -> CrossingBimodule:
    return CrossingBimodule(n, pos, 1, matching_in)


def negative_crossing(n: int, pos: int, matching_in: Matching | None = None) -> CrossingBimodule:
    return CrossingBimodule(n, pos, -1, matching_in)


def o_involution(a: AlgebraElement) -> AlgebraElement:
    """The anti-automorphism fixing I_x and U_i and swapping L_i with R_i.

    On basis triples it exchanges source and target and keeps the weight.
    """
    alg = a.algebra
    terms = []
    for i, k, _ in a.terms:
        g = alg.from_weight(k, i, alg.weight2((i, k, _)))
        terms.append(g)
    return AlgebraElement.from_sum(a.n, terms)


# -- local minimum --------------------------------------------------------------


@dataclass(frozen=True)
class MinimumContext:
    upper: Matching
    s: int
    t: int
    lower: Matching


def minimum_context(upper: Matching) -> MinimumContext:
    """Context for capping endpoints 1 and 2 of the upper matching."""
    if upper.n < 2:
        raise InvalidContext("a local minimum needs at least four endpoints")
    s, t = upper.partner(1), upper.partner(2)
    if s == 2:
        raise InvalidContext("endpoints 1 and 2 are matched together above the minimum")
    pairs = [(s - 2, t - 2)]
    for a, b in upper.pairs:
        if a in (1, 2) or b in (1, 2):
            continue
        pairs.append((a - 2, b - 2))
    return MinimumContext(upper, s, t, make_matching(upper.n - 1, pairs))


class MinimumBimodule(DABimodule):
    """Local minimum joining endpoints 1 and 2: from C(n+1) to C(n).

    Generators are indexed by the lower state z; the upper state is
    {2} ∪ (z + 2).  delta_{1+j} vanishes unless j is odd and the inputs
    alternate between the two weight templates (w_1 = 0 at odd positions;
    w_1 = 1 + p, w_2 = 0 at even positions).
    """

    def __init__(self, ctx: MinimumContext):
        n = ctx.upper.n - 1
        super().__init__(n, n + 1, ctx.lower, ctx.upper, arity_bound=None)
        self.ctx = ctx
        self.name = f"minimum(n={n + 1}->{n}, s={ctx.s}, t={ctx.t})"
        lo, up = self.alg_out, self.alg_in
        for zi, z in enumerate(lo.states):
            xin = (2,) + tuple(j + 2 for j in z)
            self._register(zi, up.index[xin], zi, "m")
        self._finish()
        self._desc_by_in = {self._in[d]: d for d in self.descriptors}

    def _fits(self, a, position: int) -> bool:
        w = self.alg_in.weight2(a)
        if position % 2 == 1:
            return w[0] == 0
        return w[0] >= 2 and w[0] % 2 == 0 and w[1] == 0

    def extendable(self, desc, inputs):
        k = len(inputs)
        if k == 0:
            return True
        if not self._fits(inputs[-1], k):
            return False
        if k % 2 == 1:
            return 1 in self.alg_in.state_sets[inputs[-1][1]]
        return True

    def _action(self, desc, inputs):
        k = len(inputs)
        if k % 2 == 0:
            return ()
        up, lo = self.alg_in, self.alg_out
        target = self._desc_by_in.get(inputs[-1][1])
        if target is None:
            return ()
        total = [0] * up.width
        p_sum = r_sum = 0
        for pos, a in enumerate(inputs, start=1):
            if not self._fits(a, pos):
                return ()
            w = up.weight2(a)
            if pos % 2 == 1:
                r_sum += w[1] >> 1
            else:
                p_sum += (w[0] >> 1) - 1
            for c in range(up.width):
                total[c] += w[c]
        doubled = total[2:]
        doubled[self.ctx.t - 3] += 2 * p_sum
        doubled[self.ctx.s - 3] += 2 * r_sum
        b = lo.from_weight(desc, target, doubled)
        if b is None:
            return ()
        return ((b, target),)


def minimum_bimodule(ctx: MinimumContext) -> MinimumBimodule:
    return MinimumBimodule(ctx)
