"""The boundary algebras C_0(n) and C(n) over the two-element field.

A basis element of C_0(n) is a triple (x, y, U_1^a_1 ... U_2n^a_2n) where x
and y are local states: n-element subsets of the 2n-1 bounded intervals
{1, ..., 2n-1} cut out by 2n strand endpoints.  Products are governed by the
weight vector

    w(x, y, U^a) = v(x, y) / 2 + a,

where v_i(x, y) = |#{j in x : j >= i} - #{k in y : k >= i}|: the product of
(x, y, U^a) and (y, r, U^b) is the unique triple (x, r, U^t) whose weight is
the sum of the two weights.  Such a t always exists, because
|p| + |q| - |p + q| is even and non-negative.

C(n) is the quotient of C_0(n) by the two-sided ideal generated by

* I_x U_i, for every x with x and {i-1, i} disjoint, and
* R_i R_{i+1} and L_{i+1} L_i (equivalently, pairs of states that are
  far apart).

Because C_0(n) multiplies basis elements to basis elements, the ideal is
spanned by basis triples that factor through one of the relations.  For
each pair of endpoint states we precompute the minimal exponent vectors of
such triples ("killers"); a triple is zero in C(n) exactly when its
exponent vector dominates a killer.  Elements are stored in this canonical
form, so equality is set equality.

Internally states are referred to by their index in
:func:`enumerate_local_states` order and a basis triple is the plain tuple
``(source_index, target_index, exponents)``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from . import kernels


class AlgebraError(ValueError):
    """Invalid input to an algebra operation."""


class LocalState(NamedTuple):
    n: int
    intervals: tuple[int, ...]

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.intervals)) + "}"


def local_state(n: int, intervals: Iterable[int]) -> LocalState:
    """Validated constructor for :class:`LocalState`."""
    ivs = tuple(sorted(intervals))
    if n < 1:
        raise AlgebraError(f"n must be positive, got {n}")
    if len(ivs) != n or len(set(ivs)) != n:
        raise AlgebraError(f"a local state for n={n} needs {n} distinct intervals, got {ivs}")
    if ivs and (ivs[0] < 1 or ivs[-1] > 2 * n - 1):
        raise AlgebraError(f"intervals must lie in 1..{2 * n - 1}, got {ivs}")
    return LocalState(n, ivs)


class WeightVector(NamedTuple):
    """Weight vector stored as doubled integers (exact half-integers)."""

    doubled: tuple[int, ...]

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)


class AlgebraGenerator(NamedTuple):
    source: LocalState
    target: LocalState
    exponents: tuple[int, ...]


class Matching(NamedTuple):
    n: int
    pairs: tuple[tuple[int, int], ...]

    def partner(self, i: int) -> int:
        for a, b in self.pairs:
            if a == i:
                return b
            if b == i:
                return a
        raise AlgebraError(f"{i} is not matched")


def matching(n: int, pairs: Iterable[Iterable[int]]) -> Matching:
    """Validated constructor for :class:`Matching` (pairs are normalised)."""
    norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
    flat = [i for p in norm for i in p]
    if any(len(p) != 2 for p in norm) or sorted(flat) != list(range(1, 2 * n + 1)):
        raise AlgebraError(f"not a perfect matching of 1..{2 * n}: {norm}")
    return Matching(n, norm)


def plat_matching(n: int) -> Matching:
    """The matching {1,2}, {3,4}, ..., {2n-1,2n} of a row of caps."""
    return Matching(n, tuple((2 * k - 1, 2 * k) for k in range(1, n + 1)))


def enumerate_local_states(n: int) -> list[LocalState]:
    """All n-subsets of {1, ..., 2n-1}, lexicographically ordered."""
    if n < 1:
        raise AlgebraError(f"n must be positive, got {n}")
    return [LocalState(n, c) for c in itertools.combinations(range(1, 2 * n), n)]


def transfer_vector(x: LocalState, y: LocalState) -> tuple[int, ...]:
    """The integer vector v(x, y) of length 2n."""
    if x.n != y.n:
        raise AlgebraError("local states of different size")
    return tuple(
        abs(sum(1 for j in x.intervals if j >= i) - sum(1 for k in y.intervals if k >= i))
        for i in range(1, 2 * x.n + 1)
    )


class BoundaryAlgebra:
    """Multiplication tables of C(n) for one value of n.

    Obtain instances through :func:`algebra`, which caches them.
    """

    def __init__(self, n: int):
        if n < 1:
            raise AlgebraError(f"n must be positive, got {n}")
        self.n = n
        self.width = 2 * n
        self.local_states = enumerate_local_states(n)
        self.states = [s.intervals for s in self.local_states]
        self.index = {s: i for i, s in enumerate(self.states)}
        self.state_sets = [frozenset(s) for s in self.states]
        ge = [
            [sum(1 for j in s if j >= i) for i in range(1, self.width + 1)]
            for s in self.states
        ]
        self._ge = ge
        m = len(self.states)
        self.v = [
            [tuple(abs(a - b) for a, b in zip(ge[i], ge[j])) for j in range(m)]
            for i in range(m)
        ]
        self._corr: dict[tuple[int, int, int], tuple[int, ...]] = {}
        self._killers: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}
        self._mul_ctx: dict = {}
        self._jumps = self._jump_pairs()

    # -- structure -------------------------------------------------------

    def corr(self, i: int, j: int, k: int) -> tuple[int, ...]:
        key = (i, j, k)
        c = self._corr.get(key)
        if c is None:
            v = self.v
            c = tuple((p + q - r) // 2 for p, q, r in zip(v[i][j], v[j][k], v[i][k]))
            self._corr[key] = c
        return c

    def _jump_pairs(self) -> list[tuple[int, int]]:
        """State pairs related by R_i R_{i+1} or L_{i+1} L_i."""
        out = []
        for a, s in enumerate(self.state_sets):
            for i in range(2, self.width):
                if i - 1 in s and i not in s and i + 1 not in s and i + 1 <= self.width - 1:
                    t = (s - {i - 1}) | {i + 1}
                    b = self.index[tuple(sorted(t))]
                    out.append((a, b))
                    out.append((b, a))
        return out

    def killers(self, i: int, k: int) -> tuple[tuple[int, ...], ...]:
        """Minimal exponent vectors of basis triples (i, k, U^t) lying in the ideal."""
        key = (i, k)
        ks = self._killers.get(key)
        if ks is not None:
            return ks
        w = self.width
        cands = set()
        for y, ys in enumerate(self.state_sets):
            base = None
            for u in range(1, w + 1):
                if (u - 1) not in ys and u not in ys:
                    if base is None:
                        base = self.corr(i, y, k)
                    e = list(base)
                    e[u - 1] += 1
                    cands.add(tuple(e))
        vik = self.v[i][k]
        for a, b in self._jumps:
            vs = (self.v[i][a], self.v[a][b], self.v[b][k])
            cands.add(tuple((p + q + r - s) // 2 for p, q, r, s in zip(*vs, vik)))
        minimal = [
            c for c in cands
            if not any(d != c and all(x <= y for x, y in zip(d, c)) for d in cands)
        ]
        ks = tuple(sorted(minimal))
        self._killers[key] = ks
        return ks

    def is_zero(self, i: int, k: int, exps: tuple[int, ...]) -> bool:
        return kernels.dominated(exps, self.killers(i, k))

    # -- basis triples -----------------------------------------------------

    def gen(self, i: int, k: int, exps: tuple[int, ...]):
        """The basis triple, or None if it vanishes in C(n)."""
        if self.is_zero(i, k, exps):
            return None
        return (i, k, tuple(exps))

    def from_weight(self, i: int, k: int, doubled):
        """The basis triple from state i to state k with the given doubled weight.

        Returns None when no non-negative integer exponents realise the
        weight, or when the triple vanishes.
        """
        v = self.v[i][k]
        exps = []
        for d, q in zip(doubled, v):
            r = d - q
            if r < 0 or r & 1:
                return None
            exps.append(r >> 1)
        t = tuple(exps)
        if kernels.dominated(t, self.killers(i, k)):
            return None
        return (i, k, t)

    def weight2(self, g) -> tuple[int, ...]:
        """Doubled weight of an internal basis triple."""
        i, k, e = g
        return tuple(q + 2 * a for q, a in zip(self.v[i][k], e))

    def mul_gen(self, g, h):
        """Product of two internal basis triples, or None."""
        i, j, a = g
        j2, k, b = h
        if j != j2:
            return None
        key = (i, j, k)
        ctx = self._mul_ctx.get(key)
        if ctx is None:
            ctx = self._mul_ctx[key] = (self.corr(i, j, k), self.killers(i, k))
        t = kernels.product_exponents(a, b, ctx[0], ctx[1])
        if t is None:
            return None
        return (i, k, t)

    def basis(self, exp_cap: int, source: int | None = None) -> Iterator[tuple]:
        """All nonzero basis triples with every exponent <= exp_cap."""
        sources = range(len(self.states)) if source is None else (source,)
        rng = range(exp_cap + 1)
        for i in sources:
            for k in range(len(self.states)):
                for e in itertools.product(rng, repeat=self.width):
                    if not self.is_zero(i, k, e):
                        yield (i, k, e)

    def public(self, g) -> AlgebraGenerator:
        i, k, e = g
        return AlgebraGenerator(self.local_states[i], self.local_states[k], e)

    def state_index(self, x: LocalState) -> int:
        if x.n != self.n:
            raise AlgebraError(f"local state for n={x.n} used in C({self.n})")
        try:
            return self.index[x.intervals]
        except KeyError:
            raise AlgebraError(f"invalid local state {x}") from None


@lru_cache(maxsize=None)
def algebra(n: int) -> BoundaryAlgebra:
    return BoundaryAlgebra(n)


def _toggle(acc: set, item) -> None:
    if item in acc:
        acc.remove(item)
    else:
        acc.add(item)


class AlgebraElement:
    """An element of C(n): a finite set of nonzero basis triples."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable = ()):
        self.n = n
        self.terms = frozenset(terms)

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(n, ())

    @classmethod
    def from_sum(cls, n: int, terms: Iterable) -> "AlgebraElement":
        """Build from an iterable of triples, cancelling repeats mod 2."""
        acc: set = set()
        for t in terms:
            if t is not None:
                _toggle(acc, t)
        return cls(n, acc)

    @property
    def algebra(self) -> BoundaryAlgebra:
        return algebra(self.n)

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.n != self.n:
            raise AlgebraError(f"mismatched algebras C({self.n}) and C({other.n})")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.n, self.terms ^ other.terms)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        alg = self.algebra
        acc: set = set()
        by_source: dict[int, list] = {}
        for h in other.terms:
            by_source.setdefault(h[0], []).append(h)
        for g in self.terms:
            for h in by_source.get(g[1], ()):
                p = alg.mul_gen(g, h)
                if p is not None:
                    _toggle(acc, p)
        return AlgebraElement(self.n, acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def generators(self) -> list[AlgebraGenerator]:
        alg = self.algebra
        return [alg.public(g) for g in sorted(self.terms)]

    def sorted_terms(self) -> list:
        alg = self.algebra
        return sorted(self.terms, key=lambda g: (alg.states[g[0]], alg.states[g[1]], g[2]))

    def to_json(self) -> dict:
        alg = self.algebra
        return {
            "n": self.n,
            "terms": [
                {"x": list(alg.states[i]), "y": list(alg.states[k]), "exp": list(e)}
                for i, k, e in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraElement":
        n = int(data["n"])
        alg = algebra(n)
        terms = []
        for t in data["terms"]:
            i = alg.state_index(local_state(n, t["x"]))
            k = alg.state_index(local_state(n, t["y"]))
            e = tuple(int(a) for a in t["exp"])
            if len(e) != 2 * n or min(e) < 0:
                raise AlgebraError(f"bad exponent vector {e}")
            terms.append(alg.gen(i, k, e))
        return cls.from_sum(n, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"0_C({self.n})"
        alg = self.algebra
        parts = []
        for i, k, e in self.sorted_terms():
            mono = "".join(f"U{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(e) if a)
            parts.append(f"({alg.local_states[i]},{alg.local_states[k]},{mono or '1'})")
        return " + ".join(parts)


# -- state-level operations ---------------------------------------------------


def weight(g: AlgebraGenerator) -> WeightVector:
    v = transfer_vector(g.source, g.target)
    return WeightVector(tuple(q + 2 * a for q, a in zip(v, g.exponents)))


def canonicalize(x: LocalState, y: LocalState, exponents: Iterable[int]) -> AlgebraElement:
    """The one-term element (x, y, U^exponents) of C(n), or zero."""
    if x.n != y.n:
        raise AlgebraError("local states of different size")
    e = tuple(int(a) for a in exponents)
    if len(e) != 2 * x.n:
        raise AlgebraError(f"expected {2 * x.n} exponents, got {len(e)}")
    if min(e) < 0:
        raise AlgebraError(f"negative exponent in {e}")
    alg = algebra(x.n)
    g = alg.gen(alg.state_index(x), alg.state_index(y), e)
    return AlgebraElement(x.n, () if g is None else (g,))


def element(g: AlgebraGenerator) -> AlgebraElement:
    return canonicalize(g.source, g.target, g.exponents)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def idempotent(x: LocalState) -> AlgebraElement:
    return canonicalize(x, x, (0,) * (2 * x.n))


def unit(n: int) -> AlgebraElement:
    alg = algebra(n)
    return AlgebraElement(n, [(i, i, (0,) * alg.width) for i in range(len(alg.states))])


def u_element(i: int, n: int) -> AlgebraElement:
    alg = algebra(n)
    if not 1 <= i <= alg.width:
        raise AlgebraError(f"U index {i} out of range 1..{alg.width}")
    e = tuple(1 if j == i - 1 else 0 for j in range(alg.width))
    return AlgebraElement.from_sum(n, (alg.gen(s, s, e) for s in range(len(alg.states))))


def _move_element(i: int, n: int, leftward: bool) -> AlgebraElement:
    alg = algebra(n)
    if not 1 <= i <= 2 * n - 1:
        raise AlgebraError(f"index {i} out of range 1..{2 * n - 1}")
    zero = (0,) * alg.width
    terms = []
    for a, s in enumerate(alg.state_sets):
        if i - 1 in s and i not in s:
            b = alg.index[tuple(sorted((s - {i - 1}) | {i}))]
            terms.append(alg.gen(b, a, zero) if leftward else alg.gen(a, b, zero))
    return AlgebraElement.from_sum(n, terms)


def r_element(i: int, n: int) -> AlgebraElement:
    """R_i: moves an occupied interval i-1 to a free interval i."""
    return _move_element(i, n, leftward=False)


def l_element(i: int, n: int) -> AlgebraElement:
    """L_i: moves an occupied interval i to a free interval i-1."""
    return _move_element(i, n, leftward=True)


def curvature_element(m: Matching) -> AlgebraElement:
    total = AlgebraElement.zero(m.n)
    for i, j in m.pairs:
        total = total + u_element(i, m.n) * u_element(j, m.n)
    return total


@lru_cache(maxsize=None)
def curvature_terms(m: Matching) -> dict[int, tuple]:
    """Curvature terms grouped by idempotent: state index -> basis triples."""
    out: dict[int, list] = {}
    for g in curvature_element(m).terms:
        out.setdefault(g[0], []).append(g)
    return {k: tuple(sorted(v)) for k, v in out.items()}


def is_far(x: LocalState, y: LocalState) -> bool:
    """True when some |x_i - y_i| > 1 in the increasing enumerations."""
    return any(abs(a - b) > 1 for a, b in zip(x.intervals, y.intervals))


def all_matchings(n: int) -> list[Matching]:
    """Every perfect matching of 1..2n, in a fixed order."""
    def rec(pts):
        if not pts:
            yield ()
            return
        a = pts[0]
        for b in pts[1:]:
            rest = tuple(p for p in pts if p not in (a, b))
            for m in rec(rest):
                yield ((a, b),) + m
    return [Matching(n, pairs) for pairs in rec(tuple(range(1, 2 * n + 1)))]
