"""Exhaustive law checks for C(n) over the basis triples with small exponents.

Associativity is checked through a reduction that is exact for this
algebra.  Raw product exponents are additive, so (ab)c and a(bc) always
carry the same exponent vector, and the two sides can only differ when one
intermediate product is killed and the final triple is not.  Killed sets
are up-closed in the exponents, so if some c witnesses a failure, so does
the exponent-zero triple between the same states.  Hence it suffices to
check, for every killed product ab, its right multiples by exponent-zero
triples, and dually on the left.
"""

from __future__ import annotations

from .algebra import (
    AlgebraElement,
    BoundaryAlgebra,
    algebra,
    all_matchings,
    curvature_element,
    l_element,
    r_element,
    unit,
)
from .dstructures import Report


def _products(A: BoundaryAlgebra, exp_cap: int, rep: Report):
    """Walk all composable pairs; check weight additivity and collect killed raw products.

    Returns {(i, k): set of raw exponent vectors whose triple vanishes}.
    """
    gens = list(A.basis(exp_cap))
    by_source: dict[int, list] = {}
    for g in gens:
        by_source.setdefault(g[0], []).append(g)
    dead: dict[tuple[int, int], set] = {}
    for a in gens:
        i, j, ea = a
        wa = A.weight2(a)
        for b in by_source.get(j, ()):
            k, eb = b[1], b[2]
            corr = A.corr(i, j, k)
            raw = tuple(p + q + c for p, q, c in zip(ea, eb, corr))
            rep.checked += 1
            p = A.mul_gen(a, b)
            if p is None:
                if not A.is_zero(i, k, raw):
                    rep.fail(("product vanished without being killed", a, b))
                dead.setdefault((i, k), set()).add(raw)
                continue
            if p[2] != raw:
                rep.fail(("product exponents", a, b, p))
            want = tuple(x + y for x, y in zip(wa, A.weight2(b)))
            if A.weight2(p) != want:
                rep.fail(("weight additivity", a, b, p))
    return dead


def check_associativity(A: BoundaryAlgebra, dead: dict, rep: Report) -> None:
    m = len(A.states)
    zero = (0,) * A.width
    live = [[not A.is_zero(i, k, zero) for k in range(m)] for i in range(m)]
    for (i, k), xs in dead.items():
        for x in xs:
            for l in range(m):
                # (ab) c with c = (k, l, 1): the killed left factor must stay killed
                if live[k][l]:
                    rep.checked += 1
                    y = tuple(p + c for p, c in zip(x, A.corr(i, k, l)))
                    if not A.is_zero(i, l, y):
                        rep.fail(("associativity (right)", (i, k, x), l))
                # c (ab) with c = (l, i, 1)
                if live[l][i]:
                    rep.checked += 1
                    y = tuple(p + c for p, c in zip(x, A.corr(l, i, k)))
                    if not A.is_zero(l, k, y):
                        rep.fail(("associativity (left)", l, (i, k, x)))


def check_idempotents(A: BoundaryAlgebra, exp_cap: int, rep: Report) -> None:
    n = A.n
    one = unit(n)
    idems = [AlgebraElement(n, [(s, s, (0,) * A.width)]) for s in range(len(A.states))]
    for e in idems:
        for f in idems:
            rep.checked += 1
            want = e if e == f else AlgebraElement.zero(n)
            if e * f != want:
                rep.fail(("idempotent orthogonality", e, f))
    for g in A.basis(exp_cap):
        x = AlgebraElement(n, [g])
        rep.checked += 1
        if one * x != x or x * one != x:
            rep.fail(("unitality", g))
        i, k, _ = g
        if idems[i] * x != x or x * idems[k] != x:
            rep.fail(("idempotent action", g))


def check_relations(A: BoundaryAlgebra, rep: Report) -> None:
    n = A.n
    for i in range(1, 2 * n - 1):
        rep.checked += 2
        if r_element(i, n) * r_element(i + 1, n):
            rep.fail(("R_i R_i+1 != 0", i))
        if l_element(i + 1, n) * l_element(i, n):
            rep.fail(("L_i+1 L_i != 0", i))


def check_centrality(A: BoundaryAlgebra, exp_cap: int, rep: Report) -> None:
    n = A.n
    omegas = [(m, curvature_element(m)) for m in all_matchings(n)]
    for g in A.basis(exp_cap):
        x = AlgebraElement(n, [g])
        for m, w in omegas:
            rep.checked += 1
            if w * x != x * w:
                rep.fail(("curvature not central", m.pairs, g))


def check_algebra_laws(n: int, exp_cap: int = 2) -> Report:
    """All algebra laws for C(n) over basis triples with exponents <= exp_cap."""
    A = algebra(n)
    rep = Report(f"algebra laws of C({n}), exponents <= {exp_cap}")
    dead = _products(A, exp_cap, rep)
    check_associativity(A, dead, rep)
    check_idempotents(A, exp_cap, rep)
    check_relations(A, rep)
    check_centrality(A, exp_cap, rep)
    return rep


def check_associativity_literal(n: int, exp_cap: int) -> Report:
    """Plain triple-by-triple associativity; feasible only for small n."""
    A = algebra(n)
    rep = Report(f"literal associativity of C({n}), exponents <= {exp_cap}")
    gens = list(A.basis(exp_cap))
    by_source: dict[int, list] = {}
    for g in gens:
        by_source.setdefault(g[0], []).append(g)
    mul = A.mul_gen
    for a in gens:
        for b in by_source.get(a[1], ()):
            ab = mul(a, b)
            for c in by_source.get(b[1], ()):
                rep.checked += 1
                bc = mul(b, c)
                left = None if ab is None else mul(ab, c)
                right = None if bc is None else mul(a, bc)
                if left != right:
                    rep.fail((a, b, c))
    return rep
