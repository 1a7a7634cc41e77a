"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from bordered_hfk.algebra import AlgebraElement, algebra


def basis_triples(n: int, exp_cap: int = 2):
    gens = sorted(algebra(n).basis(exp_cap))
    return st.sampled_from(gens)


def composable(n: int, length: int, exp_cap: int = 2):
    """Chains of ``length`` basis triples whose states line up."""
    alg = algebra(n)
    gens = sorted(alg.basis(exp_cap))
    by_source: dict = {}
    for g in gens:
        by_source.setdefault(g[0], []).append(g)

    @st.composite
    def build(draw):
        g = draw(st.sampled_from(gens))
        out = [g]
        for _ in range(length - 1):
            nxt = by_source.get(out[-1][1], [])
            out.append(draw(st.sampled_from(nxt)))
        return tuple(out)

    return build()


def elements(n: int, exp_cap: int = 2, max_terms: int = 4):
    return st.lists(basis_triples(n, exp_cap), max_size=max_terms).map(
        lambda ts: AlgebraElement.from_sum(n, ts))
