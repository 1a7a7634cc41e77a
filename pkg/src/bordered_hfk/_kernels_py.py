"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
one-for-one and is used instead when the extension has been built.
"""

from __future__ import annotations


def dominated(exps, killers):
    """True if ``exps`` is componentwise >= some vector in ``killers``."""
    for k in killers:
        for e, m in zip(exps, k):
            if e < m:
                break
        else:
            return True
    return False


def product_exponents(a, b, corr, killers):
    """Exponents of a product of two generators, or None if it vanishes.

    ``corr`` is the correction (v(x,y) + v(y,r) - v(x,r)) / 2 of the three
    idempotents involved and ``killers`` the minimal dead exponent vectors
    for the pair (x, r).
    """
    t = tuple([p + q + c for p, q, c in zip(a, b, corr)])
    if dominated(t, killers):
        return None
    return t


def gf2_rank(rows):
    """Rank over the two-element field of rows packed as Python ints."""
    pivots = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank
