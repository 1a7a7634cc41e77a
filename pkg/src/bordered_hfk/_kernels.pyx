# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels; see _kernels_py for the reference."""


def dominated(tuple exps, tuple killers):
    """True if ``exps`` is componentwise >= some vector in ``killers``."""
    cdef Py_ssize_t n = len(exps), i
    cdef tuple k
    cdef bint ok
    for k in killers:
        ok = True
        for i in range(n):
            if <long>exps[i] < <long>k[i]:
                ok = False
                break
        if ok:
            return True
    return False


def product_exponents(tuple a, tuple b, tuple corr, tuple killers):
    """Exponents of a product of two generators, or None if it vanishes."""
    cdef Py_ssize_t n = len(a), i
    cdef long vals[64]
    cdef tuple k
    cdef bint ok
    if n > 64:
        t = tuple([p + q + c for p, q, c in zip(a, b, corr)])
        return None if dominated(t, killers) else t
    for i in range(n):
        vals[i] = <long>a[i] + <long>b[i] + <long>corr[i]
    for k in killers:
        ok = True
        for i in range(n):
            if vals[i] < <long>k[i]:
                ok = False
                break
        if ok:
            return None
    return tuple([vals[i] for i in range(n)])


def gf2_rank(list rows):
    """Rank over the two-element field of rows packed as Python ints."""
    cdef dict pivots = {}
    cdef Py_ssize_t rank = 0
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
