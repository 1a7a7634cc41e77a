"""Assemble the knot complex by folding bimodules, and take hat homology.

The complex of a plat presentation is

    maxima ⊠ X_1 ⊠ ... ⊠ X_m ⊠ minima tower,

read here as a sequence of folds: start with the one-generator structure
of the caps and box each elementary bimodule onto it from the top down.
The global minimum (the last event) is not folded: the result lives over
the two-strand algebra C(1), whose curvature U1 U2 is set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Matching
from .bimodules import (
    CrossingBimodule,
    maxima_d_structure,
    minimum_bimodule,
    minimum_context,
)
from .dstructures import (
    DABimodule,
    DStructure,
    Report,
    box_da_d,
    box_da_da,
    verify_d_structure,
)
from .kernels import gf2_rank
from .knots import Crossing, SlicePresentation, matching_trace, normalize


class VerificationFailed(RuntimeError):
    def __init__(self, level: int, report: Report):
        super().__init__(f"level {level}: {report.summary()}")
        self.level = level
        self.report = report


class NotADifferential(ValueError):
    """The matrix handed to :func:`hat_rank` does not square to zero."""


@dataclass
class Level:
    n: int
    generators: int
    verified: bool
    report: Report | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "generators": self.generators, "verified": self.verified}


@dataclass
class Pipeline:
    presentation: SlicePresentation
    structure: DStructure
    bimodules: list
    matchings: list


def pipeline(p: SlicePresentation) -> Pipeline:
    """The caps structure and the bimodules to fold, top to bottom."""
    p = normalize(p)
    trace = matching_trace(p)
    top = maxima_d_structure(p.caps)
    factors: list[DABimodule] = []
    for k, e in enumerate(p.events[:-1]):
        above: Matching = trace[k]
        if isinstance(e, Crossing):
            factors.append(CrossingBimodule(above.n, e.pos, e.sign, matching_in=above,
                                            matching_out=trace[k + 1]))
        else:
            ctx = minimum_context(above)
            if ctx.lower != trace[k + 1]:
                raise AssertionError("minimum context disagrees with the matching trace")
            factors.append(minimum_bimodule(ctx))
    return Pipeline(p, top, factors, list(trace.levels[:-1]))


@dataclass
class AssemblyResult:
    structure: DStructure
    levels: list = field(default_factory=list)


def assemble(p: SlicePresentation, verify_each: bool = False, depth_cap: int | None = None,
             threads: int = 1, associate_left: bool = False) -> AssemblyResult:
    """Fold the pipeline of ``p`` into a D-structure over C(1).

    With ``verify_each`` every intermediate structure is checked against
    the curvature of its level and a failure raises VerificationFailed.
    With ``associate_left`` the bimodules are first composed with each
    other and the composite is boxed onto the caps once.
    """
    pl = pipeline(p)
    X = pl.structure
    levels = [_level(X, verify_each, 0)]
    if associate_left:
        if pl.bimodules:
            comp = pl.bimodules[0]
            for B in pl.bimodules[1:]:
                comp = box_da_da(B, comp, depth_cap)
            X = box_da_d(comp, X, depth_cap, threads)
            levels.append(_level(X, verify_each, len(pl.bimodules)))
        return AssemblyResult(X, levels)
    for k, B in enumerate(pl.bimodules, start=1):
        X = box_da_d(B, X, depth_cap, threads)
        levels.append(_level(X, verify_each, k))
    return AssemblyResult(X, levels)


def _level(X: DStructure, verify: bool, index: int) -> Level:
    if not verify:
        return Level(X.n, len(X), False)
    rep = verify_d_structure(X)
    if not rep.passed:
        raise VerificationFailed(index, rep)
    return Level(X.n, len(X), True, rep)


# -- hat homology -----------------------------------------------------------------


@dataclass(frozen=True)
class F2Matrix:
    """Sparse matrix over the two-element field; ``entries[i]`` is the set of
    columns j with a 1 in row i (the arrow i -> j)."""

    labels: tuple
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.labels)

    def rows_as_ints(self) -> list[int]:
        return [sum(1 << j for j in row) for row in self.entries]

    def square(self) -> "F2Matrix":
        out = []
        for row in self.entries:
            acc: set = set()
            for j in row:
                acc ^= set(self.entries[j])
            out.append(frozenset(acc))
        return F2Matrix(self.labels, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_json(self) -> dict:
        return {
            "generators": list(self.labels),
            "arrows": [[self.labels[i], self.labels[j]] for i, row in enumerate(self.entries) for j in sorted(row)],
        }


def hat_matrix(X: DStructure) -> F2Matrix:
    """Differential with both U variables set to zero: keep exponent-zero terms."""
    if X.n != 1:
        raise ValueError(f"hat_matrix expects a structure over C(1), got C({X.n})")
    rows = []
    for row in X.delta:
        acc: set = set()
        for (_, _, exps), j in row:
            if not any(exps):
                acc ^= {j}
        rows.append(frozenset(acc))
    return F2Matrix(tuple(X.ids), tuple(rows))


def hat_rank(m: F2Matrix) -> int:
    """Homology rank dim ker - dim im of a square-zero matrix."""
    if not m.square().is_zero():
        raise NotADifferential("hat differential does not square to zero")
    r = gf2_rank(m.rows_as_ints())
    return m.size - 2 * r


def matrix_from_rows(rows: Sequence[Sequence[int]]) -> F2Matrix:
    """Dense 0/1 rows to an :class:`F2Matrix` with labels 0..N-1."""
    return F2Matrix(tuple(str(i) for i in range(len(rows))),
                    tuple(frozenset(j for j, v in enumerate(r) if v) for r in rows))


@dataclass
class ComputeResult:
    presentation: SlicePresentation
    structure: DStructure
    levels: list
    matrix: F2Matrix
    hat_rank: int

    def to_json(self, input_repr) -> dict:
        return {
            "input": input_repr,
            "generators": len(self.structure),
            "hat_rank": self.hat_rank,
            "levels": [lv.to_json() for lv in self.levels],
        }


def compute(p: SlicePresentation, verify_each: bool = False, depth_cap: int | None = None,
            threads: int = 1, associate_left: bool = False) -> ComputeResult:
    res = assemble(p, verify_each, depth_cap, threads, associate_left)
    X = res.structure
    if verify_each:
        final = verify_d_structure(X)
        if not final.passed:
            raise VerificationFailed(len(res.levels), final)
    m = hat_matrix(X)
    return ComputeResult(p, X, res.levels, m, hat_rank(m))
