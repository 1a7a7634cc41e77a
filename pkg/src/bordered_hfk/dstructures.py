"""Curved type-D structures, DA-bimodules and their box tensor products.

A type-D structure over C(n) is stored by its structure constants: for
every generator x a list of pairs (algebra triple, target generator) with
the triple running from idem(x) to idem(target).  It is curved by the
central element omega_M of its matching when

    sum_y xi(x, y) * xi(y, z) = omega_M * I_x   if x == z, else 0.

DA-bimodules are rules rather than tables (the minimum bimodule has
unbounded arity).  A bimodule generator ("descriptor") carries an input
idempotent on the right and an output idempotent on the left; the action
delta_{1+j} takes a descriptor and a composable sequence of j basis triples
of C(n_in) and returns a list of (triple of C(n_out), descriptor).

Everything in here works with the internal triple representation of
:mod:`bordered_hfk.algebra`; conversion to public AlgebraElements happens at
the edges.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import kernels
from .algebra import (
    AlgebraElement,
    AlgebraError,
    LocalState,
    Matching,
    algebra,
    curvature_terms,
    local_state,
    matching as make_matching,
)

DEFAULT_DEPTH_CAP = 64


class DepthExceeded(RuntimeError):
    """A chain expansion hit the configured depth cap."""


class IncompatibleBoundary(ValueError):
    """Algebra sizes or matchings disagree at an interface."""


class NotFlat(ValueError):
    """Strict flattening requested but the curvature acts nontrivially."""


def depth_cap_default() -> int:
    raw = os.environ.get("HFK_DEPTH_CAP")
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"HFK_DEPTH_CAP must be an integer, got {raw!r}") from None
        if cap < 1:
            raise ValueError("HFK_DEPTH_CAP must be positive")
        return cap
    return DEFAULT_DEPTH_CAP


def toggle_all(pairs: Iterable) -> list:
    """Reduce a list of hashable items modulo 2, keeping first-seen order."""
    seen: dict = {}
    for p in pairs:
        if p in seen:
            del seen[p]
        else:
            seen[p] = True
    return list(seen)


class DGenerator(NamedTuple):
    id: str
    idem: LocalState


@dataclass
class Report:
    """Outcome of a verifier run.  Failures are data, never exceptions."""

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    max_failures: int = 20
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, witness) -> None:
        self.failure_count += 1
        if len(self.failures) < self.max_failures:
            self.failures.append(witness)

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}: {status} ({self.checked} checked, {self.failure_count} failures)"


# -- curvature ideal ----------------------------------------------------------


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _ideal_basis(m: Matching, i: int, k: int, degree2: int):
    """Row-reduced spanning set of omega_M * (I_i C I_k) in one doubled total degree.

    Returns (pivots dict, term index) with rows packed as ints over the
    basis triples they involve.
    """
    alg = algebra(m.n)
    base = sum(alg.v[i][k])
    rest = degree2 - 4 - base
    index: dict = {}
    rows = []
    if rest >= 0 and rest % 2 == 0:
        omega = curvature_terms(m).get(i, ())
        for e in _compositions(rest // 2, alg.width):
            g = alg.gen(i, k, e)
            if g is None:
                continue
            acc: set = set()
            for w in omega:
                p = alg.mul_gen(w, g)
                if p is not None:
                    acc ^= {p}
            row = 0
            for t in acc:
                if t not in index:
                    index[t] = len(index)
                row |= 1 << index[t]
            if row:
                rows.append(row)
    pivots: dict = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return pivots, index


def in_curvature_ideal(n: int, m: Matching, terms: Iterable) -> bool:
    """Whether a sum of basis triples of C(n) lies in the ideal generated by omega_M."""
    alg = algebra(n)
    groups: dict = {}
    for t in terms:
        key = (t[0], t[1], sum(alg.weight2(t)))
        groups.setdefault(key, set()).symmetric_difference_update({t})
    for (i, k, d2), ts in groups.items():
        if not ts:
            continue
        if n == 1:
            if any(e[0] == 0 or e[1] == 0 for _, _, e in ts):
                return False
            continue
        pivots, index = _ideal_basis(m, i, k, d2)
        r = 0
        for t in ts:
            j = index.get(t)
            if j is None:
                return False
            r |= 1 << j
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                return False
            r ^= p
    return True


# -- type-D structures ----------------------------------------------------------


class DStructure:
    """A finitely generated curved type-D structure over C(n).

    ``ids[i]`` is the identifier of generator i, ``idem[i]`` the index of
    its local state and ``delta[i]`` a tuple of (triple, target index).
    """

    def __init__(self, n: int, matching: Matching, generators: Sequence[DGenerator],
                 delta: dict | None = None):
        if matching.n != n:
            raise IncompatibleBoundary(f"matching on {2 * matching.n} points for C({n})")
        alg = algebra(n)
        ids = [g.id for g in generators]
        if len(set(ids)) != len(ids):
            raise ValueError("generator ids must be unique")
        index = {g: i for i, g in enumerate(ids)}
        idem = [alg.state_index(g.idem) for g in generators]
        rows: list[list] = [[] for _ in ids]
        for src, items in (delta or {}).items():
            if src not in index:
                raise KeyError(f"unknown generator {src!r}")
            i = index[src]
            for coeff, dst in items:
                if dst not in index:
                    raise KeyError(f"unknown generator {dst!r}")
                if not isinstance(coeff, AlgebraElement) or coeff.n != n:
                    raise AlgebraError(f"coefficient must be an element of C({n})")
                j = index[dst]
                for t in coeff.terms:
                    if t[0] != idem[i] or t[1] != idem[j]:
                        raise AlgebraError(
                            f"coefficient term {alg.public(t)} does not run from "
                            f"idem({src}) to idem({dst})"
                        )
                    rows[i].append((t, j))
        self._init(n, matching, ids, idem, [tuple(toggle_all(r)) for r in rows])

    def _init(self, n, matching, ids, idem, delta):
        self.n = n
        self.matching = matching
        self.ids = list(ids)
        self.idem = list(idem)
        self.delta = list(delta)
        self.index = {g: i for i, g in enumerate(self.ids)}

    @classmethod
    def from_internal(cls, n, matching, ids, idem, delta) -> "DStructure":
        obj = cls.__new__(cls)
        obj._init(n, matching, ids, idem, delta)
        return obj

    @property
    def algebra(self):
        return algebra(self.n)

    @property
    def generators(self) -> list[DGenerator]:
        ls = self.algebra.local_states
        return [DGenerator(g, ls[s]) for g, s in zip(self.ids, self.idem)]

    def __len__(self) -> int:
        return len(self.ids)

    def delta_of(self, gid: str) -> list[tuple[AlgebraElement, str]]:
        """delta(gid) with coefficients grouped per target generator."""
        grouped: dict[int, list] = {}
        for t, j in self.delta[self.index[gid]]:
            grouped.setdefault(j, []).append(t)
        return [(AlgebraElement(self.n, ts), self.ids[j]) for j, ts in sorted(grouped.items())]

    def structure_constants(self) -> dict[tuple[str, str], AlgebraElement]:
        out = {}
        for i, row in enumerate(self.delta):
            grouped: dict[int, list] = {}
            for t, j in row:
                grouped.setdefault(j, []).append(t)
            for j, ts in grouped.items():
                out[(self.ids[i], self.ids[j])] = AlgebraElement(self.n, ts)
        return out

    def arrow_count(self) -> int:
        return sum(len(r) for r in self.delta)

    def to_json(self) -> dict:
        alg = self.algebra
        arrows = []
        for i, row in enumerate(self.delta):
            grouped: dict[int, list] = {}
            for t, j in row:
                grouped.setdefault(j, []).append(t)
            for j in sorted(grouped):
                arrows.append({
                    "from": self.ids[i],
                    "coeff": AlgebraElement(self.n, grouped[j]).to_json(),
                    "to": self.ids[j],
                })
        return {
            "n": self.n,
            "matching": [list(p) for p in self.matching.pairs],
            "generators": [{"id": g, "idem": list(alg.states[s])} for g, s in zip(self.ids, self.idem)],
            "delta": arrows,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DStructure":
        n = int(data["n"])
        m = make_matching(n, data["matching"])
        gens = [DGenerator(str(g["id"]), local_state(n, g["idem"])) for g in data["generators"]]
        delta: dict = {}
        for a in data.get("delta", []):
            delta.setdefault(a["from"], []).append((AlgebraElement.from_json(a["coeff"]), a["to"]))
        return cls(n, m, gens, delta)

    def relabeled(self, order: Sequence[int], ids: Sequence[str] | None = None) -> "DStructure":
        """Copy with generators permuted (``order[new] = old``)."""
        inv = {old: new for new, old in enumerate(order)}
        new_ids = list(ids) if ids is not None else [self.ids[o] for o in order]
        delta = [tuple((t, inv[j]) for t, j in self.delta[o]) for o in order]
        return DStructure.from_internal(self.n, self.matching, new_ids,
                                        [self.idem[o] for o in order], delta)


def iterate_delta(X: DStructure, gid: str, j: int) -> list[tuple[tuple[AlgebraElement, ...], str]]:
    """delta^j(gid) as a mod-2 list of (tensor chain, generator)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    terms = _iterate_internal(X, X.index[gid], j)
    return [(tuple(AlgebraElement(X.n, (t,)) for t in chain), X.ids[g]) for chain, g in terms]


def _iterate_internal(X: DStructure, i: int, j: int) -> list:
    level = [((), i)]
    for _ in range(j):
        nxt = []
        for chain, g in level:
            for t, h in X.delta[g]:
                nxt.append((chain + (t,), h))
        level = toggle_all(nxt)
    return level


def _curvature_mode(n: int, mode: str) -> str:
    if mode == "auto":
        # the two-strand algebra is used with omega = U1 U2 set to zero
        return "quotient" if n == 1 else "strict"
    if mode not in ("strict", "quotient"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def verify_d_structure(X: DStructure, matching: Matching | None = None, mode: str = "auto") -> Report:
    """Check sum_y xi(x,y) xi(y,z) == omega_M I_x delta_{x,z} for all pairs.

    ``mode="quotient"`` compares modulo the ideal generated by omega_M;
    ``"auto"`` uses it only for the two-strand algebra.
    """
    m = matching or X.matching
    mode = _curvature_mode(X.n, mode)
    alg = X.algebra
    omega = curvature_terms(m)
    rep = Report("d-structure")
    for i, row in enumerate(X.delta):
        acc: dict[int, set] = {}
        for a, y in row:
            for b, z in X.delta[y]:
                p = alg.mul_gen(a, b)
                if p is not None:
                    acc.setdefault(z, set()).symmetric_difference_update({p})
        acc.setdefault(i, set()).symmetric_difference_update(omega.get(X.idem[i], ()))
        for z, ts in acc.items():
            rep.checked += 1
            if not ts:
                continue
            if mode == "quotient" and in_curvature_ideal(X.n, m, ts):
                continue
            rep.fail({
                "from": X.ids[i],
                "to": X.ids[z],
                "defect": repr(AlgebraElement(X.n, ts)),
            })
    return rep


def check_delta_bar_identities(X: DStructure, max_len: int = 3) -> Report:
    """The comultiplication and curvature identities of the iterated delta.

    (1) splitting delta^{i+j} after i factors equals delta^j applied after
    delta^i;  (2) merging adjacent factors of delta^k summed over positions
    equals inserting omega at every position of delta^{k-1}.
    """
    alg = X.algebra
    omega = curvature_terms(X.matching)
    rep = Report("delta-bar identities")
    for g in range(len(X)):
        powers = [_iterate_internal(X, g, k) for k in range(max_len + 1)]
        for total in range(max_len + 1):
            for i in range(total + 1):
                lhs = set(powers[total])
                rhs = set()
                for c1, y in powers[i]:
                    for c2, z in _iterate_internal(X, y, total - i):
                        rhs ^= {(c1 + c2, z)}
                rep.checked += 1
                if lhs != rhs:
                    rep.fail({"generator": X.ids[g], "split": (i, total - i)})
        for k in range(1, max_len + 1):
            merged: set = set()
            for chain, z in powers[k]:
                for ell in range(k - 1):
                    p = alg.mul_gen(chain[ell], chain[ell + 1])
                    if p is not None:
                        merged ^= {(chain[:ell] + (p,) + chain[ell + 2:], z)}
            inserted: set = set()
            for chain, z in powers[k - 2] if k >= 2 else ():
                states = [X.idem[g]] + [t[1] for t in chain]
                for ell in range(k - 1):
                    for w in omega.get(states[ell], ()):
                        inserted ^= {(chain[:ell] + (w,) + chain[ell:], z)}
            rep.checked += 1
            if X.n > 1 and merged != inserted:
                rep.fail({"generator": X.ids[g], "length": k})
    return rep


# -- DA-bimodules -------------------------------------------------------------


class DABimodule:
    """Base class for rule-based DA-bimodules.

    Subclasses populate ``descriptors`` (hashable), ``_in``/``_out`` (state
    indices in C(n_in) / C(n_out)) and ``_labels``, and implement
    :meth:`_action`.
    """

    name = "bimodule"

    def __init__(self, n_out: int, n_in: int, matching_out: Matching, matching_in: Matching,
                 arity_bound: int | None = None):
        self.n_out = n_out
        self.n_in = n_in
        self.matching_out = matching_out
        self.matching_in = matching_in
        self.arity_bound = arity_bound
        self.alg_out = algebra(n_out)
        self.alg_in = algebra(n_in)
        self.descriptors: list = []
        self._in: dict = {}
        self._out: dict = {}
        self._labels: dict = {}
        self._cache: dict = {}

    def _register(self, desc, in_state: int, out_state: int, label: str) -> None:
        self.descriptors.append(desc)
        self._in[desc] = in_state
        self._out[desc] = out_state
        self._labels[desc] = label

    def _finish(self) -> None:
        self.by_in_state: dict[int, list] = {}
        for d in self.descriptors:
            self.by_in_state.setdefault(self._in[d], []).append(d)

    def in_state(self, desc) -> int:
        return self._in[desc]

    def out_state(self, desc) -> int:
        return self._out[desc]

    def label(self, desc) -> str:
        return self._labels[desc]

    def action(self, desc, inputs: tuple) -> tuple:
        """delta_{1+j}(desc, inputs) as a mod-2 tuple of (triple, descriptor)."""
        if self.arity_bound is not None and len(inputs) > self.arity_bound - 1:
            return ()
        if len(inputs) > 1:
            # long input sequences rarely repeat; caching them only costs memory
            return tuple(toggle_all(self._action(desc, inputs)))
        key = (desc, inputs)
        r = self._cache.get(key)
        if r is None:
            r = tuple(toggle_all(self._action(desc, inputs)))
            self._cache[key] = r
        return r

    def _action(self, desc, inputs: tuple):
        raise NotImplementedError

    def extendable(self, desc, inputs: tuple) -> bool:
        """False only if no extension of ``inputs`` can act nontrivially."""
        return self.arity_bound is None or len(inputs) < self.arity_bound - 1

    def act(self, desc, inputs: Sequence[AlgebraElement]) -> list[tuple[AlgebraElement, object]]:
        """Multilinear action on public algebra elements."""
        for a in inputs:
            if a.n != self.n_in:
                raise IncompatibleBoundary(f"input from C({a.n}) fed to a C({self.n_in}) bimodule")
        acc: list = []
        for combo in itertools.product(*[sorted(a.terms) for a in inputs]):
            if combo and combo[0][0] != self._in[desc]:
                continue
            if any(combo[k][1] != combo[k + 1][0] for k in range(len(combo) - 1)):
                continue
            acc.extend(self.action(desc, tuple(combo)))
        grouped: dict = {}
        for t, d in toggle_all(acc):
            grouped.setdefault(d, []).append(t)
        order = {d: i for i, d in enumerate(self.descriptors)}
        return [(AlgebraElement(self.n_out, ts), d) for d, ts in sorted(grouped.items(), key=lambda kv: order.get(kv[0], 0))]


def _check_interface(B: DABimodule, n: int, m: Matching) -> None:
    if B.n_in != n:
        raise IncompatibleBoundary(f"{B.name} expects C({B.n_in}) input, got C({n})")
    if B.matching_in != m:
        raise IncompatibleBoundary(
            f"{B.name} expects matching {B.matching_in.pairs}, got {m.pairs}"
        )


def _expand(B: DABimodule, X: DStructure, desc, x: int, out_index: dict, cap: int) -> tuple:
    """delta of the box-product generator (desc, x): DFS over delta_X chains."""
    acc: list = []
    stack = [((), x)]
    while stack:
        inputs, y = stack.pop()
        for b, d in B.action(desc, inputs):
            j = out_index.get((d, y))
            if j is not None:
                acc.append((b, j))
        if X.delta[y] and B.extendable(desc, inputs):
            if len(inputs) >= cap:
                raise DepthExceeded(
                    f"chain depth cap {cap} exceeded while expanding {B.label(desc)}|{X.ids[x]}"
                )
            for a, z in reversed(X.delta[y]):
                stack.append((inputs + (a,), z))
    return tuple(toggle_all(acc))


def box_da_d(B: DABimodule, X: DStructure, depth_cap: int | None = None,
             threads: int = 1) -> DStructure:
    """The box tensor product B ⊠ X."""
    _check_interface(B, X.n, X.matching)
    cap = depth_cap or depth_cap_default()
    pairs = []
    for xi, s in enumerate(X.idem):
        for d in B.by_in_state.get(s, ()):
            pairs.append((d, xi))
    out_index = {p: k for k, p in enumerate(pairs)}
    ids = [f"{X.ids[x]}|{B.label(d)}" for d, x in pairs]
    idem = [B.out_state(d) for d, _ in pairs]

    def work(p):
        return _expand(B, X, p[0], p[1], out_index, cap)

    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            delta = list(pool.map(work, pairs))
    else:
        delta = [work(p) for p in pairs]
    return DStructure.from_internal(B.n_out, B.matching_out, ids, idem, delta)


class CompositeBimodule(DABimodule):
    """B1 ⊠ B2: inputs are split into consecutive blocks fed to B2, whose
    outputs form the input chain of B1."""

    def __init__(self, B1: DABimodule, B2: DABimodule, depth_cap: int | None = None):
        if B1.n_in != B2.n_out or B1.matching_in != B2.matching_out:
            raise IncompatibleBoundary(f"cannot compose {B1.name} with {B2.name}")
        super().__init__(B1.n_out, B2.n_in, B1.matching_out, B2.matching_in, None)
        self.B1, self.B2 = B1, B2
        self.cap = depth_cap or depth_cap_default()
        self.name = f"({B1.name} ⊠ {B2.name})"
        for d2 in B2.descriptors:
            for d1 in B1.by_in_state.get(B2.out_state(d2), ()):
                self._register((d1, d2), B2.in_state(d2), B1.out_state(d1),
                               f"{B2.label(d2)}|{B1.label(d1)}")
        self._finish()

    def _action(self, desc, inputs):
        d1, d2 = desc
        B1, B2 = self.B1, self.B2
        k = len(inputs)
        out = []
        stack = [(0, d2, ())]
        while stack:
            pos, cur, chain = stack.pop()
            if pos == k:
                for c, e1 in B1.action(d1, chain):
                    out.append((c, (e1, cur)))
            if not B1.extendable(d1, chain):
                continue
            if len(chain) >= self.cap:
                raise DepthExceeded(f"composite chain depth cap {self.cap} exceeded")
            for end in range(pos, k + 1):
                block = inputs[pos:end]
                if end > pos and not (end == pos + 1 or B2.extendable(cur, inputs[pos:end - 1])):
                    break
                for b, nxt in B2.action(cur, block):
                    stack.append((end, nxt, chain + (b,)))
        return out


def box_da_da(B1: DABimodule, B2: DABimodule, depth_cap: int | None = None) -> DABimodule:
    return CompositeBimodule(B1, B2, depth_cap)


# -- structure-equation sweep ------------------------------------------------


def sweep_basis(n: int, exp_cap: int) -> dict[int, list]:
    """Nonzero basis triples of C(n) with exponents <= exp_cap, by source state."""
    alg = algebra(n)
    out: dict[int, list] = {i: [] for i in range(len(alg.states))}
    for g in alg.basis(exp_cap):
        out[g[0]].append(g)
    return out


def _chains(by_source: dict, start: int, k: int):
    if k == 0:
        yield ()
        return
    for a in by_source.get(start, ()):
        for rest in _chains(by_source, a[1], k - 1):
            yield (a,) + rest


def structure_defect(B: DABimodule, desc, chain: tuple) -> list:
    """LHS + RHS of the structure equation at (desc, chain), reduced mod 2.

    Empty exactly when the equation holds for this input.
    """
    act = B.action
    mul = B.alg_out.mul_gen
    k = len(chain)
    acc: list = []
    push = acc.append
    for i in range(k + 1):
        left = act(desc, chain[:i])
        if not left:
            continue
        rest = chain[i:]
        for b, Y in left:
            for c, Z in act(Y, rest):
                p = mul(b, c)
                if p is not None:
                    push((p, Z))
    if k >= 2:
        imul = B.alg_in.mul_gen
        for ell in range(k - 1):
            p = imul(chain[ell], chain[ell + 1])
            if p is not None:
                acc.extend(act(desc, chain[:ell] + (p,) + chain[ell + 2:]))
    if B.arity_bound is None or k < B.arity_bound - 1:
        omega_old = curvature_terms(B.matching_in)
        states = [B.in_state(desc)] + [a[1] for a in chain]
        for ell in range(k + 1):
            for w in omega_old.get(states[ell], ()):
                acc.extend(act(desc, chain[:ell] + (w,) + chain[ell:]))
    if k == 0:
        for w in curvature_terms(B.matching_out).get(B.out_state(desc), ()):
            push((w, desc))
    return toggle_all(acc)


def verify_da_bimodule(B: DABimodule, arity_cap: int = 3, exp_cap: int = 2,
                       descriptors: Iterable | None = None) -> Report:
    """Check the curved DA structure equations on a finite sweep.

    ``arity_cap`` counts the generator slot as in delta_{1+j}: input
    sequences of length j <= arity_cap - 1 are checked, each entry drawn
    from the basis triples with exponents <= exp_cap.
    """
    rep = Report(f"structure equations of {B.name}")
    basis = sweep_basis(B.n_in, exp_cap)
    quotient = B.n_out == 1
    for desc in descriptors if descriptors is not None else B.descriptors:
        for k in range(arity_cap):
            for chain in _chains(basis, B.in_state(desc), k):
                rep.checked += 1
                defect = structure_defect(B, desc, chain)
                if not defect:
                    continue
                if quotient:
                    by_target: dict = {}
                    for t, d in defect:
                        by_target.setdefault(d, []).append(t)
                    if all(in_curvature_ideal(1, B.matching_out, ts) for ts in by_target.values()):
                        continue
                rep.fail({
                    "generator": B.label(desc),
                    "inputs": [repr(AlgebraElement(B.n_in, (a,))) for a in chain],
                    "defect": [(repr(AlgebraElement(B.n_out, (t,))), B.label(d)) for t, d in defect],
                })
        B._cache.clear()
    return rep


# -- flat complexes -------------------------------------------------------------


@dataclass
class FlatComplex:
    n: int
    basis: list[DGenerator]
    differential: dict[str, list[tuple[AlgebraElement, str]]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [{"id": g.id, "idem": list(g.idem.intervals)} for g in self.basis],
            "delta": [
                {"from": src, "coeff": c.to_json(), "to": dst}
                for src in (g.id for g in self.basis)
                for c, dst in self.differential.get(src, [])
            ],
        }


def to_flat_complex(X: DStructure, mode: str = "strict") -> FlatComplex:
    """The complex (X, d) with d the structure map.

    Strict mode requires omega_M to act by zero on every generator; quotient
    mode discards coefficient terms lying in the ideal generated by omega_M
    (only meaningful term-by-term in the two-strand algebra).
    """
    alg = X.algebra
    omega = curvature_terms(X.matching)
    if mode == "strict":
        for i, s in enumerate(X.idem):
            if omega.get(s):
                raise NotFlat(f"curvature acts nontrivially on generator {X.ids[i]}")
        rows = X.delta
    elif mode == "quotient":
        rows = [
            tuple((t, j) for t, j in row if not in_curvature_ideal(X.n, X.matching, (t,)))
            for row in X.delta
        ]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for i, row in enumerate(rows):
        acc: dict[int, set] = {}
        for a, y in row:
            for b, z in rows[y]:
                p = alg.mul_gen(a, b)
                if p is not None:
                    acc.setdefault(z, set()).symmetric_difference_update({p})
        for z, ts in acc.items():
            if ts and (mode == "strict" or not in_curvature_ideal(X.n, X.matching, ts)):
                raise NotFlat(f"differential does not square to zero at {X.ids[i]} -> {X.ids[z]}")
    flat = DStructure.from_internal(X.n, X.matching, X.ids, X.idem, rows)
    diff = {g: flat.delta_of(g) for g in flat.ids}
    return FlatComplex(X.n, flat.generators, diff)


def gf2_rank_of_rows(rows: Iterable[int]) -> int:
    return kernels.gf2_rank(list(rows))
