"""Coordinate-comparison sets and the rewriting of normal forms into them.

A :class:`YSet` constrains one axis j (1-based) and leaves the others free:

* ``ONLY_J``           x_j = r*n + s,        n >= N
* ``J_AND_K``          x_j = x_k + r*n + s,  n >= N
* ``ONLY_J_FINITE``    x_j = r*n + s,        n in C
* ``J_AND_K_FINITE``   x_j = x_k + r*n + s,  n in C

A normal form splits into blocks of levels ending where the chain shrinks.
The leader axis of block p satisfies x = x_prev_leader + (sum of the
block's c*n) + s_p, and the sums sum(c*n) are exactly the multiples r_p*n
with n >= N_p or n in C_p (numerical semigroup generated by the block's
coefficients).  Follower axes of a block copy the previous axis.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .normalform import NormalForm, NormalFormSet


class Form(enum.Enum):
    ONLY_J = 2
    J_AND_K = 3
    ONLY_J_FINITE = 4
    J_AND_K_FINITE = 5

    @property
    def relative(self) -> bool:
        return self in (Form.J_AND_K, Form.J_AND_K_FINITE)

    @property
    def finite(self) -> bool:
        return self in (Form.ONLY_J_FINITE, Form.J_AND_K_FINITE)


@dataclass(frozen=True)
class YSet:
    form: Form
    j: int
    r: int
    s: int
    k: int | None = None
    threshold: int = 0
    residues: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "residues", frozenset(self.residues))
        if self.j < 1:
            raise ValueError("axes are 1-based")
        if self.form.relative:
            if self.k is None or self.k < 1 or self.k == self.j:
                raise ValueError(f"form {self.form.value} needs a reference axis k != j")
        elif self.k is not None:
            raise ValueError(f"form {self.form.value} takes no reference axis")
        if min(self.r, self.s, self.threshold) < 0 or any(n < 0 for n in self.residues):
            raise ValueError("parameters must be nonnegative")
        if not self.form.finite and self.residues:
            raise ValueError("residues only apply to the finite forms")

    def values(self) -> Sequence[int] | None:
        """The finite set of increments r*n + s, or None when unbounded."""
        if self.form.finite:
            return sorted({self.r * n + self.s for n in self.residues})
        if self.r == 0:
            return [self.s]
        return None

    def contains(self, x: Sequence[int]) -> bool:
        if max(self.j, self.k or 0) > len(x):
            raise ValueError(f"point {tuple(x)} has too few coordinates")
        diff = x[self.j - 1] - (x[self.k - 1] if self.form.relative else 0) - self.s
        if self.r == 0:
            return diff == 0 and (not self.form.finite or bool(self.residues))
        if diff < 0 or diff % self.r:
            return False
        n = diff // self.r
        return n in self.residues if self.form.finite else n >= self.threshold

    __contains__ = contains

    def mask(self, coords: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorized :meth:`contains` over coordinate arrays of equal shape."""
        diff = coords[self.j - 1] - (coords[self.k - 1] if self.form.relative else 0) - self.s
        if self.r == 0:
            return (diff == 0) & (not self.form.finite or bool(self.residues))
        ok = (diff >= 0) & (diff % self.r == 0)
        n = diff // self.r
        if self.form.finite:
            return ok & np.isin(n, sorted(self.residues))
        return ok & (n >= self.threshold)

    def describe(self) -> str:
        ref = f"x{self.k} + " if self.form.relative else ""
        cond = f"n in {sorted(self.residues)}" if self.form.finite else f"n >= {self.threshold}"
        return f"x{self.j} = {ref}{self.r}n + {self.s}, {cond}"


@dataclass(frozen=True)
class YDecomposition:
    """``(union of intersections in A) ∪ (intersection of B)``."""

    dim: int
    b_terms: tuple[YSet, ...]
    a_terms: tuple[tuple[YSet, ...], ...] = ()

    def contains(self, x: Sequence[int]) -> bool:
        if all(y.contains(x) for y in self.b_terms):
            return True
        return any(all(y.contains(x) for y in term) for term in self.a_terms)

    __contains__ = contains

    def mask(self, coords: Sequence[np.ndarray]) -> np.ndarray:
        out = np.zeros(np.shape(coords[0]), dtype=bool)
        for term in (self.b_terms, *self.a_terms):
            hit = np.ones_like(out)
            for y in term:
                hit &= y.mask(coords)
            out |= hit
        return out


def member(x: Sequence[int], obj) -> bool:
    """Brute-force membership for normal forms, Y-sets and decompositions."""
    return obj.contains(tuple(x))


def _check_gcd(r: int, cs: Sequence[int]) -> list[int]:
    cs = [c for c in cs if c]
    if any(c < 0 for c in cs):
        raise ValueError("coefficients must be nonnegative")
    g = 0
    for c in cs:
        g = gcd(g, c)
    if r != g:
        raise ValueError(f"r = {r} is not gcd{tuple(cs)} = {g}")
    return cs


def _residue_distances(gens: Sequence[int]) -> list[int]:
    """Smallest representable number in each class mod min(gens) (gcd 1)."""
    a = min(gens)
    dist = [None] * a
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        dcur, res = heapq.heappop(heap)
        if dcur > dist[res]:
            continue
        for g in gens:
            nd = dcur + g
            nr = nd % a
            if dist[nr] is None or nd < dist[nr]:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return dist


def frobenius_bound(r: int, cs: Sequence[int]) -> int:
    """Least N such that r*n is a nonnegative combination of cs for all n >= N."""
    cs = _check_gcd(r, cs)
    if r == 0:
        return 0
    dist = _residue_distances([c // r for c in cs])
    return max(max(dist) - len(dist) + 1, 0)


def residue_set(r: int, cs: Sequence[int], threshold: int | None = None) -> frozenset[int]:
    """The n below the bound for which r*n is a nonnegative combination of cs."""
    cs = _check_gcd(r, cs)
    if r == 0:
        return frozenset()
    if threshold is None:
        threshold = frobenius_bound(r, cs)
    dist = _residue_distances([c // r for c in cs])
    return frozenset(n for n in range(threshold) if dist[n % len(dist)] <= n)


def _leader(form: Form, j: int, k: int | None, r: int, s: int, cs: Sequence[int]):
    """Unprimed and primed Y-sets for one block, normalized so that s < r."""
    threshold = frobenius_bound(r, cs)
    residues = residue_set(r, cs, threshold)
    if r > 0 and s >= r:
        q, s = divmod(s, r)
        threshold += q
        residues = frozenset(n + q for n in residues)
    main = YSet(form, j, r, s, k, threshold=threshold)
    finite_form = Form.J_AND_K_FINITE if form is Form.J_AND_K else Form.ONLY_J_FINITE
    primed = YSet(finite_form, j, r, s, k, residues=residues) if residues else None
    return main, primed


def blocks(nf: NormalForm) -> list[tuple[list[int], list[int]]]:
    """Split levels into blocks ending where the chain strictly shrinks.

    Returns ``(level indices, sorted axes)`` per block, the axes being the
    ones whose last containing level lies in that block.
    """
    out = []
    start = 0
    levels = nf.levels
    for i, lv in enumerate(levels):
        nxt = levels[i + 1].support if i + 1 < len(levels) else frozenset()
        if lv.support != nxt:
            out.append((list(range(start, i + 1)), sorted(lv.support - nxt)))
            start = i + 1
    return out


def y_decompose(nf: NormalForm) -> YDecomposition:
    """Rewrite one normal form as ``A ∪ B`` with B an intersection of Y-sets.

    Each block contributes either its unprimed leader (increment >= N) or,
    when C is nonempty, its primed leader (increment index in C).  A holds
    every combination using at least one primed leader, so that points
    taking small increments in several blocks at once are covered.
    """
    d = nf.dim
    zero_axes = [YSet(Form.ONLY_J, j, 0, 0) for j in range(1, d + 1)
                 if j not in nf.levels[0].support]
    fixed: list[YSet] = list(zero_axes)
    choices: list[tuple[YSet, YSet | None]] = []
    prev_leader = None
    for level_ids, axes in blocks(nf):
        cs = [nf.levels[i].coeff for i in level_ids]
        r = 0
        for c in cs:
            r = gcd(r, c)
        s = sum(nf.levels[i].offset for i in level_ids)
        leader = axes[0]
        form = Form.ONLY_J if prev_leader is None else Form.J_AND_K
        choices.append(_leader(form, leader, prev_leader, r, s, cs))
        for before, after in zip(axes, axes[1:]):
            fixed.append(YSet(Form.J_AND_K, after, 0, 0, before))
        prev_leader = leader

    def ordered(ys):
        return tuple(sorted(ys, key=lambda y: y.j))

    b_terms = ordered(fixed + [main for main, _ in choices])
    a_terms = []
    for picks in itertools.product(*([False, True] for _ in choices)):
        if not any(picks):
            continue
        term = list(fixed)
        for (main, primed), use_primed in zip(choices, picks):
            if use_primed and primed is None:
                break
            term.append(primed if use_primed else main)
        else:
            a_terms.append(ordered(term))
    return YDecomposition(d, b_terms, tuple(a_terms))


def y_decompose_set(x: NormalFormSet) -> list[YDecomposition]:
    return [y_decompose(f) for f in x.forms]
