"""Brute-force reference implementations used to check the algorithms.

Nothing here shares code with the constructions it checks: languages are
enumerated by generating every word and filtering, representability is a
plain dynamic-programming table, and set membership expands the normal
form parameters by nested loops.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .automata import Automaton


def all_words(symbols: Sequence, max_len: int) -> Iterator[tuple]:
    """Every word of length <= max_len, in radix order."""
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


def radix_enumeration(a: Automaton, max_len: int) -> list[tuple]:
    return [w for w in all_words(a.alphabet.letters, max_len) if a.accepts(w)]


def radix_words(a: Automaton, count: int) -> list[tuple]:
    """The first ``count`` accepted words in radix order, length by length.

    Prefixes are extended in lexicographic order and kept only while some
    accepted word can still be reached; the state sets are tracked alongside
    so each extension costs one step.
    """
    live = set(a.accepting)
    grew = True
    while grew:
        grew = False
        for p, _, q in a.transitions():
            if q in live and p not in live:
                live.add(p)
                grew = True
    layer = [((), frozenset(a.initial) & live)] if set(a.initial) & live else []
    out: list[tuple] = []
    while layer and len(out) < count:
        out += [w for w, qs in layer if qs & a.accepting][: count - len(out)]
        nxt = []
        for w, qs in layer:
            for x in a.alphabet.letters:
                step = a.step(qs, x) & live
                if step:
                    nxt.append((w + (x,), step))
        layer = nxt
    return out


def representable(cs: Sequence[int], limit: int) -> list[bool]:
    table = [False] * (limit + 1)
    table[0] = True
    for n in range(1, limit + 1):
        table[n] = any(c and c <= n and table[n - c] for c in cs)
    return table


def frobenius_oracle(r: int, cs: Sequence[int]) -> tuple[int, set[int]]:
    """``(N, C)`` read off a representability table."""
    if r == 0:
        return 0, set()
    limit = max(cs) ** 2 + max(cs)
    table = representable(cs, limit * r)
    bad = [n for n in range(limit + 1) if not table[r * n]]
    n_bound = bad[-1] + 1 if bad else 0
    return n_bound, {n for n in range(n_bound) if table[r * n]}


def set_points(x, box: int) -> set[tuple[int, ...]]:
    """Points of a normal-form union with every coordinate <= box."""
    out: set = set()

    def expand(levels, point):
        if max(point, default=0) > box:
            return
        if not levels:
            out.add(tuple(point))
            return
        lv, rest = levels[0], levels[1:]
        for n in itertools.count():
            step = lv.coeff * n + lv.offset
            nxt = [v + step if i + 1 in lv.support else v for i, v in enumerate(point)]
            if max(nxt) > box:
                break
            expand(rest, nxt)
            if lv.coeff == 0:
                break

    for nf in x.forms:
        expand(nf.levels, [0] * nf.dim)
    return out


def box_points(d: int, box: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(box + 1), repeat=d)
